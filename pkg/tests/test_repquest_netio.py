#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
File:
    project: RepQuest
    name: test_repquest_netio.py
    version: 0.1.0.0
    date: 19.10.2026

Authors:
    RepQuest contributors

Copyright (c) 2026 RepQuest contributors.
"""

import os
import tempfile
from unittest import TestCase

from repquest_netio import *
from repquest_nnet import IDENTITY, random_network
from repquest_replearn import TRANSLATION_ARCH


class TestNetFiles(TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(99)
        self.net = random_network((4, 3, 1), IDENTITY, self.rng)
        self.mt = TRANSLATION_ARCH.build(2, self.rng)

    def test_1(self):
        """parameters are restored exactly"""
        net = parse_net(format_net(self.net))
        self.assertEqual(net.dims, self.net.dims)
        self.assertEqual(net.activation, IDENTITY)
        np.testing.assert_array_equal(net.parameters(),
                                      self.net.parameters())
        x = self.rng.uniform(size=4)
        np.testing.assert_array_equal(net(x), self.net(x))

    def test_2(self):
        """multi-task nets through a file"""
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'mt.net')
            save_net(path, self.mt)
            mt = load_net(path)
        self.assertIsInstance(mt, MultiTaskNet)
        self.assertEqual(mt.n_heads, 2)
        np.testing.assert_array_equal(mt.parameters(), self.mt.parameters())

    def test_3(self):
        """header"""
        lines = format_net(self.net).splitlines()
        self.assertEqual(lines[:4], [MAGIC, 'kind network', 'count 1', 'net'])
        self.assertEqual(lines[5], 'dims 4 3 1')
        self.assertEqual(lines[6], 'parameters 19')
        self.assertEqual(len(lines), 7 + 19)

    def test_4(self):
        """truncated file"""
        text = format_net(self.net)
        truncated = '\n'.join(text.splitlines()[:10])
        with self.assertRaises(NetFileError) as context:
            parse_net(truncated)
        self.assertEqual(context.exception.lineno, 11)

    def test_5(self):
        """parameter count does not match the dimensions"""
        text = format_net(self.net).replace('dims 4 3 1', 'dims 4 2 1')
        with self.assertRaises(NetFileError) as context:
            parse_net(text)
        self.assertEqual(context.exception.lineno, 7)

    def test_6(self):
        """other malformed files"""
        text = format_net(self.net)
        for bad in (text.replace(MAGIC, 'weights 1'),
                    text.replace('identity', 'relu'),
                    text.replace('kind network', 'kind forest'),
                    text + '0.5\n',
                    text.replace('parameters 19\n', 'parameters 19\nabc\n')):
            with self.assertRaises(NetFileError):
                parse_net(bad)
        with self.assertRaises(TypeError):
            format_net('not a net')
