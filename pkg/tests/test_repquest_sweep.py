#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
File:
    project: RepQuest
    name: test_repquest_sweep.py
    version: 0.1.0.0
    date: 19.10.2026

Authors:
    RepQuest contributors

Copyright (c) 2026 RepQuest contributors.
"""

import io
from contextlib import redirect_stderr
from unittest import TestCase

from progress import Progress
from repquest_optim import split_rng
from repquest_sweep import *


def draw(key):
    return float(split_rng(99, *key).random())


def fragile(key):
    if key == 3:
        raise ArithmeticError('cell three')
    return key * key


class TestRunCells(TestCase):

    def test_1(self):
        """results follow the keys"""
        keys = [(n, r) for n in (1, 5, 9) for r in range(4)]
        pairs = run_cells(keys, draw, threads=4)
        self.assertEqual([key for key, __ in pairs], keys)
        self.assertEqual([value for __, value in pairs],
                         [draw(key) for key in keys])

    def test_2(self):
        """threads do not change the results"""
        keys = [(n, r) for n in range(6) for r in range(3)]
        self.assertEqual(run_cells(keys, draw, threads=1),
                         run_cells(keys, draw, threads=5))

    def test_3(self):
        """a failing cell does not stop the sweep"""
        stderr = io.StringIO()
        with redirect_stderr(stderr):
            pairs = run_cells(range(5), fragile, threads=2)
        self.assertEqual([value for __, value in pairs[:3]], [0, 1, 4])
        self.assertEqual(pairs[4], (4, 16))
        failure = pairs[3][1]
        self.assertIsInstance(failure, CellFailure)
        self.assertEqual(failure.key, 3)
        self.assertEqual(failure.message, 'cell three')
        self.assertFalse(failure)
        self.assertIn('cell three', stderr.getvalue())
        self.assertEqual(failures(pairs), [failure])

    def test_4(self):
        """progress counts every cell"""
        stream = io.StringIO()
        progress = Progress('cells', stream=stream)
        run_cells(range(3), fragile, threads=1, progress=progress)
        self.assertEqual(progress.value, 3)
        self.assertIn('cells 3/3', stream.getvalue())
        self.assertEqual(failures(run_cells([], fragile)), [])
