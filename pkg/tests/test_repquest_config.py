#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
File:
    project: RepQuest
    name: test_repquest_config.py
    version: 0.1.0.0
    date: 19.10.2026

Authors:
    RepQuest contributors

Copyright (c) 2026 RepQuest contributors.
"""

import os
import tempfile
from unittest import TestCase

from repquest_config import *
from repquest_optim import TrainPolicy

TEXT = """# translation surface
experiment = translation
seed = 1234
n_list = 1, 5, 9
m_list = 1, 41, 81   # examples per task
replicates = 10
threads = 2
max_restarts = 7
init_lo = -0.5
"""


class TestParseConfigText(TestCase):

    def test_1(self):
        """values and line numbers"""
        settings = parse_config_text(TEXT)
        self.assertEqual(settings['seed'], ('1234', 3))
        self.assertEqual(settings['m_list'], ('1, 41, 81', 5))

    def test_2(self):
        """unknown key"""
        with self.assertRaises(ConfigError) as context:
            parse_config_text('seed = 1\ncolour = red\n')
        self.assertEqual(context.exception.line, 2)
        self.assertEqual(context.exception.key, 'colour')

    def test_3(self):
        """line without a value"""
        with self.assertRaises(ConfigError) as context:
            parse_config_text('\n\nseed 1\n')
        self.assertEqual(context.exception.line, 3)


class TestLoadConfig(TestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.directory.name, 'run.cfg')
        with open(self.path, 'wt', encoding='utf-8') as file:
            file.write(TEXT)

    def tearDown(self):
        self.directory.cleanup()

    def test_1(self):
        """file values"""
        config = load_config(self.path, environ={})
        self.assertEqual(config.experiment, 'translation')
        self.assertEqual(config.seed, 1234)
        self.assertEqual(config.n_list, (1, 5, 9))
        self.assertEqual(config.m_list, (1, 41, 81))
        self.assertEqual(config.replicates, 10)
        self.assertEqual(config.threads, 2)

    def test_2(self):
        """command line overrides the file"""
        config = load_config(self.path, {'seed': '7', 'n_list': '3',
                                         'out': None}, environ={})
        self.assertEqual(config.seed, 7)
        self.assertEqual(config.n_list, (3,))
        self.assertEqual(config.out, 'results')

    def test_3(self):
        """threads from the environment only as a fallback"""
        overrides = {'experiment': 'symmetric', 'seed': '1'}
        config = load_config(None, overrides, {THREADS_VARIABLE: '6'})
        self.assertEqual(config.threads, 6)
        config = load_config(self.path, None, {THREADS_VARIABLE: '6'})
        self.assertEqual(config.threads, 2)
        config = load_config(None, overrides, {})
        self.assertEqual(config.threads, 1)

    def test_4(self):
        """experiment defaults"""
        config = load_config(None, {'experiment': 'symmetric', 'seed': '1'},
                             {})
        self.assertEqual(config.n_list, tuple(range(1, 22, 4)))
        self.assertEqual(config.m_list, tuple(range(1, 172, 10)))
        self.assertEqual(config.replicates, 3)
        self.assertEqual(config.option('k'), 6)
        self.assertEqual(config.option('n_values', (2, 4)), (2, 4))

    def test_5(self):
        """mandatory and invalid values"""
        for overrides in ({'experiment': 'translation'},
                          {'seed': '1'},
                          {'experiment': 'sorting', 'seed': '1'},
                          {'experiment': 'translation', 'seed': '-1'},
                          {'experiment': 'translation', 'seed': '1',
                           'm_list': '1, 0'},
                          {'experiment': 'translation', 'seed': '1',
                           'replicates': 'many'},
                          {'experiment': 'translation', 'seed': '1',
                           'colour': 'red'}):
            with self.assertRaises(ConfigError):
                load_config(None, overrides, {})
        with self.assertRaises(ConfigError):
            load_config(os.path.join(self.directory.name, 'missing.cfg'))

    def test_6(self):
        """training policy"""
        config = load_config(self.path, environ={})
        policy = config.train_policy(TrainPolicy())
        self.assertEqual(policy.max_restarts, 7)
        self.assertEqual(policy.init_range, (-0.5, 1.0))
        self.assertEqual(policy.master_seed, 1234)
        config = load_config(self.path, {'init_lo': '2'}, environ={})
        with self.assertRaises(ConfigError):
            config.train_policy(TrainPolicy())

    def test_7(self):
        """echo lists every setting"""
        config = load_config(self.path, environ={})
        echo = config.echo()
        self.assertIn('seed = 1234\n', echo)
        self.assertIn('n_list = 1, 5, 9\n', echo)
        self.assertIn('max_restarts = 7\n', echo)
        self.assertIn('temperature = 0.01\n', echo)
        self.assertNotIn('n_values', echo)

    def test_8(self):
        """bound inputs are checked when the configuration is read"""
        base = {'experiment': 'bounds_sweep', 'seed': '1'}
        for key, value in (('alpha', '1.5'), ('alpha', '0'),
                           ('delta', '1'), ('nu', '-0.1'),
                           ('bound_M', '0'), ('lnC_G', 'inf'),
                           ('lnCstar_F', '-1')):
            with self.assertRaises(ConfigError) as context:
                load_config(None, dict(base, **{key: value}), {})
            self.assertEqual(context.exception.key, key)
        config = load_config(None, dict(base, alpha='0.5', delta='0.05'), {})
        self.assertEqual(config.option('alpha'), 0.5)
        self.assertEqual(config.option('delta'), 0.05)
