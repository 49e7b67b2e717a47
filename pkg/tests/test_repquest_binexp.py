#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
File:
    project: RepQuest
    name: test_repquest_binexp.py
    version: 0.1.0.0
    date: 19.10.2026

Authors:
    RepQuest contributors

Copyright (c) 2026 RepQuest contributors.
"""

import os
import unittest
from unittest import TestCase
from unittest.mock import Mock, patch

from repquest_binexp import *
from repquest_envs import BINARY5X3, NMSample, build_env
from repquest_nnet import binary_forward

SLOW = unittest.skipUnless(os.environ.get('REPQUEST_SLOW_TESTS'),
                           'set REPQUEST_SLOW_TESTS=1 for trend tests')

ALL_TABLES = np.array([OutputTable.from_index(t).labels
                       for t in range(N_TABLES)])


def brute_force_loss(f, z):
    """Best of the 256 output tables for every row, by enumeration."""
    codes = network_codes(f)[z.input_ids]
    total = 0
    for row_codes, targets in zip(codes, z.targets):
        predictions = ALL_TABLES[:, row_codes]
        total += int((predictions != targets).sum(axis=1).min())
    return total / (z.n * z.m)


class TestCandidates(TestCase):

    def test_1(self):
        """codes of all candidates"""
        codes = candidate_codes()
        self.assertEqual(codes.shape, (32768, 32))
        inputs = binary_inputs()
        for k in (0, 1, 4242, 32767):
            f = BinaryNetwork.from_index(k)
            expected = code_index(np.array([binary_forward(f, x)
                                            for x in inputs]))
            np.testing.assert_array_equal(codes[k], expected)
            np.testing.assert_array_equal(network_codes(f), expected)

    def test_2(self):
        """output tables"""
        table = OutputTable.from_index(5)
        np.testing.assert_array_equal(table.labels,
                                      [1, -1, 1, -1, -1, -1, -1, -1])
        self.assertEqual(table.index(), 5)
        self.assertEqual(table(2), 1)
        self.assertEqual(table.inverted(), OutputTable.from_index(250))
        with self.assertRaises(ValueError):
            OutputTable([1, 0, 1, 1, 1, 1, 1, 1])
        with self.assertRaises(ValueError):
            OutputTable([1, 1])


class TestRepresentationLoss(TestCase):

    def setUp(self):
        self.env = build_env(BINARY5X3, seed=3)
        self.rng = np.random.default_rng(12)

    def test_1(self):
        """agrees with enumeration of the output tables"""
        for __ in range(100):
            f = BinaryNetwork.from_index(self.rng.integers(0, 32768))
            n, m = self.rng.integers(1, 5), self.rng.integers(1, 12)
            z = draw_nm_sample(self.env, n, m, self.rng)
            self.assertAlmostEqual(rep_empirical_loss(f, z),
                                   brute_force_loss(f, z), places=12)

    def test_2(self):
        """the generating representation has zero loss"""
        z = draw_nm_sample(self.env, 6, 10, self.rng)
        self.assertEqual(rep_empirical_loss(self.env.representation, z), 0.0)
        self.assertIn(self.env.representation, zero_loss_search(z))

    def test_3(self):
        """conflicting labels in one cell"""
        z = Mock(n=1, m=2, input_ids=np.array([[3, 3]]),
                 targets=np.array([[1, -1]]))
        f = BinaryNetwork.from_index(0)
        self.assertEqual(rep_empirical_count(f, z), 1)
        self.assertEqual(rep_empirical_loss(f, z), 0.5)

    def test_4(self):
        """labels must be ±1"""
        z = Mock(n=1, m=1, input_ids=np.array([[0]]),
                 targets=np.array([[0.0]]))
        with self.assertRaises(ValueError):
            rep_empirical_loss(BinaryNetwork.from_index(0), z)

    def test_5(self):
        """empty sample"""
        z = NMSample(self.env, [0], np.zeros((1, 0)))
        self.assertEqual(rep_empirical_loss(BinaryNetwork.from_index(9), z),
                         0.0)


class TestBestOutputTable(TestCase):

    def setUp(self):
        self.f = BinaryNetwork.from_index(12345)
        self.x = binary_inputs()[7]
        self.cell = int(code_index(binary_forward(self.f, self.x)))

    def test_1(self):
        """majority label"""
        table = best_output_table(self.f, [self.x] * 4, [1, 1, 1, -1])
        self.assertEqual(table.labels[self.cell], 1)
        table = best_output_table(self.f, [self.x] * 4, [1, -1, -1, -1])
        self.assertEqual(table.labels[self.cell], -1)

    def test_2(self):
        """empty and tied cells are +1"""
        table = best_output_table(self.f, [self.x] * 2, [1, -1])
        np.testing.assert_array_equal(table.labels, np.ones(8))

    def test_3(self):
        """the best table attains the representation loss"""
        env = build_env(BINARY5X3, seed=5)
        z = draw_nm_sample(env, 1, 15, np.random.default_rng(2))
        inputs, labels = z.row(0)
        table = best_output_table(self.f, inputs, labels)
        errors = sum(table(int(code_index(binary_forward(self.f, x)))) != y
                     for x, y in zip(inputs.astype(int), labels))
        self.assertEqual(errors, rep_empirical_count(self.f, z))


class TestZeroLossSearch(TestCase):

    def setUp(self):
        self.env = build_env(BINARY5X3, seed=8)
        self.rng = np.random.default_rng(30)

    def test_1(self):
        """an empty sample keeps every candidate"""
        z = NMSample(self.env, [0], np.zeros((1, 0)))
        self.assertEqual(zero_loss_indices(z).size, 32768)

    def test_2(self):
        """the row order does not matter"""
        z = draw_nm_sample(self.env, 4, 6, self.rng)
        np.testing.assert_array_equal(zero_loss_indices(z),
                                      zero_loss_indices(z.rows([3, 1, 0, 2])))

    def test_3(self):
        """more examples leave fewer candidates"""
        z = draw_nm_sample(self.env, 3, 22, self.rng)
        smaller = zero_loss_indices(z)
        larger = zero_loss_indices(
            NMSample(self.env, z.task_ids, z.input_ids[:, :10]))
        self.assertLessEqual(smaller.size, larger.size)
        self.assertTrue(np.all(np.isin(smaller, larger)))

    def test_4(self):
        """every candidate found has zero loss"""
        z = draw_nm_sample(self.env, 2, 8, self.rng)
        for f in zero_loss_search(z)[:50]:
            self.assertEqual(rep_empirical_count(f, z), 0)


class TestNewTasks(TestCase):

    def setUp(self):
        self.env = build_env(BINARY5X3, seed=4)

    def test_1(self):
        """true error of a task table"""
        f = self.env.representation
        for g in (0, 100, 255):
            table = OutputTable.from_index(g)
            self.assertEqual(binary_true_error(f, table, self.env.tasks[g]),
                             0)
            self.assertEqual(binary_true_error(f, table.inverted(),
                                               self.env.tasks[g]), 32)
        with self.assertRaises(ValueError):
            binary_true_error(f, OutputTable.from_index(0), np.ones(31))

    def test_2(self):
        """ordinary learning without examples is a coin toss"""
        task = self.env.tasks[77]
        self.assertAlmostEqual(ordinary_new_task_error(task, []), 16.0)

    def test_3(self):
        """learning from every input"""
        task = self.env.tasks[77]
        everything = np.arange(32)
        self.assertAlmostEqual(ordinary_new_task_error(task, everything), 0.0)
        self.assertEqual(exact_representation_error(self.env, task,
                                                     everything), 0.0)

    def test_4(self):
        """new task errors use the best table of the training set"""
        task = self.env.tasks[200]
        train = np.array([0, 5, 9, 17, 30])
        k = self.env.representation.index()
        errors = new_task_errors([k, 0], task, train)
        f = BinaryNetwork.from_index(0)
        table = best_output_table(f, binary_inputs()[train], task[train])
        self.assertEqual(errors[1], binary_true_error(f, table, task))
        self.assertEqual(errors[0],
                         exact_representation_error(self.env, task, train))


class TestBinaryExperiment(TestCase):

    def setUp(self):
        self.env = build_env(BINARY5X3, seed=6)

    def run_small(self):
        return binary_experiment(self.env, (1,), (4,), (2, 22), 1, 2, 64,
                                 np.random.default_rng(10))

    def test_1(self):
        """records"""
        records = self.run_small()
        self.assertEqual(list(records.columns),
                         ['curve', 'n', 'm', 'sample', 'task', 'm1', 'error',
                          'zero_loss', 'evaluated'])
        self.assertEqual(set(records['curve']),
                         {REPRESENTATION, ORDINARY, EXACT})
        self.assertEqual(len(records), 3 * 2 * 2)
        self.assertTrue(records['error'].between(0.0, 1.0).all())
        rep = records[records['curve'] == REPRESENTATION]
        self.assertTrue((rep['evaluated'] <= 64).all())
        self.assertTrue((rep['evaluated'] <= rep['zero_loss']).all())

    def test_2(self):
        """reproducible"""
        a, b = self.run_small(), self.run_small()
        self.assertTrue(a.equals(b))

    def test_3(self):
        """curves"""
        curves = binary_curves(self.run_small())
        self.assertEqual(list(curves.columns),
                         ['curve', 'n', 'm', 'm1', 'mean_error', 'stderr'])
        self.assertEqual(len(curves), 3 * 2)

    @SLOW
    def test_4(self):
        """more tasks leave representations that generalise better"""
        records = binary_experiment(self.env, (1, 5, 9), (6,), (22,), 10, 10,
                                    512, np.random.default_rng(1))
        curves = binary_curves(records)
        rep = curves[curves['curve'] == REPRESENTATION].set_index('n')
        exact = curves[curves['curve'] == EXACT].iloc[0]
        errors = rep['mean_error']
        slack = 2 * rep['stderr'].max()
        self.assertLessEqual(errors[5], errors[1] + slack)
        self.assertLessEqual(errors[9], errors[5] + slack)
        for n in (1, 5, 9):
            self.assertLessEqual(exact['mean_error'],
                                 errors[n] + 2 * rep['stderr'][n])

    def test_5(self):
        """all curves learn the same new tasks"""
        def keys(mock):
            return {(tuple(c.args[1]), tuple(np.asarray(c.args[2])))
                    for c in mock.call_args_list}

        with patch('repquest_binexp.new_task_errors',
                   wraps=new_task_errors) as learned, \
                patch('repquest_binexp.ordinary_new_task_error',
                      wraps=ordinary_new_task_error) as ordinary:
            binary_experiment(self.env, (1, 3), (4,), (2, 6), 2, 2, 16,
                              np.random.default_rng(7))
        self.assertEqual(ordinary.call_count, 2 * 2 * 2)
        self.assertEqual(keys(learned), keys(ordinary))
        self.assertEqual(learned.call_count, 3 * ordinary.call_count)
