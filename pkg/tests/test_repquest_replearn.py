#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
File:
    project: RepQuest
    name: test_repquest_replearn.py
    version: 0.1.0.0
    date: 19.10.2026

Authors:
    RepQuest contributors

Copyright (c) 2026 RepQuest contributors.
"""

import os
import unittest
from unittest import TestCase

from repquest_envs import CUSTOM, SYMMETRIC10, TRANSLATION10, Environment, \
    build_env
from repquest_nnet import IDENTITY, Network
from repquest_replearn import *

SLOW = unittest.skipUnless(os.environ.get('REPQUEST_SLOW_TESTS'),
                           'set REPQUEST_SLOW_TESTS=1 for trend tests')

FAST_POLICY = TrainPolicy(max_restarts=0, max_iterations=20)


def two_input_env():
    """Two one-hot inputs, each task copies one coordinate."""
    return Environment(CUSTOM, np.eye(2), np.eye(2))


def exact_model():
    f = Network([(np.eye(2), np.zeros(2))], IDENTITY)
    heads = [Network([([[1.0, 0.0]], [0.0])], IDENTITY),
             Network([([[0.0, 1.0]], [0.0])], IDENTITY)]
    return MultiTaskNet(f, heads)


class TestMultiTaskNet(TestCase):

    def test_1(self):
        """parameters of f come first"""
        mt = TRANSLATION_ARCH.build(3, np.random.default_rng(1))
        self.assertEqual(mt.n_heads, 3)
        self.assertEqual(mt.n_parameters, 41 + 3 * 9)
        params = mt.parameters()
        np.testing.assert_array_equal(params[:41], mt.f.parameters())
        np.testing.assert_array_equal(
            mt.with_parameters(params).heads[2].parameters(),
            mt.heads[2].parameters())

    def test_2(self):
        """heads must fit f"""
        f = Network.zeros((10, 3))
        with self.assertRaises(ValueError):
            MultiTaskNet(f, [Network.zeros((2, 1))])
        with self.assertRaises(ValueError):
            MultiTaskNet(f, [Network.zeros((3, 2))])
        with self.assertRaises(ValueError):
            MultiTaskNet(f, [])

    def test_3(self):
        """architectures must chain"""
        with self.assertRaises(ValueError):
            Architecture((10, 3), (2, 1))
        with self.assertRaises(ValueError):
            Architecture((10, 3), (3, 2))

    def test_4(self):
        """head outputs"""
        mt = exact_model()
        np.testing.assert_array_equal(mt.head_outputs(np.eye(2)), np.eye(2))


class TestObjective(TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(21)
        self.env = build_env(TRANSLATION10)

    def test_1(self):
        """gradient against central differences"""
        mt = TRANSLATION_ARCH.build(3, self.rng)
        z = draw_nm_sample(self.env, 3, 4, self.rng)
        loss, grad_f, grad_heads = multitask_objective(mt, z)
        analytic = np.concatenate([grad_f] + grad_heads)
        params = mt.parameters()
        numeric = np.empty(params.size)
        eps = 1e-6
        for i in range(params.size):
            step = np.zeros(params.size)
            step[i] = eps
            numeric[i] = (
                empirical_error(mt.with_parameters(params + step), z)
                - empirical_error(mt.with_parameters(params - step), z)) \
                / (2 * eps)
        self.assertGreater(loss, 0.0)
        np.testing.assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-8)

    def test_2(self):
        """an interpolating net has zero loss and gradient"""
        env = two_input_env()
        z = NMSample(env, [0, 1], [[0, 1], [1, 0]])
        loss, grad_f, grad_heads = multitask_objective(exact_model(), z)
        self.assertEqual(loss, 0.0)
        self.assertFalse(np.any(grad_f))
        self.assertFalse(any(np.any(g) for g in grad_heads))

    def test_3(self):
        """rows must match heads"""
        mt = TRANSLATION_ARCH.build(3, self.rng)
        z = draw_nm_sample(self.env, 2, 4, self.rng)
        with self.assertRaises(InputError):
            multitask_objective(mt, z)

    def random_case(self):
        k = int(self.rng.integers(1, 5))
        hidden = tuple(int(d) for d in self.rng.integers(1, 5, size=2))
        f_dims = (10,) + hidden[:self.rng.integers(0, 2)] + (k,)
        head_dims = (k,) + hidden[1:self.rng.integers(1, 3)] + (1,)
        n = int(self.rng.integers(1, 4))
        mt = Architecture(f_dims, head_dims).build(n, self.rng)
        z = draw_nm_sample(self.env, n, int(self.rng.integers(1, 5)),
                           self.rng)
        return mt, z

    def test_4(self):
        """gradient against central differences on random nets"""
        eps = 1e-6
        for __ in range(100):
            mt, z = self.random_case()
            __, grad_f, grad_heads = multitask_objective(mt, z)
            analytic = np.concatenate([grad_f] + grad_heads)
            params = mt.parameters()
            numeric = np.empty(params.size)
            for i in range(params.size):
                step = np.zeros(params.size)
                step[i] = eps
                numeric[i] = (
                    empirical_error(mt.with_parameters(params + step), z)
                    - empirical_error(mt.with_parameters(params - step), z)) \
                    / (2 * eps)
            np.testing.assert_allclose(analytic, numeric, rtol=1e-5,
                                       atol=1e-7)

    def test_5(self):
        """permuting rows together with heads changes nothing"""
        for __ in range(20):
            mt, z = self.random_case()
            order = self.rng.permutation(z.n)
            swapped = MultiTaskNet(mt.f, [mt.heads[i] for i in order])
            loss, grad_f, grad_heads = multitask_objective(mt, z)
            loss_p, grad_f_p, grad_heads_p = multitask_objective(
                swapped, z.rows(order))
            self.assertAlmostEqual(loss, loss_p, places=12)
            np.testing.assert_allclose(grad_f, grad_f_p, rtol=1e-10,
                                       atol=1e-12)
            for j, i in enumerate(order):
                np.testing.assert_allclose(grad_heads[i], grad_heads_p[j],
                                           rtol=1e-10, atol=1e-12)

    def test_6(self):
        """loss and f gradient are means over the rows"""
        for __ in range(20):
            mt, z = self.random_case()
            loss, grad_f, grad_heads = multitask_objective(mt, z)
            row_losses = []
            row_grads = []
            for i, head in enumerate(mt.heads):
                single = MultiTaskNet(mt.f, [head])
                loss_i, grad_f_i, (grad_head_i,) = multitask_objective(
                    single, z.rows([i]))
                inputs, targets = z.row(i)
                outputs = forward_batch(head, forward_batch(mt.f, inputs))
                self.assertAlmostEqual(
                    loss_i, np.mean((outputs[:, 0] - targets) ** 2),
                    places=12)
                np.testing.assert_allclose(grad_heads[i], grad_head_i / z.n,
                                           rtol=1e-10, atol=1e-12)
                row_losses.append(loss_i)
                row_grads.append(grad_f_i)
            self.assertAlmostEqual(loss, np.mean(row_losses), places=12)
            np.testing.assert_allclose(grad_f, np.mean(row_grads, axis=0),
                                       rtol=1e-10, atol=1e-12)

    def test_7(self):
        """one task is ordinary backpropagation through g∘f"""
        for __ in range(20):
            mt, z = self.random_case()
            mt = MultiTaskNet(mt.f, mt.heads[:1])
            z = z.rows([0])
            composed = Network(mt.f.layers + mt.heads[0].layers)
            loss, grad_f, (grad_head,) = multitask_objective(mt, z)
            expected, gradient, __ = batch_loss_and_gradient(
                composed, z.inputs[0], z.targets[0])
            self.assertAlmostEqual(loss, expected, places=12)
            np.testing.assert_allclose(np.concatenate((grad_f, grad_head)),
                                       gradient, rtol=1e-10, atol=1e-12)


class TestTrueError(TestCase):

    def setUp(self):
        self.env = two_input_env()

    def test_1(self):
        """exact model"""
        self.assertEqual(true_error(exact_model(), self.env, [0, 1]),
                         (0.0, 0.0))

    def test_2(self):
        """single network against several tasks"""
        head = exact_model().heads[0]
        self.assertEqual(true_error(head, self.env, [0]), (0.0, 0.0))
        mse, linf = true_error(head, self.env, [1])
        self.assertAlmostEqual(mse, 1.0)
        self.assertAlmostEqual(linf, 1.0)
        mse, __ = true_error(head, self.env, [0, 1])
        self.assertAlmostEqual(mse, 0.5)

    def test_3(self):
        """task ids must match the heads"""
        with self.assertRaises(ValueError):
            true_error(exact_model(), self.env, [0])
        with self.assertRaises(ValueError):
            true_error(exact_model(), self.env, [0, 5])

    def test_4(self):
        """weighted inputs"""
        env = build_env(SYMMETRIC10)
        f = Network.zeros((10, 3))
        mt = MultiTaskNet(f, [Network.zeros((3, 1))])
        mse, linf = true_error(mt, env, [0])
        table = env.task_table(0)
        self.assertAlmostEqual(mse, float((0.5 - table) ** 2
                                          @ env.input_weights))
        self.assertAlmostEqual(linf, 0.5)


class TestTraining(TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(8)

    def test_1(self):
        """linear head fitted to linear targets"""
        codes = self.rng.normal(size=(20, 2))
        targets = codes @ np.array([1.0, -2.0]) + 0.5
        head, trace = fit_head(codes, targets, (2, 1), TrainPolicy(),
                               self.rng, activation=IDENTITY)
        self.assertIn(trace.halt_reason, (HaltReason.MSE, HaltReason.LINF))
        residual = head(codes[0])[0] - targets[0]
        self.assertLess(abs(residual), 0.01)

    def test_2(self):
        """training a representation on a small sample"""
        env = build_env(TRANSLATION10)
        policy = TrainPolicy(max_restarts=1, max_iterations=30)
        mt, trace, z = train_representation(env, 2, 3, TRANSLATION_ARCH,
                                            policy, self.rng)
        self.assertEqual(mt.n_heads, 2)
        self.assertEqual((z.n, z.m), (2, 3))
        self.assertIsNotNone(trace.halt_reason)
        for run in trace.runs():
            self.assertTrue(np.all(np.diff(run) <= 0))
        self.assertAlmostEqual(trace.best_objective,
                               empirical_error(mt, z), places=12)

    def test_3(self):
        """representation losses of an exact representation"""
        env = two_input_env()
        f = exact_model().f
        mse, linf = rep_true_loss(f, env, restarts=2, rng=self.rng,
                                  activation=IDENTITY)
        self.assertLess(mse, 1e-4)
        self.assertLess(linf, 0.01)
        z = NMSample(env, [0, 1], [[0, 1], [1, 0]])
        self.assertLess(rep_empirical_loss(f, z, rng=self.rng,
                                           activation=IDENTITY), 1e-4)
        with self.assertRaises(ValueError):
            rep_true_loss(f, env, restarts=0)

    def test_4(self):
        """no perfect representation"""
        env = build_env(TRANSLATION10)
        policy = TrainPolicy(max_restarts=0, max_iterations=1)
        with self.assertRaises(RuntimeError):
            find_perfect_representation(env, TRANSLATION_ARCH, policy,
                                        self.rng, n=2, m=2, attempts=1)


class TestLearningCurves(TestCase):

    def setUp(self):
        self.env = build_env(TRANSLATION10)

    def test_1(self):
        """cells do not depend on the number of threads"""
        grid = Grid((1, 2), (3,))
        one = learning_curves(self.env, SURFACE, grid, FAST_POLICY, 2,
                              np.random.default_rng(5))
        two = learning_curves(self.env, SURFACE, grid, FAST_POLICY, 2,
                              np.random.default_rng(5), threads=2)
        self.assertEqual([(c.n, c.m, c.replicate) for c in one],
                         [(1, 3, 0), (1, 3, 1), (2, 3, 0), (2, 3, 1)])
        self.assertEqual([c.true_mse for c in one],
                         [c.true_mse for c in two])
        self.assertEqual([c.restarts for c in one],
                         [c.restarts for c in two])

    def test_2(self):
        """representation comparison cells"""
        f = TRANSLATION_ARCH.build(1, np.random.default_rng(2)).f
        cells = learning_curves(self.env, REP_VS_FULL, Grid((1,), (5,)),
                                FAST_POLICY, 1, np.random.default_rng(3),
                                perfect_f=f, tasks=[0])
        self.assertEqual([c.mode for c in cells],
                         [WITH_REPRESENTATION, WITHOUT_REPRESENTATION])
        self.assertIs(cells[0].model.f, f)
        summary = curve_summary(cells)
        self.assertEqual(list(summary.columns),
                         ['mode', 'task', 'm', 'mean_true_error', 'stderr'])
        self.assertEqual(len(summary), 4)

    def test_3(self):
        """bad arguments"""
        with self.assertRaises(ValueError):
            learning_curves(self.env, 'curve', Grid((1,), (1,)),
                            FAST_POLICY, 1, np.random.default_rng(1))
        with self.assertRaises(ValueError):
            learning_curves(self.env, SURFACE, Grid((1,), (1,)),
                            FAST_POLICY, 0, np.random.default_rng(1))
        with self.assertRaises(ValueError):
            Grid((), (1,))
        with self.assertRaises(ValueError):
            Grid((0,), (1,))


class TestSummaries(TestCase):

    def setUp(self):
        self.cells = [
            SurfaceCell(1, 5, 0, 0.0, 0.1, 0.2, 0, 'mse', mode='Gof', task=0),
            SurfaceCell(1, 5, 1, 0.0, 0.3, 0.4, 2, 'mse', mode='Gof', task=0),
            CellFailure((0, 0, 5, 2), 'diverged')]

    def test_1(self):
        """curve means and standard errors"""
        summary = curve_summary(self.cells)
        row = summary[summary['task'] == '0'].iloc[0]
        self.assertAlmostEqual(row['mean_true_error'], 0.2)
        self.assertAlmostEqual(row['stderr'], 0.1)
        self.assertEqual(len(summary[summary['task'] == 'all']), 1)

    def test_2(self):
        """surface means"""
        summary = surface_summary(self.cells)
        self.assertEqual(len(summary), 1)
        self.assertEqual(summary['replicates'][0], 2)
        self.assertAlmostEqual(summary['true_mse'][0], 0.2)
        self.assertAlmostEqual(summary['restarts'][0], 1.0)

    def test_3(self):
        """no cells"""
        self.assertTrue(curve_summary([]).empty)
        self.assertTrue(surface_summary([]).empty)
        with self.assertRaises(ValueError):
            SurfaceCell(1, 1, 0, -1.0, 0.0, 0.0, 0, 'mse')


class TestTrends(TestCase):

    @SLOW
    def test_1(self):
        """a thermometer code is a perfect symmetric representation"""
        env = build_env(SYMMETRIC10)
        f = Network([(20.0 * np.ones((3, 10)),
                      -20.0 * (np.array([2.0, 3.0, 4.0]) - 0.5))])
        mse, __ = rep_true_loss(f, env, restarts=4,
                                rng=np.random.default_rng(0))
        self.assertLess(mse, 1e-3)

    @SLOW
    def test_2(self):
        """more tasks generalise better at a fixed m"""
        env = build_env(TRANSLATION10)
        cells = learning_curves(env, SURFACE, Grid((1, 9), (81,)),
                                TrainPolicy(), 10, np.random.default_rng(1),
                                threads=4)
        single = [c.true_mse for c in cells if c and c.n == 1]
        joint = [c.true_mse for c in cells if c and c.n == 9]
        slack = 2 * max(np.std(single, ddof=1) / np.sqrt(len(single)),
                        np.std(joint, ddof=1) / np.sqrt(len(joint)))
        self.assertGreaterEqual(min(len(single), len(joint)), 8)
        self.assertLessEqual(np.mean(joint), np.mean(single) + slack)
