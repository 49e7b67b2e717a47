#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
File:
    project: RepQuest
    name: test_repquest_envs.py
    version: 0.1.0.0
    date: 19.10.2026

Authors:
    RepQuest contributors

Copyright (c) 2026 RepQuest contributors.
"""

from unittest import TestCase

from repquest_envs import *


class TestTranslation10(TestCase):

    def setUp(self):
        self.env = build_env(TRANSLATION10)

    def test_1(self):
        """sizes"""
        self.assertEqual(self.env.n_inputs, 40)
        self.assertEqual(self.env.n_tasks, 14)
        self.assertEqual(self.env.dim, 10)
        self.assertAlmostEqual(self.env.input_weights.sum(), 1.0)

    def test_2(self):
        """object k is a run of k + 1 pixels"""
        np.testing.assert_array_equal(self.env.inputs.sum(axis=1),
                                      self.env.labels + 1)

    def test_3(self):
        """tasks are invariant under translation"""
        index = {tuple(x): i for i, x in enumerate(self.env.inputs)}
        for i, x in enumerate(self.env.inputs):
            j = index[tuple(rotate(x, 3))]
            self.assertEqual(self.env.labels[i], self.env.labels[j])
            np.testing.assert_array_equal(self.env.tasks[:, i],
                                          self.env.tasks[:, j])

    def test_4(self):
        """tasks are boolean and neither constant"""
        self.assertTrue(np.all(np.isin(self.env.tasks, (0.0, 1.0))))
        self.assertTrue(np.all(self.env.tasks.min(axis=1) == 0))
        self.assertTrue(np.all(self.env.tasks.max(axis=1) == 1))

    def test_5(self):
        """unknown task"""
        with self.assertRaises(ValueError):
            self.env.task_table(14)
        with self.assertRaises(ValueError):
            self.env.task_table(-1)


class TestSymmetric10(TestCase):

    def setUp(self):
        self.env = build_env(SYMMETRIC10)

    def test_1(self):
        """all inputs with one to four active pixels"""
        self.assertEqual(self.env.n_inputs, 10 + 45 + 120 + 210)
        self.assertAlmostEqual(self.env.input_weights.sum(), 1.0)

    def test_2(self):
        """every pixel count is equally likely"""
        counts = self.env.inputs.sum(axis=1)
        for count in range(1, 5):
            self.assertAlmostEqual(
                self.env.input_weights[counts == count].sum(), 0.25)

    def test_3(self):
        """tasks depend on the pixel count only"""
        counts = self.env.inputs.sum(axis=1)
        for count in range(1, 5):
            tables = self.env.tasks[:, counts == count]
            self.assertTrue(np.all(tables == tables[:, :1]))

    def test_4(self):
        """drawn inputs are admissible"""
        ids = self.env.draw_inputs(200, np.random.default_rng(1))
        self.assertTrue(np.all((0 <= ids) & (ids < self.env.n_inputs)))
        counts = self.env.inputs[ids].sum(axis=1)
        self.assertEqual(set(counts.tolist()), {1.0, 2.0, 3.0, 4.0})


class TestBinary5x3(TestCase):

    def setUp(self):
        self.env = build_env(BINARY5X3, seed=17)

    def test_1(self):
        """sizes"""
        self.assertEqual(self.env.n_inputs, 32)
        self.assertEqual(self.env.n_tasks, 256)
        self.assertTrue(np.all(np.abs(self.env.tasks) == 1))

    def test_2(self):
        """tasks are functions of the codes of f*"""
        f = self.env.representation
        codes = code_index(np.array([f(x) for x in binary_inputs()]))
        for g in (0, 1, 77, 255):
            expected = np.where((g >> codes) & 1, 1, -1)
            np.testing.assert_array_equal(self.env.tasks[g], expected)

    def test_3(self):
        """the seed chooses f*"""
        self.assertEqual(self.env.representation,
                         build_env(BINARY5X3, seed=17).representation)
        with self.assertRaises(ValueError):
            build_env(BINARY5X3)

    def test_4(self):
        """inputs enumerate the ±1 vectors"""
        inputs = binary_inputs()
        self.assertEqual(len({tuple(x) for x in inputs}), 32)
        np.testing.assert_array_equal(inputs[0], -np.ones(5))
        np.testing.assert_array_equal(inputs[1], [1, -1, -1, -1, -1])

    def test_5(self):
        """code index"""
        self.assertEqual(code_index([-1, -1, -1]), 0)
        self.assertEqual(code_index([1, -1, -1]), 1)
        self.assertEqual(code_index([1, 1, 1]), 7)


class TestClassifier(TestCase):

    def test_1(self):
        """objects and their translates"""
        env = build_env(CLASSIFIER, pixels=10, objects=4)
        self.assertEqual(env.n_inputs, 40)
        self.assertEqual(env.n_tasks, 4)
        np.testing.assert_array_equal(env.tasks.sum(axis=0), np.ones(40))
        np.testing.assert_array_equal(env.tasks.argmax(axis=0), env.labels)

    def test_2(self):
        """larger retina"""
        env = build_env(CLASSIFIER, pixels=30, objects=10)
        self.assertEqual(env.n_inputs, 300)
        self.assertEqual(set(env.labels.tolist()), set(range(10)))

    def test_3(self):
        """too many objects"""
        with self.assertRaises(ValueError):
            build_env(CLASSIFIER, pixels=3, objects=4)
        with self.assertRaises(ValueError):
            build_env('retina')


class TestNMSample(TestCase):

    def setUp(self):
        self.env = build_env(TRANSLATION10)

    def test_1(self):
        """shapes"""
        z = draw_nm_sample(self.env, 3, 5, np.random.default_rng(2))
        self.assertEqual((z.n, z.m), (3, 5))
        self.assertEqual(z.inputs.shape, (3, 5, 10))
        self.assertEqual(z.targets.shape, (3, 5))
        inputs, targets = z.row(1)
        for x, y, i in zip(inputs, targets, z.input_ids[1]):
            np.testing.assert_array_equal(x, self.env.inputs[i])
            self.assertEqual(y, self.env.tasks[z.task_ids[1], i])

    def test_2(self):
        """the same stream gives the same sample"""
        a = draw_nm_sample(self.env, 4, 6, np.random.default_rng(9))
        b = draw_nm_sample(self.env, 4, 6, np.random.default_rng(9))
        np.testing.assert_array_equal(a.task_ids, b.task_ids)
        np.testing.assert_array_equal(a.input_ids, b.input_ids)

    def test_3(self):
        """empty samples are rejected"""
        with self.assertRaises(ValueError):
            draw_nm_sample(self.env, 0, 5, np.random.default_rng(1))
        with self.assertRaises(ValueError):
            draw_nm_sample(self.env, 2, 0, np.random.default_rng(1))

    def test_4(self):
        """reordered rows"""
        z = draw_nm_sample(self.env, 3, 4, np.random.default_rng(4))
        r = z.rows([2, 1, 0])
        np.testing.assert_array_equal(r.input_ids, z.input_ids[::-1])
        np.testing.assert_array_equal(r.targets, z.targets[::-1])

    def test_5(self):
        """rows without examples"""
        z = NMSample(self.env, [0, 1], np.zeros((2, 0)))
        self.assertEqual((z.n, z.m), (2, 0))
