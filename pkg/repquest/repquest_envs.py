#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Toy environments and (n, m) samples.

An environment lists every admissible input and every task as a lookup
table over those inputs, so true errors are computed exactly by
enumeration. Tasks of the retina environments take values in {0, 1};
the binary environment keeps ±1 labels, which the binary search consumes
directly.

File:
    project: RepQuest
    name: repquest_envs.py
    version: 0.1.0.0
    date: 19.10.2026

Authors:
    RepQuest contributors

Copyright (c) 2026 RepQuest contributors.
"""

#  Copyright (c) 2023 Sławomir Marczyński, (c) 2026 RepQuest contributors.
#  All rights reserved.
#  Redistribution and use in source and binary forms, with or without
#  modification, are permitted provided that the following conditions
#  are met: 1. Redistributions of source code must retain the above
#  copyright notice, this list of conditions and the following
#  disclaimer. 2. Redistributions in binary form must reproduce the
#  above copyright notice, this list of conditions and the following
#  disclaimer in the documentation and/or other materials provided with
#  the distribution. 3. Neither the name of the copyright holder nor
#  the names of its contributors may be used to endorse or promote
#  products derived from this software without specific prior written
#  permission. THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND
#  CONTRIBUTORS "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING,
#  BUT NOT LIMITED TO, THE IMPLIED WARRANTIES OF MERCHANTABILITY AND
#  FITNESS FOR A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL
#  THE COPYRIGHT HOLDER OR CONTRIBUTORS BE LIABLE FOR ANY DIRECT,
#  INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES
#  (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF SUBSTITUTE GOODS OR
#  SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS INTERRUPTION)
#  HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN CONTRACT,
#  STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
#  ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED
#  OF THE POSSIBILITY OF SUCH DAMAGE.

from itertools import combinations

import numpy as np
from scipy.special import comb

import repquest_locale
from repquest_nnet import BINARY_CANDIDATES, BINARY_INPUTS, BinaryNetwork, \
    binary_forward

_ = repquest_locale.setup_locale_translation_gettext()

TRANSLATION10 = 'translation10'
SYMMETRIC10 = 'symmetric10'
BINARY5X3 = 'binary5x3'
CLASSIFIER = 'classifier'
CUSTOM = 'custom'
KINDS = (TRANSLATION10, SYMMETRIC10, BINARY5X3, CLASSIFIER, CUSTOM)

RETINA_PIXELS = 10
RETINA_OBJECTS = 4


class Environment:
    """
    Enumerable environment: admissible inputs, tasks and input weights.

    Tasks are drawn uniformly. Inputs are drawn by the kind's own rule,
    and input_weights holds the resulting probability of each input.

    Attributes:
        kind (str): one of KINDS.
        inputs (numpy.ndarray): admissible inputs, shape (N, d).
        tasks (numpy.ndarray): task tables, shape (T, N).
        input_weights (numpy.ndarray): probabilities of the inputs.
        labels (numpy.ndarray): class of every input (classifier kinds).
        positions (numpy.ndarray): retina offset of every input (retina
            kinds).
        representation (BinaryNetwork): the generating f* (binary5x3).
    """

    def __init__(self, kind, inputs, tasks, input_weights=None, labels=None,
                 positions=None, representation=None):
        if kind not in KINDS:
            raise ValueError(_('unknown environment kind {}').format(kind))
        inputs = np.array(inputs, dtype=float, ndmin=2)
        tasks = np.array(tasks, dtype=float, ndmin=2)
        if tasks.shape[1] != inputs.shape[0]:
            raise ValueError(_('task tables do not cover the inputs'))
        if input_weights is None:
            input_weights = np.full(inputs.shape[0], 1.0 / inputs.shape[0])
        input_weights = np.array(input_weights, dtype=float)
        if input_weights.shape != (inputs.shape[0],) or \
                not np.isclose(input_weights.sum(), 1.0):
            raise ValueError(_('input weights must be a distribution'))
        for array in (inputs, tasks, input_weights):
            array.setflags(write=False)
        self.kind = kind
        self.inputs = inputs
        self.tasks = tasks
        self.input_weights = input_weights
        self.labels = None if labels is None else np.array(labels, dtype=int)
        self.positions = None if positions is None \
            else np.array(positions, dtype=int)
        self.representation = representation
        self._pixels = None
        self._objects = None
        self._index = None

    @property
    def n_inputs(self):
        return self.inputs.shape[0]

    @property
    def n_tasks(self):
        return self.tasks.shape[0]

    @property
    def dim(self):
        return self.inputs.shape[1]

    def task_table(self, task_id):
        """
        The lookup table of a task.

        Raises:
            ValueError: for an unknown task id.
        """
        task_id = int(task_id)
        if not 0 <= task_id < self.n_tasks:
            raise ValueError(_('unknown task id {}').format(task_id))
        return self.tasks[task_id]

    def draw_inputs(self, m, rng):
        """
        Indices of m inputs drawn with replacement.

        Args:
            m (int): number of inputs.
            rng (numpy.random.Generator): the random stream.

        Returns:
            numpy.ndarray: indices into inputs.
        """
        if self.kind == SYMMETRIC10:
            ids = np.empty(m, dtype=int)
            for j in range(m):
                count = rng.integers(1, 5)
                pixels = np.sort(rng.choice(RETINA_PIXELS, size=count,
                                            replace=False))
                ids[j] = self._index[tuple(int(p) for p in pixels)]
            return ids
        if self.kind == CLASSIFIER:
            objects = rng.integers(0, self._objects, size=m)
            positions = rng.integers(0, self._pixels, size=m)
            return objects * self._pixels + positions
        return rng.integers(0, self.n_inputs, size=m)

    def __repr__(self):
        return 'Environment({!r}, inputs={}, tasks={})'.format(
            self.kind, self.n_inputs, self.n_tasks)


class NMSample:
    """
    An (n, m) sample: n rows, one per drawn task, of m examples each.

    Attributes:
        task_ids (numpy.ndarray): the drawn task of every row, shape (n,).
        input_ids (numpy.ndarray): indices into env.inputs, shape (n, m).
        inputs (numpy.ndarray): input vectors, shape (n, m, d).
        targets (numpy.ndarray): task values, shape (n, m).
    """

    def __init__(self, env, task_ids, input_ids):
        task_ids = np.array(task_ids, dtype=int).reshape(-1)
        input_ids = np.array(input_ids, dtype=int)
        if input_ids.size == 0:
            input_ids = np.zeros((task_ids.size, 0), dtype=int)
        input_ids = input_ids.reshape(task_ids.size, -1)
        for task_id in task_ids:
            env.task_table(task_id)
        self.env = env
        self.task_ids = task_ids
        self.input_ids = input_ids
        self.inputs = env.inputs[input_ids]
        self.targets = env.tasks[task_ids[:, np.newaxis], input_ids]

    @property
    def n(self):
        return self.input_ids.shape[0]

    @property
    def m(self):
        return self.input_ids.shape[1]

    def row(self, i):
        """Inputs and targets of the row i."""
        return self.inputs[i], self.targets[i]

    def rows(self, order):
        """A sample with rows taken in the given order."""
        order = np.asarray(order, dtype=int)
        return NMSample(self.env, self.task_ids[order], self.input_ids[order])


def draw_nm_sample(env, n, m, rng):
    """
    Draw n tasks uniformly with replacement and m inputs for each.

    Args:
        env (Environment): the environment.
        n (int): tasks.
        m (int): examples per task.
        rng (numpy.random.Generator): the random stream.

    Returns:
        NMSample: the sample.
    """
    if n < 1 or m < 1:
        raise ValueError(_('n and m must be positive'))
    task_ids = rng.integers(0, env.n_tasks, size=n)
    input_ids = np.stack([env.draw_inputs(m, rng) for __ in range(n)])
    return NMSample(env, task_ids, input_ids)


def rotate(x, k):
    """Cyclic shift of a retina image by k pixels."""
    return np.roll(x, k)


def _retina(pixels, objects):
    # Object k is a run of k + 1 active pixels; inputs are object-major.
    inputs, labels, positions = [], [], []
    for k in range(objects):
        for p in range(pixels):
            x = np.zeros(pixels)
            x[[(p + j) % pixels for j in range(k + 1)]] = 1.0
            inputs.append(x)
            labels.append(k)
            positions.append(p)
    return np.array(inputs), np.array(labels), np.array(positions)


def _boolean_tables(codes, values_of_input):
    # Task with code c maps an input whose selector is s to bit s of c.
    return np.array([[(code >> s) & 1 for s in values_of_input]
                     for code in codes], dtype=float)


def _translation10():
    inputs, labels, positions = _retina(RETINA_PIXELS, RETINA_OBJECTS)
    codes = range(1, 2 ** RETINA_OBJECTS - 1)
    env = Environment(TRANSLATION10, inputs, _boolean_tables(codes, labels),
                      labels=labels, positions=positions)
    env._pixels, env._objects = RETINA_PIXELS, RETINA_OBJECTS
    return env


def _symmetric10():
    inputs, weights, counts, index = [], [], [], {}
    for count in range(1, 5):
        for pixels in combinations(range(RETINA_PIXELS), count):
            x = np.zeros(RETINA_PIXELS)
            x[list(pixels)] = 1.0
            index[pixels] = len(inputs)
            inputs.append(x)
            counts.append(count - 1)
            weights.append(0.25 / comb(RETINA_PIXELS, count, exact=True))
    codes = range(1, 2 ** 4 - 1)
    env = Environment(SYMMETRIC10, inputs, _boolean_tables(codes, counts),
                      input_weights=weights)
    env._index = index
    return env


def binary_inputs():
    """All 32 ±1 vectors; input i has +1 at position j iff bit j of i."""
    bits = (np.arange(2 ** BINARY_INPUTS)[:, np.newaxis]
            >> np.arange(BINARY_INPUTS)) & 1
    return 2 * bits - 1


def code_index(outputs):
    """Index 0..7 of ±1 codes: bit k set iff output k is +1."""
    outputs = np.asarray(outputs)
    return ((outputs > 0).astype(int) << np.arange(outputs.shape[-1])).sum(-1)


def _binary5x3(seed):
    if seed is None:
        raise ValueError(_('binary5x3 needs a seed'))
    f_star = BinaryNetwork.from_index(
        np.random.default_rng(seed).integers(0, BINARY_CANDIDATES))
    inputs = binary_inputs()
    codes = code_index(np.array([binary_forward(f_star, x) for x in inputs]))
    tasks = np.array([np.where((g >> codes) & 1, 1, -1) for g in range(256)])
    return Environment(BINARY5X3, inputs, tasks, representation=f_star)


def _classifier(pixels, objects):
    if not 1 <= objects <= pixels:
        raise ValueError(_('{} objects do not fit a {}-pixel retina')
                         .format(objects, pixels))
    inputs, labels, positions = _retina(pixels, objects)
    tasks = (labels[np.newaxis, :] == np.arange(objects)[:, np.newaxis])
    env = Environment(CLASSIFIER, inputs, tasks, labels=labels,
                      positions=positions)
    env._pixels, env._objects = pixels, objects
    return env


def build_env(kind, seed=None, pixels=RETINA_PIXELS, objects=RETINA_OBJECTS):
    """
    Build a fully enumerated environment.

    Args:
        kind (str): 'translation10', 'symmetric10', 'binary5x3' or
            'classifier'.
        seed (int): chooses f* for binary5x3; other kinds ignore it.
        pixels (int): retina size of the classifier kind.
        objects (int): objects of the classifier kind.

    Returns:
        Environment: the environment.
    """
    if kind == TRANSLATION10:
        return _translation10()
    if kind == SYMMETRIC10:
        return _symmetric10()
    if kind == BINARY5X3:
        return _binary5x3(seed)
    if kind == CLASSIFIER:
        return _classifier(pixels, objects)
    raise ValueError(_('unknown environment kind {}').format(kind))
