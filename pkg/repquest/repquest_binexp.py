#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exhaustive representation search over binary networks.

Every one of the 2^15 binary networks maps the 32 inputs of {±1}^5 to one
of the 8 codes of {±1}^3. A code cell of a sample row is the set of the
row's examples that a network maps to the same code; the best output
table labels each cell by majority, so the empirical loss of the
representation counts the minority labels of all cells.

Counts are kept as integers and divided once, so "zero loss" is an
exact test.

File:
    project: RepQuest
    name: repquest_binexp.py
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

from functools import lru_cache

import numpy as np
import pandas as pd

import repquest_locale
from repquest_envs import binary_inputs, code_index, draw_nm_sample
from repquest_nnet import BINARY_OUTPUTS, BinaryNetwork, all_binary_weights
from repquest_optim import split_rng

_ = repquest_locale.setup_locale_translation_gettext()

N_CODES = 2 ** BINARY_OUTPUTS
N_TABLES = 2 ** N_CODES
N_INPUTS = 32

REPRESENTATION = 'representation'
ORDINARY = 'ordinary'
EXACT = 'exact'


@lru_cache(maxsize=1)
def candidate_codes():
    """
    Codes of every candidate network on every input.

    Returns:
        numpy.ndarray: shape (32768, 32); entry [k, i] is the code index of
            BinaryNetwork.from_index(k) on binary_inputs()[i].
    """
    sums = np.einsum('kow,iw->kio', all_binary_weights(), binary_inputs())
    codes = code_index(np.where(sums > 0, 1, -1)).astype(np.uint8)
    codes.setflags(write=False)
    return codes


def network_codes(f):
    """Codes of the network f on all 32 inputs."""
    return candidate_codes()[f.index()]


class OutputTable:
    """
    Output network g as a table: a ±1 label for each of the 8 codes.

    Table number t labels the code a with +1 iff bit a of t is set.
    """

    def __init__(self, labels):
        labels = np.array(labels, dtype=int)
        if labels.shape != (N_CODES,) or np.any(np.abs(labels) != 1):
            raise ValueError(_('an output table needs 8 labels ±1'))
        labels.setflags(write=False)
        self.labels = labels

    @classmethod
    def from_index(cls, index):
        return cls(np.where((int(index) >> np.arange(N_CODES)) & 1, 1, -1))

    def index(self):
        return int((self.labels > 0).astype(int) @ (1 << np.arange(N_CODES)))

    def inverted(self):
        return OutputTable(-self.labels)

    def __call__(self, code):
        return self.labels[code]

    def __eq__(self, other):
        if not isinstance(other, OutputTable):
            return NotImplemented
        return bool(np.array_equal(self.labels, other.labels))

    def __hash__(self):
        return self.index()

    def __repr__(self):
        return 'OutputTable({})'.format(self.labels.tolist())


def _check_labels(labels):
    labels = np.asarray(labels)
    if np.any(np.abs(labels) != 1):
        raise ValueError(_('binary targets must be ±1'))
    return labels > 0


def _cell_counts(codes, positive):
    # Plus and minus counts per code cell; codes (..., m), positive (..., m).
    onehot = codes[..., np.newaxis] == np.arange(N_CODES)
    plus = (onehot & positive[..., np.newaxis]).sum(axis=-2)
    minus = (onehot & ~positive[..., np.newaxis]).sum(axis=-2)
    return plus, minus


def rep_empirical_count(f, z):
    """
    Minority labels of f's code cells summed over all rows of z.

    Args:
        f (BinaryNetwork): the representation.
        z (NMSample): a sample with ±1 targets from a binary environment.

    Returns:
        int: the count, m*n times the empirical loss.
    """
    positive = _check_labels(z.targets)
    codes = network_codes(f)[z.input_ids]
    plus, minus = _cell_counts(codes, positive)
    return int(np.minimum(plus, minus).sum())


def rep_empirical_loss(f, z):
    """
    Empirical loss of the representation f on z.

    Returns:
        float: rep_empirical_count(f, z) / (m n); 0 for an empty sample.
    """
    count = rep_empirical_count(f, z)
    size = z.n * z.m
    return count / size if size else 0.0


def best_output_table(f, inputs, labels):
    """
    Majority label per code cell of one row.

    Args:
        f (BinaryNetwork): the representation.
        inputs (array-like): ±1 input vectors, shape (m, 5).
        labels (array-like): ±1 labels, shape (m,).

    Returns:
        OutputTable: empty and tied cells are labelled +1.
    """
    positive = _check_labels(labels)
    inputs = np.asarray(inputs, dtype=int).reshape(-1, f.weights.shape[1])
    codes = code_index(np.where(inputs @ f.weights.T > 0, 1, -1))
    plus, minus = _cell_counts(codes, positive)
    return OutputTable(np.where(plus >= minus, 1, -1))


def zero_loss_indices(z):
    """
    Indices of all candidates with zero empirical loss on z.

    Args:
        z (NMSample): a sample with ±1 targets.

    Returns:
        numpy.ndarray: increasing candidate indices.
    """
    positive = _check_labels(z.targets)
    alive = np.arange(candidate_codes().shape[0])
    for i in range(z.n):
        if alive.size == 0:
            break
        codes = candidate_codes()[alive][:, z.input_ids[i]]
        plus, minus = _cell_counts(codes, positive[i][np.newaxis, :])
        alive = alive[~((plus > 0) & (minus > 0)).any(axis=1)]
    return alive


def zero_loss_search(z):
    """
    All binary networks with zero empirical representation loss on z.

    Returns:
        list: BinaryNetwork objects in index order.
    """
    return [BinaryNetwork.from_index(k) for k in zero_loss_indices(z)]


def binary_true_error(f, table, task):
    """
    Disagreements of table(f(x)) with a task over all 32 inputs.

    Args:
        f (BinaryNetwork): the representation.
        table (OutputTable): the output network.
        task (array-like): ±1 values of the task on binary_inputs().

    Returns:
        int: the number of disagreements, 0..32.
    """
    task = np.asarray(task)
    if task.shape != (N_INPUTS,):
        raise ValueError(_('a task needs 32 values'))
    return int((table.labels[network_codes(f)] != task).sum())


def new_task_errors(candidates, task, train_ids):
    """
    Errors of candidates learning a new task from a training set.

    Each candidate gets its best output table on the training set and is
    then compared with the task on all 32 inputs.

    Args:
        candidates (array-like): candidate indices.
        task (numpy.ndarray): ±1 values of the new task on all inputs.
        train_ids (array-like): indices of the training inputs.

    Returns:
        numpy.ndarray: disagreement counts, one per candidate.
    """
    codes = candidate_codes()[np.asarray(candidates, dtype=int)]
    train_ids = np.asarray(train_ids, dtype=int)
    positive = _check_labels(task[train_ids])
    plus, minus = _cell_counts(codes[:, train_ids], positive[np.newaxis, :])
    tables = np.where(plus >= minus, 1, -1)
    predictions = np.take_along_axis(tables, codes.astype(int), axis=1)
    return (predictions != task).sum(axis=1)


def ordinary_new_task_error(task, train_ids):
    """
    Mean error of all zero-loss networks g∘f of the full space.

    A network f without conflicting code cells admits 2^u output tables
    with zero training loss, u being the number of code cells with no
    training example. Averaged over those tables an input in such a cell
    is wrong with probability one half, so the mean is computed in closed
    form and weighted by 2^u.

    Args:
        task (numpy.ndarray): ±1 values of the task on all inputs.
        train_ids (array-like): indices of the training inputs.

    Returns:
        float: mean disagreement count.
    """
    codes = candidate_codes().astype(int)
    train_ids = np.asarray(train_ids, dtype=int)
    positive = _check_labels(task[train_ids])
    plus, minus = _cell_counts(codes[:, train_ids], positive[np.newaxis, :])
    consistent = ~((plus > 0) & (minus > 0)).any(axis=1)
    observed = (plus + minus) > 0
    labels = np.where(plus > 0, 1, -1)
    seen = np.take_along_axis(observed, codes, axis=1)
    wrong = np.take_along_axis(labels, codes, axis=1) != task
    errors = (seen & wrong).sum(axis=1) + 0.5 * (~seen).sum(axis=1)
    weights = np.where(consistent,
                       2.0 ** (N_CODES - observed.sum(axis=1)), 0.0)
    return float(weights @ errors / weights.sum())


def exact_representation_error(env, task, train_ids):
    """Error of the generating f* learning a new task."""
    return float(new_task_errors([env.representation.index()], task,
                                 train_ids)[0])


def binary_experiment(env, n_list, m_list, m1_list, samples, new_tasks, cap,
                      rng, progress=None):
    """
    Generalisation of zero-loss representations to new tasks.

    For every (n, m) and sample an (n, m) sample is drawn, all zero-loss
    representations are found (a seeded subsample of `cap` of them when
    there are more), and each of them learns `new_tasks` fresh tasks from
    training sets of the sizes in m1_list. The new tasks and their
    training sets are drawn once per sample and shared by all curves and
    all (n, m), so the curves are paired; the ordinary and exact curves do
    not depend on (n, m) and are computed once per sample.

    Args:
        env (Environment): a binary5x3 environment.
        n_list (sequence): task counts.
        m_list (sequence): examples per task.
        m1_list (sequence): training set sizes of the new tasks.
        samples (int): samples per (n, m).
        new_tasks (int): new tasks per sample.
        cap (int): most representations evaluated per sample.
        rng (numpy.random.Generator): the master stream.
        progress (progress.Progress): an optional Progress object.

    Returns:
        pandas.DataFrame: columns curve, n, m, sample, task, m1, error,
            zero_loss, evaluated; error is the mean fraction of the 32
            inputs misclassified.
    """
    entropy = int(rng.integers(2 ** 63))
    m1_list = sorted(int(m1) for m1 in m1_list)
    records = []
    if progress:
        progress.range(len(n_list) * len(m_list) * samples + samples)

    def new_task_draws(s):
        task_rng = split_rng(entropy, 0, s)
        draws = []
        for t in range(new_tasks):
            task = env.tasks[task_rng.integers(0, N_TABLES)]
            train = env.draw_inputs(m1_list[-1], task_rng)
            draws.append((t, task, train))
        return draws

    # Every curve and every n learn the same new tasks of a sample.
    draws = [new_task_draws(s) for s in range(samples)]
    for s in range(samples):
        for t, task, train in draws[s]:
            for m1 in m1_list:
                ids = train[:m1]
                for curve, value in (
                        (ORDINARY, ordinary_new_task_error(task, ids)),
                        (EXACT, exact_representation_error(env, task, ids))):
                    records.append((curve, 0, 0, s, t, m1, value / N_INPUTS,
                                    0, 0))
        if progress:
            progress.step()
    for n in n_list:
        for m in m_list:
            for s in range(samples):
                sample_rng = split_rng(entropy, 1, n, m, s)
                z = draw_nm_sample(env, n, m, sample_rng)
                zero = zero_loss_indices(z)
                found = zero.size
                if found > cap:
                    zero = np.sort(sample_rng.choice(zero, cap,
                                                     replace=False))
                for t, task, train in draws[s]:
                    for m1 in m1_list:
                        errors = new_task_errors(zero, task, train[:m1])
                        records.append((REPRESENTATION, n, m, s, t, m1,
                                        errors.mean() / N_INPUTS, found,
                                        zero.size))
                if progress:
                    progress.step()
    if progress:
        progress.stop()
    return pd.DataFrame(records, columns=['curve', 'n', 'm', 'sample', 'task',
                                          'm1', 'error', 'zero_loss',
                                          'evaluated'])


def binary_curves(records):
    """
    Mean new-task error and its standard error per curve, n, m and m1.

    Returns:
        pandas.DataFrame: columns curve, n, m, m1, mean_error, stderr.
    """
    per_sample = records.groupby(['curve', 'n', 'm', 'sample', 'm1'],
                                 sort=True)['error'].mean().reset_index()
    summary = per_sample.groupby(['curve', 'n', 'm', 'm1'], sort=True)[
        'error'].agg(['mean', 'sem']).reset_index()
    summary.columns = ['curve', 'n', 'm', 'm1', 'mean_error', 'stderr']
    return summary
