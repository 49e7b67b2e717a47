#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Direct representation learning by metric matching.

For a classifier environment the target distance between two inputs is
0 when they have the same class and 1 otherwise. The representation f is
trained so that the surrogate 1 - exp(-|f(x) - f(x')|^2 / T) reproduces
those targets on a labelled sample; afterwards one example per class is
enough to place a class centroid.

File:
    project: RepQuest
    name: repquest_directrep.py
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

import sys

import numpy as np
import pandas as pd

import repquest_locale
from repquest_nnet import IDENTITY, backward, forward_batch, forward_trace, \
    random_network
from repquest_optim import HaltReason, TrainPolicy, cg_minimize, split_rng
from repquest_sweep import CellFailure, run_cells

_ = repquest_locale.setup_locale_translation_gettext()

DEFAULT_TEMPERATURE = 0.01

DIRECT_POLICY = TrainPolicy(mse_halt=1e-7, linf_halt=1e-3,
                            init_range=(0.0, 0.1))


class LabeledSet:
    """
    Labelled inputs with their pairwise target distances.

    Attributes:
        inputs (numpy.ndarray): shape (N, d).
        labels (numpy.ndarray): class of every input, shape (N,).
        targets (numpy.ndarray): 0 for equal classes, 1 otherwise, (N, N).
    """

    def __init__(self, inputs, labels):
        inputs = np.array(inputs, dtype=float, ndmin=2)
        labels = np.array(labels).reshape(-1)
        if labels.size != inputs.shape[0]:
            raise ValueError(_('{} labels for {} inputs')
                             .format(labels.size, inputs.shape[0]))
        self.inputs = inputs
        self.labels = labels
        self.targets = (labels[:, np.newaxis] != labels).astype(float)

    def __len__(self):
        return self.labels.size


def draw_labeled_set(env, N, rng):
    """Draw N labelled inputs of a classifier environment."""
    ids = env.draw_inputs(N, rng)
    return LabeledSet(env.inputs[ids], env.labels[ids])


def _check_temperature(T):
    if not T > 0:
        raise ValueError(_('the temperature T must be positive'))


def _mismatch(outputs, s, T):
    diff = outputs[:, np.newaxis, :] - outputs[np.newaxis, :, :]
    kernel = np.exp(-np.sum(diff ** 2, axis=-1) / T)
    return 1.0 - kernel - s.targets, kernel


def metric_match_error(f, s, T):
    """
    Squared mismatch of the surrogate distances over all ordered pairs.

    Args:
        f (Network): the representation.
        s (LabeledSet): the labelled sample.
        T (float): the temperature, T > 0.

    Returns:
        float: sum over i, j of (1 - exp(-|f(x_i) - f(x_j)|^2/T) - target)^2.
    """
    _check_temperature(T)
    mismatch, __ = _mismatch(forward_batch(f, s.inputs), s, T)
    return float(np.sum(mismatch ** 2))


def metric_match_gradient(f, s, T):
    """
    Gradient of metric_match_error() with respect to f's parameters.

    Returns:
        numpy.ndarray: flat gradient in f's parameter order.
    """
    _check_temperature(T)
    return _error_and_gradient(f, s, T)[1]


def _error_and_gradient(f, s, T):
    trace = forward_trace(f, s.inputs)
    outputs = trace[-1]
    mismatch, kernel = _mismatch(outputs, s, T)
    coupling = 2.0 * mismatch * kernel / T
    grad_outputs = 4.0 * (coupling.sum(axis=1)[:, np.newaxis] * outputs
                          - coupling @ outputs)
    gradient, __ = backward(f, trace, grad_outputs)
    return float(np.sum(mismatch ** 2)), gradient, mismatch


def train_direct(env, N, T=DEFAULT_TEMPERATURE, policy=DIRECT_POLICY,
                 rng=None, dims=None, activation=IDENTITY):
    """
    Learn a representation of a classifier environment by metric matching.

    Training halts when the error per example falls below policy.mse_halt
    or the largest pairwise mismatch falls below policy.linf_halt.

    Args:
        env (Environment): a classifier environment.
        N (int): labelled examples, N >= 2.
        T (float): the temperature.
        policy (TrainPolicy): the training policy.
        rng (numpy.random.Generator): sample, initialization and restarts.
        dims (sequence): shape of f, (env.dim, 1) by default: a linear map
            onto the real line.
        activation (str): the activation of f.

    Returns:
        tuple: (trained Network, TrainTrace).
    """
    if N < 2:
        raise ValueError(_('metric matching needs at least two examples'))
    _check_temperature(T)
    rng = rng or np.random.default_rng(policy.master_seed)
    s = draw_labeled_set(env, N, rng)
    f = random_network(dims or (env.dim, 1), activation, rng,
                       policy.init_range)

    def oracle(params):
        error, gradient, __ = _error_and_gradient(f.with_parameters(params),
                                                  s, T)
        return error, gradient

    def halt(params, loss, gradient):
        if loss / N < policy.mse_halt:
            return HaltReason.MSE
        __, __, mismatch = _error_and_gradient(f.with_parameters(params),
                                               s, T)
        if np.max(np.abs(mismatch)) < policy.linf_halt:
            return HaltReason.LINF
        return None

    params, trace = cg_minimize(
        oracle, f.parameters(), policy, rng, halt=halt,
        caps=f.parameter_caps(policy.weight_clip, policy.threshold_clip))
    if trace.halt_reason == HaltReason.RESTARTS_EXHAUSTED:
        print(_('Metric matching with N={} ran out of restarts').format(N),
              file=sys.stderr)
    return f.with_parameters(params), trace


class CentroidModel:
    """
    Nearest centroid classifier in the representation space.

    Attributes:
        classes (numpy.ndarray): the classes, increasing.
        centroids (numpy.ndarray): one centroid per class.
    """

    def __init__(self, classes, centroids):
        self.classes = np.asarray(classes)
        self.centroids = np.array(centroids, dtype=float, ndmin=2)
        if self.centroids.shape[0] != self.classes.size:
            raise ValueError(_('one centroid per class is needed'))

    @classmethod
    def fit(cls, outputs, labels):
        """Centroids as class means of representation outputs."""
        outputs = np.asarray(outputs, dtype=float)
        labels = np.asarray(labels)
        classes = np.unique(labels)
        return cls(classes, [outputs[labels == c].mean(axis=0)
                             for c in classes])

    def classify(self, outputs):
        """Class of the nearest centroid; ties go to the lowest class."""
        outputs = np.asarray(outputs, dtype=float)
        distances = np.sum((outputs[:, np.newaxis, :]
                            - self.centroids[np.newaxis, :, :]) ** 2, axis=-1)
        return self.classes[np.argmin(distances, axis=1)]


def evaluate_direct(f, env):
    """
    Misclassified inputs and average within group variance of f.

    Centroids are the means of f over each object's translates. The
    within group variance of a class with P translates is
    sqrt(sum_j sum_k |f(x_j) - f(x_k)|^2) / P.

    Returns:
        tuple: (misclassified count, average within group variance).
    """
    outputs = forward_batch(f, env.inputs)
    model = CentroidModel.fit(outputs, env.labels)
    misclassified = int(np.sum(model.classify(outputs) != env.labels))
    variances = []
    for c in model.classes:
        group = outputs[env.labels == c]
        diff = group[:, np.newaxis, :] - group[np.newaxis, :, :]
        variances.append(np.sqrt(np.sum(diff ** 2)) / len(group))
    return misclassified, float(np.mean(variances))


def direct_learning_curve(env, n_values, replicates, rng,
                          T=DEFAULT_TEMPERATURE, policy=DIRECT_POLICY,
                          threads=1, progress=None):
    """
    Metric matching over a range of sample sizes.

    Returns:
        list: pairs (key, result) from run_cells(); a result is a dict
            with columns N, replicate, misclassified, within_variance,
            restarts, halt, or a CellFailure.
    """
    if replicates < 1:
        raise ValueError(_('at least one replicate is needed'))
    entropy = int(rng.integers(2 ** 63))

    def job(key):
        N, replicate = key
        f, trace = train_direct(env, N, T, policy,
                                split_rng(entropy, N, replicate))
        misclassified, variance = evaluate_direct(f, env)
        return {'N': N, 'replicate': replicate,
                'misclassified': misclassified, 'within_variance': variance,
                'restarts': trace.restarts,
                'halt': trace.halt_reason.value, 'model': f}

    keys = [(int(N), r) for N in n_values for r in range(replicates)]
    return run_cells(keys, job, threads, progress)


def direct_summary(pairs):
    """
    Means over replicates per N.

    Returns:
        pandas.DataFrame: columns N, replicates, misclassified,
            within_variance, within_variance_stderr, restarts, perfect
            (fraction of replicates with no misclassified input).
    """
    columns = ['N', 'replicates', 'misclassified', 'within_variance',
               'within_variance_stderr', 'restarts', 'perfect']
    frame = pd.DataFrame([result for __, result in pairs
                          if not isinstance(result, CellFailure)])
    if frame.empty:
        return pd.DataFrame(columns=columns)
    grouped = frame.groupby('N', sort=True)
    summary = pd.DataFrame({
        'replicates': grouped['misclassified'].count(),
        'misclassified': grouped['misclassified'].mean(),
        'within_variance': grouped['within_variance'].mean(),
        'within_variance_stderr': grouped['within_variance'].sem(),
        'restarts': grouped['restarts'].mean(),
        'perfect': grouped['misclassified'].agg(
            lambda values: float(np.mean(values == 0)))}).reset_index()
    return summary[columns]
