#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Canonical distortion measures and quantization.

A function environment, that is a distribution Q over functions f together
with a loss sigma on their values, induces the distortion

    rho(x, y) = E_Q sigma(f(x), f(y))

on the input space. Quantization with respect to rho keeps exactly the
information about x the environment's functions care about.

File:
    project: RepQuest
    name: repquest_cdm.py
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

import repquest_locale

_ = repquest_locale.setup_locale_translation_gettext()

LINEAR01 = 'linear01'
QUADRATIC11 = 'quadratic11'
CUBIC = 'cubic'

CLOSED_LINEAR = 'closed_linear'
CLOSED_QUADRATIC = 'closed_quadratic'
CLOSED_CUBIC = 'closed_cubic'
MC_ESTIMATE = 'mc_estimate'
LEARNER_ESTIMATE = 'learner_estimate'
TABLE = 'table'
DISTORTION_KINDS = (CLOSED_LINEAR, CLOSED_QUADRATIC, CLOSED_CUBIC,
                    MC_ESTIMATE, LEARNER_ESTIMATE, TABLE)

LINEAR_CUBE = 'linear_cube'
THRESHOLD_BALL = 'threshold_ball'

DOMAINS = {LINEAR01: (0.0, 1.0), QUADRATIC11: (-1.0, 1.0), CUBIC: (-1.0, 1.0)}
CLOSED_KINDS = {LINEAR01: CLOSED_LINEAR, QUADRATIC11: CLOSED_QUADRATIC,
                CUBIC: CLOSED_CUBIC}

GRID_POINTS = 10 ** 4
CYCLE_PERIODS = (2, 3, 4)


class PartitionError(ValueError):
    """A partition is not faithful to its quantization points."""


class QuantizationConvergenceError(RuntimeError):
    """
    The fixed-point solver did not settle.

    Attributes:
        points (numpy.ndarray): the last iterate.
        period (int): period of the detected limit cycle, None when the
            sweep limit ran out first.
    """

    def __init__(self, message, points, period=None):
        super().__init__(message)
        self.points = points
        self.period = period


def abs_difference(a, b):
    """The loss sigma(a, b) = |a - b|."""
    return np.abs(a - b)


def _check_domain(kind, *values):
    if kind not in DOMAINS:
        raise ValueError(_('unknown environment {}').format(kind))
    lo, hi = DOMAINS[kind]
    for v in values:
        v = np.asarray(v, dtype=float)
        if np.any(v < lo) or np.any(v > hi):
            raise ValueError(_('{} is defined on [{}, {}]')
                             .format(kind, lo, hi))


def rho_closed(kind, x, y):
    """
    Closed form distortion of a one-parameter environment.

    The linear environment f(x) = a x with a uniform on [0, 1] gives
    rho = |x - y| / 2. The quadratic environment f(x) = a x^2 with a
    uniform on [-1, 1] gives rho = |x - y| |x + y| / 2, so x and -x are
    at distance zero.

    Args:
        kind (str): 'linear01' or 'quadratic11'.
        x (float or numpy.ndarray): the first argument.
        y (float or numpy.ndarray): the second argument.

    Returns:
        float or numpy.ndarray: the distortion.

    Raises:
        ValueError: when x or y lies outside the environment's domain.
    """
    if kind == CUBIC:
        return rho_cubic(x, y)
    if kind not in (LINEAR01, QUADRATIC11):
        raise ValueError(_('no closed form for {}').format(kind))
    _check_domain(kind, x, y)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if kind == LINEAR01:
        value = 0.5 * np.abs(x - y)
    else:
        value = 0.5 * np.abs(x - y) * np.abs(x + y)
    return float(value) if value.ndim == 0 else value


def rho_cubic(x, y):
    """
    Distortion of the cubic environment f(x) = a x^3, a uniform on [-1, 1].

    Experimental: checked against rho_mc only.
    """
    _check_domain(CUBIC, x, y)
    value = 0.5 * np.abs(np.asarray(x, dtype=float) ** 3
                         - np.asarray(y, dtype=float) ** 3)
    return float(value) if value.ndim == 0 else value


class Distortion:
    """
    A distortion measure rho(x, y) >= 0.

    Attributes:
        evaluator (callable): (x, y) -> distortion.
        kind (str): one of DISTORTION_KINDS.
    """

    def __init__(self, evaluator, kind):
        if kind not in DISTORTION_KINDS:
            raise ValueError(_('unknown distortion kind {}').format(kind))
        self.evaluator = evaluator
        self.kind = kind

    def __call__(self, x, y):
        return self.evaluator(x, y)

    def __repr__(self):
        return 'Distortion({!r})'.format(self.kind)


def closed_distortion(kind):
    """Distortion with the closed form of the environment kind."""
    if kind not in CLOSED_KINDS:
        raise ValueError(_('no closed form for {}').format(kind))
    return Distortion(lambda x, y: rho_closed(kind, x, y), CLOSED_KINDS[kind])


class FunctionFamily:
    """
    A finite family of functions with probabilities.

    Attributes:
        evaluate (callable): x -> values of all functions at x, shape
            (size,) + batch shape of x.
        size (int): number of functions.
        weights (numpy.ndarray): probabilities of the functions.
    """

    def __init__(self, evaluate, size, weights=None):
        if size < 1:
            raise ValueError(_('a function family cannot be empty'))
        if weights is None:
            weights = np.full(size, 1.0 / size)
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (size,) or not np.isclose(weights.sum(), 1.0):
            raise ValueError(_('function weights must be a distribution'))
        self.evaluate = evaluate
        self.size = size
        self.weights = weights

    def values(self, x):
        return np.asarray(self.evaluate(x), dtype=float)


def _scaled_family(coefficients, power):
    def evaluate(x):
        x = np.asarray(x, dtype=float)
        return coefficients.reshape((-1,) + (1,) * x.ndim) * x ** power
    return FunctionFamily(evaluate, coefficients.size)


def linear01_sampler(rng, size):
    """M functions f(x) = a x, a uniform on [0, 1]."""
    return _scaled_family(rng.uniform(0.0, 1.0, size), 1)


def quadratic11_sampler(rng, size):
    """M functions f(x) = a x^2, a uniform on [-1, 1]."""
    return _scaled_family(rng.uniform(-1.0, 1.0, size), 2)


def cubic_sampler(rng, size):
    """M functions f(x) = a x^3, a uniform on [-1, 1]."""
    return _scaled_family(rng.uniform(-1.0, 1.0, size), 3)


SAMPLERS = {LINEAR01: linear01_sampler, QUADRATIC11: quadratic11_sampler,
            CUBIC: cubic_sampler}


def classifier_sampler(env):
    """
    Sampler of the class indicator functions of a classifier environment.

    The functions take input indices, not input vectors.
    """
    def sampler(rng, size):
        tasks = env.tasks[rng.integers(0, env.n_tasks, size)]
        return FunctionFamily(lambda ids: tasks[:, np.asarray(ids, dtype=int)],
                              size)
    return sampler


def heads_sampler(mt):
    """
    Sampler returning the n trained heads g_i o f of a MultiTaskNet.

    The requested size is ignored: the family is always all the heads.
    """
    def evaluate(x):
        x = np.asarray(x, dtype=float)
        outputs = mt.head_outputs(np.atleast_2d(x))
        return outputs[:, 0] if x.ndim == 1 else outputs

    def sampler(rng, size):
        return FunctionFamily(evaluate, mt.n_heads)
    return sampler


def family_distortion(family, sigma=abs_difference, kind=MC_ESTIMATE):
    """
    Distortion E sigma(f(x), f(y)) over a function family.

    A single y (or x) is broadcast against a batch of the other argument.
    """
    def evaluator(x, y):
        fx, fy = family.values(x), family.values(y)
        while fx.ndim < fy.ndim:
            fx = fx[..., np.newaxis]
        while fy.ndim < fx.ndim:
            fy = fy[..., np.newaxis]
        value = np.tensordot(family.weights, sigma(fx, fy), axes=1)
        return float(value) if np.ndim(value) == 0 else value
    return Distortion(evaluator, kind)


def table_distortion(matrix):
    """
    Distortion between input indices given by a table.

    Raises:
        ValueError: when the table is not square, symmetric, nonnegative
            and zero on the diagonal.
    """
    matrix = np.array(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] \
            or not np.allclose(matrix, matrix.T) \
            or np.any(np.diag(matrix) != 0) or np.any(matrix < 0):
        raise ValueError(_('a distortion table must be square, symmetric, '
                           'nonnegative and zero on the diagonal'))
    matrix.setflags(write=False)

    def evaluator(x, y):
        value = matrix[np.asarray(x, dtype=int), np.asarray(y, dtype=int)]
        return float(value) if np.ndim(value) == 0 else value
    return Distortion(evaluator, TABLE)


def rho_mc(sampler, sigma, x, y, M, rng):
    """
    Monte Carlo estimate of rho(x, y) from M sampled functions.

    Args:
        sampler (callable): (rng, M) -> FunctionFamily.
        sigma (callable): the loss on function values.
        x: the first input (or a batch).
        y: the second input.
        M (int): number of functions.
        rng (numpy.random.Generator): the random stream.

    Returns:
        float or numpy.ndarray: the estimate.
    """
    if M < 1:
        raise ValueError(_('at least one function must be sampled'))
    return family_distortion(sampler(rng, M), sigma)(x, y)


def learned_distortion(mt, sigma=abs_difference):
    """Distortion estimated from the heads of a trained MultiTaskNet."""
    return family_distortion(heads_sampler(mt)(None, mt.n_heads), sigma,
                             LEARNER_ESTIMATE)


def rho_classifier(env, x, y):
    """
    Exact distortion of a classifier environment between input indices.

    With Q uniform over the H class indicators and sigma = |a - b| the
    distortion is 0 within a class, 2/H between classes and 1/H between a
    class and the junk set (inputs labelled -1).
    """
    labels = env.labels
    h = env.n_tasks
    a, b = labels[int(x)], labels[int(y)]
    if a == b:
        return 0.0
    if a < 0 or b < 0:
        return 1.0 / h
    return 2.0 / h


def rho_g(kind, v, w, alpha=1.0):
    """
    Distortion induced on the representation space by an output class.

    linear_cube: linear maps with weights uniform on [-alpha, alpha],
    giving alpha^2/3 times the squared Euclidean distance.
    threshold_ball: thresholded linear maps with weights uniform on the
    sphere, giving angle(v, w)/pi.

    Raises:
        ValueError: for unequal dimensions or a zero vector in
            threshold_ball.
    """
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if v.shape != w.shape:
        raise ValueError(_('vectors of different dimensions'))
    if kind == LINEAR_CUBE:
        return float(alpha ** 2 / 3.0 * np.sum((v - w) ** 2))
    if kind == THRESHOLD_BALL:
        norms = np.linalg.norm(v) * np.linalg.norm(w)
        if norms == 0:
            raise ValueError(_('the angle to a zero vector is undefined'))
        return float(np.arccos(np.clip(v @ w / norms, -1.0, 1.0)) / np.pi)
    raise ValueError(_('unknown output class {}').format(kind))


class Quantization:
    """
    Quantization points with the distortion used to choose among them.

    Attributes:
        points (numpy.ndarray): the points, shape (k,) or (k, d).
        distortion (Distortion): the distortion.
    """

    def __init__(self, points, distortion):
        points = np.array(points)
        if points.ndim == 0 or len(points) == 0:
            raise ValueError(_('at least one quantization point is needed'))
        points.setflags(write=False)
        self.points = points
        self.distortion = distortion

    @property
    def k(self):
        return len(self.points)

    def distortions(self, x):
        """rho(x, x_i) for every point, stacked along the first axis."""
        return np.stack([np.asarray(self.distortion(x, p), dtype=float)
                         for p in self.points])

    def assign(self, x):
        return quantize(self, x)[0]


def quantize(q, x):
    """
    Nearest quantization point of x under the distortion.

    Ties go to the lowest index.

    Args:
        q (Quantization): the quantization.
        x: an input or a batch of inputs.

    Returns:
        tuple: (index, distortion); arrays for a batch.
    """
    values = q.distortions(x)
    index = np.asarray(np.argmin(values, axis=0))
    best = np.take_along_axis(values, index[np.newaxis, ...], axis=0)[0]
    if index.ndim == 0:
        return int(index), float(best)
    return index, best


def uniform_grid(lo, hi, points=GRID_POINTS):
    """Evenly spaced inputs with equal weights."""
    return np.linspace(lo, hi, points)


def reconstruction_error(points, distortion, inputs, weights=None):
    """
    Expected distortion between an input and its quantization point.

    Args:
        points (array-like): the quantization points.
        distortion (Distortion): the distortion.
        inputs (numpy.ndarray): the probed inputs (a grid or a sample).
        weights (array-like): input probabilities, equal by default.

    Returns:
        float: the reconstruction error.
    """
    __, values = quantize(Quantization(points, distortion), np.asarray(inputs))
    values = np.atleast_1d(values)
    if weights is None:
        return float(np.mean(values))
    return float(np.asarray(weights, dtype=float) @ values)


def _point_matches(inputs, point):
    inputs = np.asarray(inputs)
    equal = inputs == np.asarray(point)
    return equal.reshape(len(inputs), -1).all(axis=1)


def induced_partition(points, distortion, inputs):
    """
    Partition of the inputs induced by the distortion.

    Every input goes to its nearest point (lowest index on ties), except
    that an input equal to a point goes to that point, so the partition is
    faithful even when the distortion is only a pseudo-metric.

    Returns:
        numpy.ndarray: point index of every input.
    """
    q = Quantization(points, distortion)
    partition = np.atleast_1d(q.assign(np.asarray(inputs))).copy()
    for i in reversed(range(q.k)):
        partition[_point_matches(inputs, q.points[i])] = i
    return partition


def function_reconstruction_error(points, partition, family, inputs,
                                  weights=None, sigma=abs_difference):
    """
    Error of approximating every function by a piecewise constant one.

    The approximation of f is f(x_i) on the cell of x_i; the error is
    the expected sigma between f and its approximation over inputs and
    functions.

    Raises:
        PartitionError: when a point is not among the inputs, or its input
            is not assigned to it, or the partition does not cover the
            inputs.
    """
    points = np.array(points)
    inputs = np.asarray(inputs)
    partition = np.asarray(partition, dtype=int)
    if partition.shape != (len(inputs),) or np.any(partition < 0) \
            or np.any(partition >= len(points)):
        raise PartitionError(_('the partition does not cover the inputs'))
    for i, point in enumerate(points):
        own = np.flatnonzero(_point_matches(inputs, point))
        if own.size == 0:
            raise PartitionError(_('point {} is not among the inputs')
                                 .format(i))
        if np.any(partition[own] != i):
            raise PartitionError(_('point {} is not in its own cell')
                                 .format(i))
    if weights is None:
        weights = np.full(len(inputs), 1.0 / len(inputs))
    fx = family.values(inputs)
    fhat = family.values(points)[:, partition]
    return float(family.weights @ sigma(fx, fhat) @ np.asarray(weights))


def _quad_sweep(x):
    k = x.size
    x[0] = x[1] / np.sqrt(7.0)
    for i in range(1, k - 1):
        a, b = x[i - 1] ** 2, x[i + 1] ** 2
        x[i] = np.sqrt(0.25 * (a + b) + np.sqrt(a * a + 6 * a * b + b * b)
                       / (4.0 * np.sqrt(2.0)))
    x[k - 1] = (4.0 + np.sqrt(2.0 + 7.0 * x[k - 2] ** 2)) / 7.0
    return x


def quad_fixed_point_sweeps(k):
    """
    Iterates of the quadratic environment's optimality relations.

    Starts from x_i = i/k and yields a copy of the points after each sweep;
    a sweep updates the points in index order, each from the newest values
    of its neighbours.
    """
    if k < 2:
        raise ValueError(_('at least two points are needed'))
    x = np.arange(1, k + 1) / k
    while True:
        yield _quad_sweep(x).copy()


def quad_solve(k, tol=1e-9, max_sweeps=10 ** 4):
    """
    Optimal quantization of the quadratic environment with the sweep count.

    Returns:
        tuple: (increasing points, sweeps).

    Raises:
        QuantizationConvergenceError: on a limit cycle of period 2 to 4 or
            when max_sweeps is reached.
    """
    if k < 2:
        raise ValueError(_('at least two points are needed'))
    previous = np.arange(1, k + 1) / k
    history = []
    for sweep, x in enumerate(quad_fixed_point_sweeps(k), start=1):
        if np.max(np.abs(x - previous)) < tol:
            return np.sort(x), sweep
        for period in CYCLE_PERIODS:
            if len(history) >= period and \
                    np.max(np.abs(x - history[-period])) < tol:
                print(_('Quantization solver for k={} cycles with period {}')
                      .format(k, period), file=sys.stderr)
                raise QuantizationConvergenceError(
                    _('limit cycle of period {}').format(period), x, period)
        if sweep >= max_sweeps:
            raise QuantizationConvergenceError(
                _('no convergence in {} sweeps').format(max_sweeps), x)
        history = (history + [x])[-max(CYCLE_PERIODS):]
        previous = x


def quad_optimal_quantization(k, tol=1e-9, max_sweeps=10 ** 4):
    """
    Optimal k-point quantization of [0, 1] for the quadratic environment.

    The distortion does not tell x from -x, so the optimal points of
    [-1, 1] are these points and their mirror images.

    Returns:
        numpy.ndarray: k increasing points in (0, 1).
    """
    return quad_solve(k, tol, max_sweeps)[0]


def rho_training_triples(inputs, distortion):
    """
    Training data for learning rho: every unordered pair with its value.

    Returns:
        tuple: (pairs, values); pairs has shape (N(N-1)/2, 2) and holds
            indices a < b into inputs.
    """
    inputs = np.asarray(inputs)
    a, b = np.triu_indices(len(inputs), 1)
    values = np.array([distortion(inputs[i], inputs[j])
                       for i, j in zip(a, b)], dtype=float)
    return np.column_stack([a, b]), values
