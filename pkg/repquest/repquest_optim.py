#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Conjugate-gradient training with exact line search.

The minimizer follows the training regime used for the representation
experiments: Polak-Ribière conjugate gradients, a line search that
brackets the minimum and refines it by golden section, clipping of
parameters at their caps, restarts from fresh random parameters when the
objective stops improving, and stringent halting criteria.

File:
    project: RepQuest
    name: repquest_optim.py
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

from enum import Enum

import numpy as np
from scipy.optimize import minimize_scalar

import repquest_locale

_ = repquest_locale.setup_locale_translation_gettext()

GOLDEN_GROWTH = (1.0 + 5.0 ** 0.5) / 2.0
SHRINK_FACTOR = 0.1
MAX_SHRINKS = 40
MAX_EXPANSIONS = 200


class LineSearchError(RuntimeError):
    """The objective returned a non-finite value during a line search."""


class HaltReason(Enum):
    MSE = 'mse'
    LINF = 'linf'
    RESTARTS_EXHAUSTED = 'plateau-restart-exhausted'
    CONVERGED = 'converged'


class TrainPolicy:
    """
    Training policy: halting criteria, clipping caps and restarts.

    Attributes:
        mse_halt (float): halt when the objective falls below this value.
        linf_halt (float): halt when the largest absolute error falls
            below this value.
        plateau_window (int): iterations over which improvement is measured.
        plateau_rel_improvement (float): relative improvement over the
            window below which the run is declared stuck and restarted.
        weight_clip (float): cap for the magnitude of weights.
        threshold_clip (float): cap for the magnitude of thresholds.
        max_restarts (int): restarts allowed after the initial run.
        init_range (tuple): (lo, hi) for uniform parameter initialization.
        master_seed (int): the seed all random streams derive from.
        max_iterations (int): CG iterations in one run; running out counts
            as a plateau.
    """

    FIELDS = ('mse_halt', 'linf_halt', 'plateau_window',
              'plateau_rel_improvement', 'weight_clip', 'threshold_clip',
              'max_restarts', 'init_range', 'master_seed', 'max_iterations')

    def __init__(self, mse_halt=1e-6, linf_halt=0.01, plateau_window=5,
                 plateau_rel_improvement=1e-4, weight_clip=20.0,
                 threshold_clip=80.0, max_restarts=50,
                 init_range=(-1.0, 1.0), master_seed=0, max_iterations=1000):
        self.mse_halt = float(mse_halt)
        self.linf_halt = float(linf_halt)
        self.plateau_window = int(plateau_window)
        self.plateau_rel_improvement = float(plateau_rel_improvement)
        self.weight_clip = float(weight_clip)
        self.threshold_clip = float(threshold_clip)
        self.max_restarts = int(max_restarts)
        self.init_range = (float(init_range[0]), float(init_range[1]))
        self.master_seed = int(master_seed)
        self.max_iterations = int(max_iterations)
        if min(self.mse_halt, self.linf_halt, self.plateau_rel_improvement,
               self.weight_clip, self.threshold_clip) <= 0:
            raise ValueError(_('tolerances and caps must be positive'))
        if self.plateau_window < 1 or self.max_iterations < 1:
            raise ValueError(_('plateau window and iteration limit must be '
                               'positive'))
        if self.max_restarts < 0:
            raise ValueError(_('max_restarts cannot be negative'))
        if not self.init_range[0] < self.init_range[1]:
            raise ValueError(_('init_range needs lo < hi'))
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError(_('master_seed must be an unsigned 64-bit '
                               'integer'))

    def replace(self, **changes):
        """A copy of the policy with some fields changed."""
        fields = {name: getattr(self, name) for name in self.FIELDS}
        fields.update(changes)
        return TrainPolicy(**fields)

    def __eq__(self, other):
        if not isinstance(other, TrainPolicy):
            return NotImplemented
        return all(getattr(self, name) == getattr(other, name)
                   for name in self.FIELDS)

    def __repr__(self):
        return 'TrainPolicy({})'.format(', '.join(
            '{}={!r}'.format(name, getattr(self, name))
            for name in self.FIELDS))


class TrainTrace:
    """
    What happened during a minimization.

    Attributes:
        objective (list): objective value of every accepted iterate.
        run (list): the run (0 = initial, then one per restart) each
            objective value belongs to.
        clipped (list): boolean masks of the frozen parameters, one per
            accepted iterate.
        restarts (int): number of restarts.
        halt_reason (HaltReason): why the minimization stopped.
        best_objective (float): objective of the returned parameters.
    """

    def __init__(self):
        self.objective = []
        self.run = []
        self.clipped = []
        self.restarts = 0
        self.halt_reason = None
        self.best_objective = float('nan')

    def record(self, value, frozen):
        self.objective.append(float(value))
        self.run.append(self.restarts)
        self.clipped.append(np.array(frozen, dtype=bool))

    def runs(self):
        """Objective values split into runs."""
        result = [[] for __ in range(self.restarts + 1)]
        for value, run in zip(self.objective, self.run):
            result[run].append(value)
        return result

    @property
    def iterations(self):
        return len(self.objective)


def split_rng(master_seed, *key):
    """
    Random stream for a job identified by a key.

    The stream is numpy.random.SeedSequence(master_seed, spawn_key=key),
    so equal keys always give equal streams and distinct keys give
    independent streams, whatever order the jobs run in.

    Args:
        master_seed (int): nonnegative seed.
        *key (int): nonnegative integers identifying the job.

    Returns:
        numpy.random.Generator: the stream.
    """
    sequence = np.random.SeedSequence(int(master_seed),
                                      spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(sequence)


def line_search(phi, hint=1.0, growth=GOLDEN_GROWTH, tol=1e-8):
    """
    Minimize phi(t) over t >= 0.

    The minimum is first bracketed, by shrinking the hint while phi(hint)
    does not improve on phi(0) or by growing the step while phi keeps
    decreasing, and then refined by golden section.

    Args:
        phi (callable): the objective along the ray.
        hint (float): the first trial step, positive.
        growth (float): the growth factor of the bracketing steps.
        tol (float): relative width of the final bracket.

    Returns:
        float: the step; 0.0 when no step improves on phi(0).

    Raises:
        LineSearchError: when phi returns a non-finite value.
    """
    if not hint > 0:
        raise ValueError(_('the step hint must be positive'))

    def evaluate(t):
        value = float(phi(t))
        if not np.isfinite(value):
            raise LineSearchError(_('objective is {} at step {}')
                                  .format(value, t))
        return value

    f0 = evaluate(0.0)
    a, b, fb = 0.0, hint, evaluate(hint)
    if fb >= f0:
        c = b
        for __ in range(MAX_SHRINKS):
            b = c * SHRINK_FACTOR
            fb = evaluate(b)
            if fb < f0:
                break
            c = b
        else:
            return 0.0
    else:
        c = b + growth * (b - a)
        fc = evaluate(c)
        expansions = 0
        while fc < fb:
            if expansions == MAX_EXPANSIONS:
                return c
            a, b, fb = b, c, fc
            c = b + growth * (b - a)
            fc = evaluate(c)
            expansions += 1
        if fc == fb:
            return b
    result = minimize_scalar(evaluate, bracket=(a, b, c), method='golden',
                             tol=tol)
    step = float(result.x)
    if evaluate(step) > fb:
        return b
    return step


def _clamp(params, caps):
    if caps is None:
        return params
    return np.clip(params, -caps, caps)


def _is_plateau(history, policy):
    if len(history) <= policy.plateau_window:
        return False
    old = history[-1 - policy.plateau_window]
    improvement = old - history[-1]
    if old == 0:
        return improvement < policy.plateau_rel_improvement
    return improvement / abs(old) < policy.plateau_rel_improvement


def _checked(oracle, params):
    loss, gradient = oracle(params)
    loss = float(loss)
    gradient = np.asarray(gradient, dtype=float)
    if not np.isfinite(loss) or not np.all(np.isfinite(gradient)):
        raise LineSearchError(_('the objective is not finite'))
    return loss, gradient


def _descend(oracle, params, caps, policy, halt, trace):
    # One CG run; returns (params, loss, halt reason or None on a plateau).
    x = _clamp(np.array(params, dtype=float), caps)
    frozen = np.zeros(x.size, dtype=bool) if caps is None \
        else np.abs(x) >= caps
    loss, gradient = _checked(oracle, x)
    trace.record(loss, frozen)
    reason = halt(x, loss, gradient)
    if reason is not None:
        return x, loss, reason

    history = [loss]
    direction = None
    previous = None
    since_reset = 0
    step_hint = None
    reset = True
    for __ in range(policy.max_iterations):
        # Reintroduce frozen parameters whose downhill step shrinks |w|.
        released = frozen & (gradient * x > 0)
        if released.any():
            frozen = frozen & ~released
            reset = True
        free = np.where(frozen, 0.0, gradient)
        if reset or since_reset >= x.size or not previous @ previous > 0:
            direction = -free
            since_reset = 0
        else:
            beta = free @ (free - previous) / (previous @ previous)
            if not beta > 0:
                direction = -free
                since_reset = 0
            else:
                direction = np.where(frozen, 0.0, beta * direction - free)
        if not direction @ free < 0:
            direction = -free
            since_reset = 0
        norm = np.linalg.norm(direction)
        if norm == 0:
            break
        if step_hint is None:
            step_hint = min(1.0, 1.0 / norm)

        def phi(t):
            return oracle(_clamp(x + t * direction, caps))[0]

        step = line_search(phi, hint=step_hint)
        if step == 0:
            break
        step_hint = step
        x = _clamp(x + step * direction, caps)
        loss, new_gradient = _checked(oracle, x)
        reset = False
        if caps is not None:
            hit = ~frozen & (np.abs(x) >= caps)
            if hit.any():
                frozen = frozen | hit
                reset = True
        previous, gradient = free, new_gradient
        since_reset += 1
        trace.record(loss, frozen)
        reason = halt(x, loss, gradient)
        if reason is not None:
            return x, loss, reason
        history.append(loss)
        if _is_plateau(history, policy):
            break
    return x, loss, None


def cg_minimize(oracle, initial, policy, rng, halt=None, caps=None):
    """
    Minimize with restarted Polak-Ribière conjugate gradients.

    Note:
        A parameter that reaches its cap is frozen there and excluded from
        the search subspace until the gradient shows that the downhill step
        would reduce its magnitude.

    Args:
        oracle (callable): params -> (loss, gradient).
        initial (array-like): starting parameters.
        policy (TrainPolicy): halting, plateau and restart settings.
        rng (numpy.random.Generator): the stream used for restarts.
        halt (callable): (params, loss, gradient) -> HaltReason or None;
            by default the run halts when loss < policy.mse_halt.
        caps (numpy.ndarray): per-parameter clipping caps, None for none.

    Returns:
        tuple: (params, TrainTrace). When the restart budget is exhausted
            the best parameters found so far are returned.
    """
    if halt is None:
        def halt(params, loss, gradient):
            return HaltReason.MSE if loss < policy.mse_halt else None
    if caps is not None:
        caps = np.asarray(caps, dtype=float)
    trace = TrainTrace()
    params = np.array(initial, dtype=float)
    best_loss, best_params = np.inf, params
    lo, hi = policy.init_range
    while True:
        params, loss, reason = _descend(oracle, params, caps, policy, halt,
                                        trace)
        if reason is not None:
            trace.halt_reason = reason
            trace.best_objective = loss
            return params, trace
        if loss < best_loss:
            best_loss, best_params = loss, params
        if trace.restarts >= policy.max_restarts:
            trace.halt_reason = HaltReason.RESTARTS_EXHAUSTED
            trace.best_objective = best_loss
            return best_params, trace
        trace.restarts += 1
        params = rng.uniform(lo, hi, params.size)
