#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Multi-task representation learning with continuous networks.

A MultiTaskNet is a shared representation f followed by one output
network g_i per task. It is trained on an (n, m) sample by minimizing the
average over the n rows of the per-row mean squared errors. An example
of row i backpropagates through its own head g_i and then through f.

File:
    project: RepQuest
    name: repquest_replearn.py
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
from repquest_envs import NMSample, draw_nm_sample
from repquest_nnet import SIGMOID, InputError, backward, \
    batch_loss_and_gradient, forward_batch, forward_trace, random_network
from repquest_optim import HaltReason, LineSearchError, TrainPolicy, \
    cg_minimize, split_rng
from repquest_sweep import CellFailure, run_cells

_ = repquest_locale.setup_locale_translation_gettext()

SURFACE = 'surface'
REP_VS_FULL = 'rep_vs_full'
WITH_REPRESENTATION = 'Gof'
WITHOUT_REPRESENTATION = 'GoF'

# A representation is perfect when its true mse is below this level.
PERFECT_LEVEL = 0.01


class MultiTaskNet:
    """
    Shared representation f with heads g_1..g_n.

    Parameters are flattened as f's parameters followed by the heads'
    parameters in head order.
    """

    def __init__(self, f, heads):
        heads = tuple(heads)
        if not heads:
            raise ValueError(_('a multi-task net needs at least one head'))
        for head in heads:
            if head.in_dim != f.out_dim:
                raise ValueError(_('head input {} does not match the '
                                   'representation output {}')
                                 .format(head.in_dim, f.out_dim))
            if head.out_dim != 1:
                raise ValueError(_('heads must have one output node'))
        self.f = f
        self.heads = heads

    @property
    def n_heads(self):
        return len(self.heads)

    @property
    def n_parameters(self):
        return self.f.n_parameters + sum(h.n_parameters for h in self.heads)

    def parameters(self):
        return np.concatenate([self.f.parameters()]
                              + [h.parameters() for h in self.heads])

    def with_parameters(self, vector):
        vector = np.asarray(vector, dtype=float).reshape(-1)
        if vector.size != self.n_parameters:
            raise InputError(_('expected {} parameters, got {}')
                             .format(self.n_parameters, vector.size))
        start = self.f.n_parameters
        f = self.f.with_parameters(vector[:start])
        heads = []
        for head in self.heads:
            stop = start + head.n_parameters
            heads.append(head.with_parameters(vector[start:stop]))
            start = stop
        return MultiTaskNet(f, heads)

    def parameter_caps(self, weight_clip, threshold_clip):
        return np.concatenate(
            [self.f.parameter_caps(weight_clip, threshold_clip)]
            + [h.parameter_caps(weight_clip, threshold_clip)
               for h in self.heads])

    def head_outputs(self, inputs):
        """
        Outputs of every head on a batch.

        Args:
            inputs (array-like): shape (N, f.in_dim).

        Returns:
            numpy.ndarray: shape (n_heads, N).
        """
        codes = forward_batch(self.f, inputs)
        return np.array([forward_batch(h, codes)[:, 0] for h in self.heads])

    def __repr__(self):
        return 'MultiTaskNet(f={!r}, heads={})'.format(self.f, self.n_heads)


class Architecture:
    """
    Shapes of the representation and of the heads.

    Attributes:
        f_dims (tuple): node counts of f.
        head_dims (tuple): node counts of every head.
        activation (str): the activation of f and of the heads.
    """

    def __init__(self, f_dims, head_dims, activation=SIGMOID):
        self.f_dims = tuple(int(d) for d in f_dims)
        self.head_dims = tuple(int(d) for d in head_dims)
        self.activation = activation
        if self.f_dims[-1] != self.head_dims[0]:
            raise ValueError(_('f output {} does not match head input {}')
                             .format(self.f_dims[-1], self.head_dims[0]))
        if self.head_dims[-1] != 1:
            raise ValueError(_('heads must have one output node'))

    def build(self, n, rng, init_range=(-1.0, 1.0)):
        """A MultiTaskNet with n heads and uniform random parameters."""
        f = random_network(self.f_dims, self.activation, rng, init_range)
        heads = [random_network(self.head_dims, self.activation, rng,
                                init_range) for __ in range(n)]
        return MultiTaskNet(f, heads)

    def __repr__(self):
        return 'Architecture({}, {}, {!r})'.format(self.f_dims,
                                                   self.head_dims,
                                                   self.activation)


TRANSLATION_ARCH = Architecture((10, 3, 2), (2, 2, 1))
SYMMETRIC_ARCH = Architecture((10, 3), (3, 1))


class SurfaceCell:
    """
    One trained cell of a generalisation surface or curve.

    Attributes:
        n (int): tasks in the training sample.
        m (int): examples per task.
        replicate (int): replicate id.
        train_mse (float): final training objective.
        true_mse (float): exact true mean squared error.
        true_linf (float): exact largest absolute error.
        restarts (int): restarts used by the training.
        halt (str): the halt reason.
        mode (str): 'surface', or 'Gof' / 'GoF' in representation
            comparisons.
        task (int): the task of a comparison cell, None on a surface.
        rep_mse (float): true representation loss of f, nan if not measured.
        rep_linf (float): its largest error, nan if not measured.
    """

    def __init__(self, n, m, replicate, train_mse, true_mse, true_linf,
                 restarts, halt, mode=SURFACE, task=None, rep_mse=np.nan,
                 rep_linf=np.nan):
        if min(train_mse, true_mse, true_linf) < 0:
            raise ValueError(_('errors cannot be negative'))
        self.n = n
        self.m = m
        self.replicate = replicate
        self.train_mse = train_mse
        self.true_mse = true_mse
        self.true_linf = true_linf
        self.restarts = restarts
        self.halt = halt
        self.mode = mode
        self.task = task
        self.rep_mse = rep_mse
        self.rep_linf = rep_linf
        self.model = None

    def as_dict(self):
        return {'mode': self.mode, 'task': self.task, 'n': self.n,
                'm': self.m, 'replicate': self.replicate,
                'train_mse': self.train_mse, 'true_mse': self.true_mse,
                'true_linf': self.true_linf, 'restarts': self.restarts,
                'halt': self.halt, 'rep_mse': self.rep_mse,
                'rep_linf': self.rep_linf}


def multitask_objective(mt, z):
    """
    Multi-task mean squared error and its gradient.

    Args:
        mt (MultiTaskNet): the net; head i serves row i.
        z (NMSample): the sample.

    Returns:
        tuple: (loss, gradient of f, list of head gradients).

    Raises:
        InputError: when the row count differs from the head count.
    """
    n, m = z.n, z.m
    if n != mt.n_heads:
        raise InputError(_('{} rows for {} heads').format(n, mt.n_heads))
    trace_f = forward_trace(mt.f, z.inputs.reshape(n * m, -1))
    codes = trace_f[-1].reshape(n, m, -1)
    grad_codes = np.empty_like(codes)
    loss = 0.0
    grad_heads = []
    for i, head in enumerate(mt.heads):
        trace_g = forward_trace(head, codes[i])
        residual = trace_g[-1][:, 0] - z.targets[i]
        loss += residual @ residual / (n * m)
        grad_head, grad_codes[i] = backward(
            head, trace_g, (2.0 / (n * m)) * residual[:, np.newaxis])
        grad_heads.append(grad_head)
    grad_f, __ = backward(mt.f, trace_f, grad_codes.reshape(n * m, -1))
    return float(loss), grad_f, grad_heads


def empirical_error(mt, z):
    """The multi-task training error E(g∘f, z)."""
    return multitask_objective(mt, z)[0]


def sample_halt(policy, residuals):
    """
    The standard halting test of a training run.

    Args:
        policy (TrainPolicy): provides mse_halt and linf_halt.
        residuals (callable): params -> residuals on the training data.

    Returns:
        callable: (params, loss, gradient) -> HaltReason or None.
    """
    def halt(params, loss, gradient):
        if loss < policy.mse_halt:
            return HaltReason.MSE
        if np.max(np.abs(residuals(params))) < policy.linf_halt:
            return HaltReason.LINF
        return None
    return halt


def fit_multitask(mt, z, policy, rng):
    """
    Train all parameters of a MultiTaskNet on a sample.

    Args:
        mt (MultiTaskNet): the starting net.
        z (NMSample): the training sample.
        policy (TrainPolicy): the training policy.
        rng (numpy.random.Generator): the restart stream.

    Returns:
        tuple: (trained MultiTaskNet, TrainTrace).
    """
    def oracle(params):
        loss, grad_f, grad_heads = multitask_objective(
            mt.with_parameters(params), z)
        return loss, np.concatenate([grad_f] + grad_heads)

    def residuals(params):
        net = mt.with_parameters(params)
        codes = forward_batch(net.f, z.inputs.reshape(z.n * z.m, -1))
        codes = codes.reshape(z.n, z.m, -1)
        return np.array([forward_batch(h, codes[i])[:, 0]
                         for i, h in enumerate(net.heads)]) - z.targets

    params, trace = cg_minimize(
        oracle, mt.parameters(), policy, rng,
        halt=sample_halt(policy, residuals),
        caps=mt.parameter_caps(policy.weight_clip, policy.threshold_clip))
    return mt.with_parameters(params), trace


def fit_head(codes, targets, head_dims, policy, rng, weights=None,
             activation=SIGMOID):
    """
    Train one head over fixed representation codes.

    Args:
        codes (numpy.ndarray): f's outputs, shape (N, k).
        targets (numpy.ndarray): targets, shape (N,).
        head_dims (sequence): node counts of the head.
        policy (TrainPolicy): the training policy.
        rng (numpy.random.Generator): initialization and restart stream.
        weights (numpy.ndarray): example weights, the mean when None.
        activation (str): the head activation.

    Returns:
        tuple: (trained head Network, TrainTrace).
    """
    head = random_network(head_dims, activation, rng, policy.init_range)

    def oracle(params):
        loss, gradient, __ = batch_loss_and_gradient(
            head.with_parameters(params), codes, targets, weights)
        return loss, gradient

    def residuals(params):
        return forward_batch(head.with_parameters(params), codes)[:, 0] \
            - targets

    params, trace = cg_minimize(
        oracle, head.parameters(), policy, rng,
        halt=sample_halt(policy, residuals),
        caps=head.parameter_caps(policy.weight_clip, policy.threshold_clip))
    return head.with_parameters(params), trace


def train_representation(env, n, m, arch, policy, rng):
    """
    Draw an (n, m) sample and train a fresh MultiTaskNet on it.

    Args:
        env (Environment): the environment.
        n (int): tasks.
        m (int): examples per task.
        arch (Architecture): the shapes.
        policy (TrainPolicy): the training policy.
        rng (numpy.random.Generator): sample, initialization and restarts.

    Returns:
        tuple: (MultiTaskNet, TrainTrace, NMSample).
    """
    z = draw_nm_sample(env, n, m, rng)
    mt = arch.build(n, rng, policy.init_range)
    mt, trace = fit_multitask(mt, z, policy, rng)
    return mt, trace, z


def true_error(model, env, task_ids):
    """
    Exact true error by enumeration of the environment's inputs.

    Args:
        model (MultiTaskNet or Network): a multi-task net, whose head i is
            compared with task_ids[i], or a single network compared with
            every listed task.
        env (Environment): the environment.
        task_ids (sequence): task ids.

    Returns:
        tuple: (mse, linf); mse is the input-weighted mean squared error
            averaged over the tasks, linf the largest absolute error.

    Raises:
        ValueError: for an unknown task id or a wrong number of task ids.
    """
    task_ids = [int(t) for t in np.atleast_1d(task_ids)]
    tables = np.array([env.task_table(t) for t in task_ids])
    if isinstance(model, MultiTaskNet):
        if len(task_ids) != model.n_heads:
            raise ValueError(_('{} task ids for {} heads')
                             .format(len(task_ids), model.n_heads))
        outputs = model.head_outputs(env.inputs)
    else:
        outputs = np.tile(forward_batch(model, env.inputs)[:, 0],
                          (len(task_ids), 1))
    errors = outputs - tables
    return float(np.mean(errors ** 2 @ env.input_weights)), \
        float(np.max(np.abs(errors)))


def rep_true_loss(f, env, restarts=32, policy=None, rng=None, head_dims=None,
                  tasks=None, activation=SIGMOID):
    """
    True representation loss: best achievable head error using f.

    For every task a fresh head is trained over the frozen f on all the
    environment's inputs, keeping the best of `restarts` initializations.

    Args:
        f (Network): the representation.
        env (Environment): the environment.
        restarts (int): head initializations per task.
        policy (TrainPolicy): the training policy of the heads.
        rng (numpy.random.Generator): the random stream.
        head_dims (sequence): head shape, (f.out_dim, 1) by default.
        tasks (sequence): task ids, all tasks by default.
        activation (str): the head activation.

    Returns:
        tuple: (mse averaged over tasks and inputs, largest error).
    """
    if restarts < 1:
        raise ValueError(_('at least one restart is needed'))
    policy = (policy or TrainPolicy()).replace(max_restarts=0)
    rng = rng or np.random.default_rng(policy.master_seed)
    head_dims = head_dims or (f.out_dim, 1)
    tasks = range(env.n_tasks) if tasks is None else tasks
    entropy = int(rng.integers(2 ** 63))
    codes = forward_batch(f, env.inputs)
    weights = env.input_weights
    mse, linf = [], []
    for task in tasks:
        table = env.task_table(task)
        best = None
        for k in range(restarts):
            try:
                head, __ = fit_head(codes, table, head_dims, policy,
                                    split_rng(entropy, task, k), weights,
                                    activation)
            except LineSearchError as ex:
                print(_('Head {} for task {} failed: {}').format(k, task, ex),
                      file=sys.stderr)
                continue
            errors = forward_batch(head, codes)[:, 0] - table
            candidate = (float(errors ** 2 @ weights),
                         float(np.max(np.abs(errors))))
            if best is None or candidate[0] < best[0]:
                best = candidate
        if best is None:
            raise RuntimeError(_('no head could be trained for task {}')
                               .format(task))
        mse.append(best[0])
        linf.append(best[1])
    return float(np.mean(mse)), float(np.max(linf))


def rep_empirical_loss(f, z, restarts=1, policy=None, rng=None,
                       head_dims=None, activation=SIGMOID):
    """
    Empirical representation loss: best head error per row, averaged.

    Args:
        f (Network): the representation.
        z (NMSample): the sample.
        restarts (int): head initializations per row.
        policy (TrainPolicy): the training policy of the heads.
        rng (numpy.random.Generator): the random stream.
        head_dims (sequence): head shape, (f.out_dim, 1) by default.
        activation (str): the head activation.

    Returns:
        float: the loss.
    """
    policy = (policy or TrainPolicy()).replace(max_restarts=0)
    rng = rng or np.random.default_rng(policy.master_seed)
    head_dims = head_dims or (f.out_dim, 1)
    entropy = int(rng.integers(2 ** 63))
    losses = []
    for i in range(z.n):
        inputs, targets = z.row(i)
        codes = forward_batch(f, inputs)
        best = np.inf
        for k in range(restarts):
            head, __ = fit_head(codes, targets, head_dims, policy,
                                split_rng(entropy, i, k),
                                activation=activation)
            residual = forward_batch(head, codes)[:, 0] - targets
            best = min(best, float(np.mean(residual ** 2)))
        losses.append(best)
    return float(np.mean(losses))


def find_perfect_representation(env, arch, policy, rng, n=21, m=21,
                                attempts=10):
    """
    Train representations until one has true mse below PERFECT_LEVEL.

    Returns:
        Network: the representation f.

    Raises:
        RuntimeError: when no attempt produced a perfect representation.
    """
    for __ in range(attempts):
        mt, trace, z = train_representation(env, n, m, arch, policy, rng)
        mse, __ = true_error(mt, env, z.task_ids)
        if mse < PERFECT_LEVEL:
            return mt.f
    raise RuntimeError(_('no perfect representation in {} attempts')
                       .format(attempts))


class Grid:
    """
    The (n, m) grid of a sweep.

    Attributes:
        n_list (tuple): task counts.
        m_list (tuple): examples per task.
    """

    def __init__(self, n_list, m_list):
        self.n_list = tuple(int(n) for n in n_list)
        self.m_list = tuple(int(m) for m in m_list)
        if not self.n_list or not self.m_list:
            raise ValueError(_('the grid is empty'))
        if min(self.n_list + self.m_list) < 1:
            raise ValueError(_('grid values must be positive'))

    def __repr__(self):
        return 'Grid({}, {})'.format(self.n_list, self.m_list)


def _surface_job(env, arch, policy, entropy, rep_restarts):
    def job(key):
        n, m, replicate = key
        rng = split_rng(entropy, n, m, replicate)
        mt, trace, z = train_representation(env, n, m, arch, policy, rng)
        mse, linf = true_error(mt, env, z.task_ids)
        cell = SurfaceCell(n, m, replicate, trace.best_objective, mse, linf,
                           trace.restarts, trace.halt_reason.value)
        if rep_restarts and mse < PERFECT_LEVEL:
            cell.rep_mse, cell.rep_linf = rep_true_loss(
                mt.f, env, rep_restarts, policy, rng, arch.head_dims,
                activation=arch.activation)
        cell.model = mt
        return cell
    return job


def _comparison_job(env, arch, policy, entropy, perfect_f):
    single = Architecture(arch.f_dims, arch.head_dims, arch.activation)
    codes = forward_batch(perfect_f, env.inputs)

    def job(key):
        mode, task, m, replicate = key
        rng = split_rng(entropy, mode, task, m, replicate)
        z = NMSample(env, [task], env.draw_inputs(m, rng)[np.newaxis, :])
        if mode == 0:
            head, trace = fit_head(codes[z.input_ids[0]], z.targets[0],
                                   arch.head_dims, policy, rng,
                                   activation=arch.activation)
            model = MultiTaskNet(perfect_f, [head])
        else:
            model, trace = fit_multitask(
                single.build(1, rng, policy.init_range), z, policy, rng)
        mse, linf = true_error(model, env, [task])
        cell = SurfaceCell(1, m, replicate, trace.best_objective, mse, linf,
                           trace.restarts, trace.halt_reason.value,
                           mode=(WITH_REPRESENTATION,
                                 WITHOUT_REPRESENTATION)[mode],
                           task=task)
        cell.model = model
        return cell
    return job


def learning_curves(env, mode, grid, policy, replicates, rng,
                    arch=TRANSLATION_ARCH, threads=1, progress=None,
                    perfect_f=None, tasks=None, rep_restarts=0):
    """
    Generalisation surfaces and representation comparison curves.

    In 'surface' mode every (n, m, replicate) cell trains a fresh
    MultiTaskNet. In 'rep_vs_full' mode every (task, m, replicate) is
    learnt twice: a head over the frozen perfect_f, and a full network
    g∘F from scratch.

    Args:
        env (Environment): the environment.
        mode (str): 'surface' or 'rep_vs_full'.
        grid (Grid): the grid; rep_vs_full uses only its m_list.
        policy (TrainPolicy): the training policy.
        replicates (int): replicates per cell.
        rng (numpy.random.Generator): the master stream.
        arch (Architecture): network shapes.
        threads (int): worker threads.
        progress (progress.Progress): an optional Progress object.
        perfect_f (Network): representation for rep_vs_full; found by
            find_perfect_representation() when None.
        tasks (sequence): tasks compared in rep_vs_full, all by default.
        rep_restarts (int): when positive, surface cells with true mse
            below PERFECT_LEVEL also get their true representation loss.

    Returns:
        list: SurfaceCell or CellFailure per cell, ordered by cell key.
    """
    if replicates < 1:
        raise ValueError(_('at least one replicate is needed'))
    entropy = int(rng.integers(2 ** 63))
    if mode == SURFACE:
        keys = [(n, m, r) for n in grid.n_list for m in grid.m_list
                for r in range(replicates)]
        job = _surface_job(env, arch, policy, entropy, rep_restarts)
    elif mode == REP_VS_FULL:
        if perfect_f is None:
            perfect_f = find_perfect_representation(env, arch, policy, rng)
        tasks = range(env.n_tasks) if tasks is None else tasks
        keys = [(mode_id, t, m, r) for mode_id in (0, 1) for t in tasks
                for m in grid.m_list for r in range(replicates)]
        job = _comparison_job(env, arch, policy, entropy, perfect_f)
    else:
        raise ValueError(_('unknown mode {}').format(mode))
    return [result for __, result in run_cells(keys, job, threads, progress)]


def cells_frame(cells):
    """Successful cells as a pandas.DataFrame, in cell order."""
    return pd.DataFrame([cell.as_dict() for cell in cells
                         if not isinstance(cell, CellFailure)])


def curve_summary(cells):
    """
    Mean and standard error of the true error per (mode, task, m).

    Rows with task 'all' average over the tasks.

    Returns:
        pandas.DataFrame: columns mode, task, m, mean_true_error, stderr.
    """
    frame = cells_frame(cells)
    columns = ['mode', 'task', 'm', 'mean_true_error', 'stderr']
    if frame.empty:
        return pd.DataFrame(columns=columns)
    per_task = frame.groupby(['mode', 'task', 'm'], sort=True)['true_mse'] \
        .agg(['mean', 'sem']).reset_index()
    overall = frame.groupby(['mode', 'm'], sort=True)['true_mse'] \
        .agg(['mean', 'sem']).reset_index()
    overall.insert(1, 'task', 'all')
    per_task['task'] = per_task['task'].astype(int).astype(str)
    summary = pd.concat([per_task, overall], ignore_index=True)
    summary.columns = columns
    return summary


def surface_summary(cells):
    """
    Replicate means of a surface per (n, m).

    Returns:
        pandas.DataFrame: columns n, m, replicates, train_mse, true_mse,
            true_mse_stderr, true_linf, restarts.
    """
    frame = cells_frame(cells)
    columns = ['n', 'm', 'replicates', 'train_mse', 'true_mse',
               'true_mse_stderr', 'true_linf', 'restarts']
    if frame.empty:
        return pd.DataFrame(columns=columns)
    grouped = frame.groupby(['n', 'm'], sort=True)
    summary = pd.DataFrame({
        'replicates': grouped['true_mse'].count(),
        'train_mse': grouped['train_mse'].mean(),
        'true_mse': grouped['true_mse'].mean(),
        'true_mse_stderr': grouped['true_mse'].sem(),
        'true_linf': grouped['true_linf'].mean(),
        'restarts': grouped['restarts'].mean()}).reset_index()
    return summary[columns]
