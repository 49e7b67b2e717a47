#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
The experiments run from the command line.

Every experiment is a class with a hard-coded procedure; the module keeps
one instance of each in ALL_EXPERIMENTS. Calling an experiment with a
configuration writes its CSV tables through an Output object and returns
the number of cells that failed.

File:
    project: RepQuest
    name: repquest_experiments.py
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
from abc import ABC, abstractmethod

import numpy as np

import repquest_locale
from repquest_binexp import binary_curves, binary_experiment
from repquest_bounds import BoundInputs, deviation_bound, multitask_m, \
    representation_impedance, transfer_nm
from repquest_cdm import CUBIC, DOMAINS, LINEAR01, QUADRATIC11, SAMPLERS, \
    QuantizationConvergenceError, abs_difference, classifier_sampler, \
    closed_distortion, quad_solve, reconstruction_error, rho_classifier, \
    rho_closed, rho_mc, uniform_grid
from repquest_config import ConfigError
from repquest_directrep import DIRECT_POLICY, direct_learning_curve, \
    direct_summary
from repquest_envs import BINARY5X3, CLASSIFIER, SYMMETRIC10, TRANSLATION10, \
    build_env
from repquest_optim import TrainPolicy, split_rng
from repquest_replearn import REP_VS_FULL, SURFACE, SYMMETRIC_ARCH, \
    TRANSLATION_ARCH, Grid, curve_summary, find_perfect_representation, \
    learning_curves, surface_summary
from repquest_sweep import CellFailure, run_cells

_ = repquest_locale.setup_locale_translation_gettext()

STATUS_COLUMNS = ('status', 'message')
OK = 'ok'
FAILED = 'failed'

DIRECT_N_VALUES = tuple(range(2, 41, 2))


def _status_rows(results, key_columns, columns):
    """
    Table rows of cell results with their status.

    A result is a dict or an object with as_dict(); a CellFailure becomes
    a row with only its key, status 'failed' and the message.
    """
    rows = []
    for result in results:
        if isinstance(result, CellFailure):
            values = dict(zip(key_columns, result.key))
            values.update(status=FAILED, message=result.message)
        else:
            values = result.as_dict() if hasattr(result, 'as_dict') \
                else dict(result)
            values.update(status=OK, message='')
        rows.append([values.get(column) for column in columns])
    return rows


def _failure_count(results):
    return sum(1 for result in results if isinstance(result, CellFailure))


class Experiment(ABC):
    """
    Abstract experiment.

    Attributes:
        name (str): the subcommand and configuration name.
        description (str): one line for the command line help.
    """

    @abstractmethod
    def __init__(self):
        self.name = 'experiment'
        self.description = _('experiment')

    def __str__(self):
        return self.name

    @abstractmethod
    def __call__(self, config, output, progress=None):
        """
        Run the experiment.

        Args:
            config (ExperimentConfig): the configuration.
            output (Output): where the tables go.
            progress (progress.Progress): an optional Progress object.

        Returns:
            int: the number of failed cells.
        """
        return 0


class BinaryExperiment(Experiment):
    """
    Zero-loss binary representations learning new tasks.

    The environment's generating network is chosen by the master seed;
    config.replicates is the number of samples per (n, m).
    """

    def __init__(self):
        self.name = 'binexp'
        self.description = _('exhaustive search over binary networks')

    def __call__(self, config, output, progress=None):
        env = build_env(BINARY5X3, seed=config.seed)
        rng = np.random.default_rng(config.seed)
        records = binary_experiment(
            env, config.n_list, config.m_list, config.option('m1_list'),
            config.replicates, config.option('new_tasks'),
            config.option('cap'), rng, progress)
        output.write_frame('binexp_records.csv', records)
        output.write_frame('binexp_curves.csv', binary_curves(records))
        return 0


class SurfaceExperiment(Experiment):
    """Generalisation surface of multi-task training over an (n, m) grid."""

    COLUMNS = ('n', 'm', 'replicate', 'train_mse', 'true_mse', 'true_linf',
               'restarts', 'halt', 'rep_mse', 'rep_linf') + STATUS_COLUMNS

    @abstractmethod
    def __init__(self):
        self.name = 'surface'
        self.description = _('generalisation surface')
        self.kind = TRANSLATION10
        self.arch = TRANSLATION_ARCH

    def __call__(self, config, output, progress=None):
        env = build_env(self.kind)
        policy = config.train_policy(TrainPolicy())
        rep_restarts = config.option('rep_restarts') \
            if config.option('rep_check') else 0
        cells = learning_curves(
            env, SURFACE, Grid(config.n_list, config.m_list), policy,
            config.replicates, np.random.default_rng(config.seed), self.arch,
            config.threads, progress, rep_restarts=rep_restarts)
        output.write_csv('surface.csv', self.COLUMNS, _status_rows(
            cells, ('n', 'm', 'replicate'), self.COLUMNS))
        output.write_frame('surface_mean.csv', surface_summary(cells))
        for cell in cells:
            if not isinstance(cell, CellFailure):
                output.save_net('surface_n{}_m{}_r{}.net'.format(
                    cell.n, cell.m, cell.replicate), cell.model)
        return _failure_count(cells)


class TranslationExperiment(SurfaceExperiment):
    def __init__(self):
        self.name = 'translation'
        self.description = _('surface of the translation invariant '
                             'environment')
        self.kind = TRANSLATION10
        self.arch = TRANSLATION_ARCH


class SymmetricExperiment(SurfaceExperiment):
    def __init__(self):
        self.name = 'symmetric'
        self.description = _('surface of the symmetric function environment')
        self.kind = SYMMETRIC10
        self.arch = SYMMETRIC_ARCH


class RepresentationComparison(Experiment):
    """
    New tasks learnt with a perfect representation against from scratch.

    A perfect representation is trained first; then each task is learnt
    once as a head over it and once as a full network.
    """

    COLUMNS = ('mode', 'task', 'm', 'replicate', 'train_mse', 'true_mse',
               'true_linf', 'restarts', 'halt') + STATUS_COLUMNS

    def __init__(self):
        self.name = 'rep_vs_full'
        self.description = _('learning with a representation against '
                             'learning without one')

    def __call__(self, config, output, progress=None):
        env = build_env(TRANSLATION10)
        policy = config.train_policy(TrainPolicy())
        rng = np.random.default_rng(config.seed)
        try:
            perfect_f = find_perfect_representation(
                env, TRANSLATION_ARCH, policy, rng,
                config.option('perfect_n'), config.option('perfect_m'),
                config.option('perfect_attempts'))
        except RuntimeError as ex:
            print(_('Unable to run {}: {}').format(self.name, ex),
                  file=sys.stderr)
            output.write_csv('rep_vs_full_records.csv', self.COLUMNS,
                             [[None] * (len(self.COLUMNS) - 2)
                              + [FAILED, str(ex)]])
            return 1
        output.save_net('perfect_f.net', perfect_f)
        cells = learning_curves(
            env, REP_VS_FULL, Grid((1,), config.m_list), policy,
            config.replicates, rng, TRANSLATION_ARCH, config.threads,
            progress, perfect_f=perfect_f)
        output.write_csv('rep_vs_full_records.csv', self.COLUMNS,
                         _status_rows(cells, ('mode', 'task', 'm',
                                              'replicate'), self.COLUMNS))
        output.write_frame('curve.csv', curve_summary(cells))
        return _failure_count(cells)


class DirectExperiment(Experiment):
    """Metric matching representations of a classifier environment."""

    COLUMNS = ('N', 'replicate', 'misclassified', 'within_variance',
               'restarts', 'halt') + STATUS_COLUMNS

    @abstractmethod
    def __init__(self):
        self.name = 'direct'
        self.description = _('direct representation learning')
        self.pixels = 10
        self.objects = 4

    def __call__(self, config, output, progress=None):
        env = build_env(CLASSIFIER, pixels=self.pixels, objects=self.objects)
        policy = config.train_policy(DIRECT_POLICY)
        pairs = direct_learning_curve(
            env, config.option('n_values', DIRECT_N_VALUES),
            config.replicates, np.random.default_rng(config.seed),
            config.option('temperature'), policy, config.threads, progress)
        results = [result for __, result in pairs]
        output.write_csv('directrep.csv', self.COLUMNS, _status_rows(
            results, ('N', 'replicate'), self.COLUMNS))
        output.write_frame('directrep_mean.csv', direct_summary(pairs))
        for result in results:
            if not isinstance(result, CellFailure):
                output.save_net('direct_N{}_r{}.net'.format(
                    result['N'], result['replicate']), result['model'])
        return _failure_count(results)


class DirectExperimentOne(DirectExperiment):
    def __init__(self):
        self.name = 'directrep1'
        self.description = _('metric matching on a 10-pixel retina with '
                             '4 objects')
        self.pixels = 10
        self.objects = 4


class DirectExperimentTwo(DirectExperiment):
    def __init__(self):
        self.name = 'directrep2'
        self.description = _('metric matching on a 30-pixel retina with '
                             '10 objects')
        self.pixels = 30
        self.objects = 10


class QuadraticQuantization(Experiment):
    """Optimal quantization points of the quadratic environment."""

    def __init__(self):
        self.name = 'quantize_quadratic'
        self.description = _('optimal quantization of the quadratic '
                             'environment')

    def __call__(self, config, output, progress=None):
        k = config.option('k')
        if k < 2:
            raise ConfigError('k', _('at least two points are needed'))
        header = ['k', 'sweeps'] + ['x_{}'.format(i + 1) for i in range(k)] \
            + ['reconstruction_error', 'status', 'message']
        try:
            points, sweeps = quad_solve(k)
        except QuantizationConvergenceError as ex:
            output.write_csv('quantization.csv', header, [
                [k, None] + list(ex.points) + [None, FAILED, str(ex)]])
            return 1
        error = reconstruction_error(
            points, closed_distortion(QUADRATIC11),
            uniform_grid(*DOMAINS[QUADRATIC11],
                         config.option('grid_points')))
        output.write_csv('quantization.csv', header, [
            [k, sweeps] + list(points) + [error, OK, '']])
        return 0


class RhoValidation(Experiment):
    """Monte Carlo distortion estimates against the closed forms."""

    COLUMNS = ('kind', 'x', 'y', 'closed', 'estimate', 'abs_error',
               'M') + STATUS_COLUMNS
    KINDS = (LINEAR01, QUADRATIC11, CUBIC, CLASSIFIER)

    def __init__(self):
        self.name = 'rho_validate'
        self.description = _('distortion estimates against closed forms')

    def __call__(self, config, output, progress=None):
        M = config.option('mc_samples')
        env = build_env(CLASSIFIER)
        samplers = dict(SAMPLERS)
        samplers[CLASSIFIER] = classifier_sampler(env)

        def job(key):
            kind_id, pair = key
            kind = self.KINDS[kind_id]
            rng = split_rng(config.seed, kind_id, pair)
            if kind == CLASSIFIER:
                x, y = (int(v) for v in rng.integers(0, env.n_inputs, 2))
                closed = rho_classifier(env, x, y)
            else:
                x, y = rng.uniform(*DOMAINS[kind], size=2)
                closed = rho_closed(kind, x, y)
            estimate = rho_mc(samplers[kind], abs_difference, x, y, M, rng)
            return {'kind': kind, 'x': x, 'y': y, 'closed': closed,
                    'estimate': estimate,
                    'abs_error': abs(estimate - closed), 'M': M}

        keys = [(kind_id, pair) for kind_id in range(len(self.KINDS))
                for pair in range(config.option('pairs'))]
        results = [result for __, result in
                   run_cells(keys, job, config.threads, progress)]
        rows = _status_rows(results, ('kind', 'pair'), self.COLUMNS)
        for row, result in zip(rows, results):
            if isinstance(result, CellFailure):
                row[0] = self.KINDS[result.key[0]]
        output.write_csv('rho_validate.csv', self.COLUMNS, rows)
        return _failure_count(results)


class BoundsSweep(Experiment):
    """Sample size bounds as the number of tasks grows."""

    COLUMNS = ('n', 'm', 'm_multitask', 'n_req', 'm_req', 'impedance',
               'deviation')

    def __init__(self):
        self.name = 'bounds_sweep'
        self.description = _('sample size bounds against the number of '
                             'tasks')

    def __call__(self, config, output, progress=None):
        lnC_G = config.option('lnC_G')
        lnCstar_F = config.option('lnCstar_F')
        try:
            base = BoundInputs(M=config.option('bound_M'),
                               alpha=config.option('alpha'),
                               nu=config.option('nu'),
                               delta=config.option('delta'),
                               lnC_G=lnC_G, lnCstar_F=lnCstar_F)
        except ValueError as ex:
            raise ConfigError('bounds', str(ex)) from None
        rows = []
        for n in config.n_list:
            b = base.replace(n=n)
            n_req, m_req = transfer_nm(b)
            impedance = representation_impedance(lnC_G, lnCstar_F, n) \
                if lnCstar_F > 0 else None
            for m in config.m_list:
                rows.append([n, m, multitask_m(b), n_req, m_req, impedance,
                             deviation_bound(b.replace(m=m),
                                             n * lnC_G + lnCstar_F)])
        output.write_csv('bounds.csv', self.COLUMNS, rows)
        return 0


ALL_EXPERIMENTS = (BinaryExperiment(),
                   TranslationExperiment(),
                   SymmetricExperiment(),
                   RepresentationComparison(),
                   DirectExperimentOne(),
                   DirectExperimentTwo(),
                   QuadraticQuantization(),
                   RhoValidation(),
                   BoundsSweep())


def experiment_by_name(name):
    """
    The experiment with the given name.

    Raises:
        ValueError: for an unknown name.
    """
    for experiment in ALL_EXPERIMENTS:
        if experiment.name == name:
            return experiment
    raise ValueError(_('unknown experiment {}').format(name))
