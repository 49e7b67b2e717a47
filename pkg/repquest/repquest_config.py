#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Experiment configuration.

A configuration file is a flat list of ``key = value`` lines; ``#`` starts
a comment and lists are comma separated::

    experiment = translation
    seed = 1234
    n_list = 1, 5, 9
    m_list = 1, 41, 81
    replicates = 10

Values given on the command line override the file. The number of
threads comes from the command line, then the file, then the
REPNET_THREADS environment variable, and is 1 otherwise.

File:
    project: RepQuest
    name: repquest_config.py
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

import math
import os

import repquest_locale

_ = repquest_locale.setup_locale_translation_gettext()

THREADS_VARIABLE = 'REPNET_THREADS'

EXPERIMENTS = ('binexp', 'translation', 'symmetric', 'rep_vs_full',
               'directrep1', 'directrep2', 'quantize_quadratic',
               'rho_validate', 'bounds_sweep')

EXPERIMENT_DEFAULTS = {
    'binexp': ((1, 2, 3, 4, 5, 6, 7, 8, 9), (2, 6, 10, 14, 18, 22), 10),
    'translation': (tuple(range(1, 22, 4)), tuple(range(1, 152, 10)), 3),
    'symmetric': (tuple(range(1, 22, 4)), tuple(range(1, 172, 10)), 3),
    'rep_vs_full': ((1,), tuple(range(1, 82, 10)), 32),
    'directrep1': ((1,), (1,), 20),
    'directrep2': ((1,), (1,), 24),
    'quantize_quadratic': ((1,), (1,), 1),
    'rho_validate': ((1,), (1,), 1),
    'bounds_sweep': ((1, 2, 4, 8, 16, 32, 64), (1000,), 1),
}

POLICY_KEYS = ('mse_halt', 'linf_halt', 'plateau_window',
               'plateau_rel_improvement', 'weight_clip', 'threshold_clip',
               'max_restarts', 'init_lo', 'init_hi', 'max_iterations')


class ConfigError(ValueError):
    """
    Invalid configuration.

    Attributes:
        key (str): the offending key, None when the line has no key.
        line (int): line of the configuration file, None for values that
            did not come from a file.
    """

    def __init__(self, key, message, line=None):
        where = _('line {}: ').format(line) if line is not None else ''
        what = '{}: '.format(key) if key else ''
        super().__init__(where + what + message)
        self.key = key
        self.line = line


def _unsigned(text):
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise ValueError(_('must be an unsigned 64-bit integer'))
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise ValueError(_('must be a positive integer'))
    return value


def _nonnegative_int(text):
    value = int(text)
    if value < 0:
        raise ValueError(_('cannot be negative'))
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise ValueError(_('must be positive'))
    return value


def _nonnegative_float(text):
    value = float(text)
    if not 0 <= value < math.inf:
        raise ValueError(_('must be finite and nonnegative'))
    return value


def _open_unit(text):
    value = float(text)
    if not 0 < value < 1:
        raise ValueError(_('must lie in (0, 1)'))
    return value


def _positive_int_list(text):
    values = tuple(_positive_int(item) for item in str(text).split(',')
                   if item.strip())
    if not values:
        raise ValueError(_('the list is empty'))
    return values


def _boolean(text):
    text = str(text).strip().lower()
    if text in ('1', 'true', 'yes', 'on'):
        return True
    if text in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError(_('must be true or false'))


def _experiment(text):
    text = str(text).strip()
    if text not in EXPERIMENTS:
        raise ValueError(_('unknown experiment, use one of {}')
                         .format(', '.join(EXPERIMENTS)))
    return text


KEYS = {
    'experiment': _experiment,
    'seed': _unsigned,
    'out': str,
    'n_list': _positive_int_list,
    'm_list': _positive_int_list,
    'replicates': _positive_int,
    'threads': _positive_int,
    'mse_halt': _positive_float,
    'linf_halt': _positive_float,
    'plateau_window': _positive_int,
    'plateau_rel_improvement': _positive_float,
    'weight_clip': _positive_float,
    'threshold_clip': _positive_float,
    'max_restarts': _nonnegative_int,
    'init_lo': float,
    'init_hi': float,
    'max_iterations': _positive_int,
    'k': _positive_int,
    'rep_restarts': _nonnegative_int,
    'rep_check': _boolean,
    'm1_list': _positive_int_list,
    'new_tasks': _positive_int,
    'cap': _positive_int,
    'temperature': _positive_float,
    'n_values': _positive_int_list,
    'mc_samples': _positive_int,
    'pairs': _positive_int,
    'grid_points': _positive_int,
    'perfect_n': _positive_int,
    'perfect_m': _positive_int,
    'perfect_attempts': _positive_int,
    'bound_M': _positive_float,
    'alpha': _open_unit,
    'nu': _positive_float,
    'delta': _open_unit,
    'lnC_G': _nonnegative_float,
    'lnCstar_F': _nonnegative_float,
}

OPTION_DEFAULTS = {
    'k': 6,
    'rep_restarts': 32,
    'rep_check': False,
    'm1_list': (2, 6, 10, 14, 18, 22),
    'new_tasks': 10,
    'cap': 512,
    'temperature': 0.01,
    'n_values': None,
    'mc_samples': 100000,
    'pairs': 100,
    'grid_points': 10000,
    'perfect_n': 21,
    'perfect_m': 21,
    'perfect_attempts': 10,
    'bound_M': 1.0,
    'alpha': 0.1,
    'nu': 0.1,
    'delta': 0.01,
    'lnC_G': 10.0,
    'lnCstar_F': 100.0,
}


class ExperimentConfig:
    """
    A validated experiment configuration.

    Attributes:
        experiment (str): one of EXPERIMENTS.
        seed (int): the master seed.
        out (str): the output directory.
        n_list (tuple): task counts.
        m_list (tuple): examples per task.
        replicates (int): replicates per cell.
        threads (int): worker threads.
        policy_changes (dict): TrainPolicy fields set by the configuration.
        options (dict): experiment knobs, OPTION_DEFAULTS completed by the
            configured values.
    """

    def __init__(self, experiment, seed, out='results', n_list=None,
                 m_list=None, replicates=None, threads=1,
                 policy_changes=None, options=None):
        if experiment not in EXPERIMENTS:
            raise ConfigError('experiment', _('unknown experiment {}')
                              .format(experiment))
        if seed is None:
            raise ConfigError('seed', _('the seed is mandatory'))
        default_n, default_m, default_replicates = \
            EXPERIMENT_DEFAULTS[experiment]
        self.experiment = experiment
        self.seed = int(seed)
        self.out = out
        self.n_list = tuple(n_list) if n_list is not None else default_n
        self.m_list = tuple(m_list) if m_list is not None else default_m
        self.replicates = replicates if replicates is not None \
            else default_replicates
        self.threads = int(threads)
        self.policy_changes = dict(policy_changes or {})
        self.options = dict(OPTION_DEFAULTS)
        self.options.update(options or {})
        if not self.n_list or not self.m_list:
            raise ConfigError('n_list', _('grids cannot be empty'))
        if self.threads < 1:
            raise ConfigError('threads', _('must be a positive integer'))

    def option(self, key, default=None):
        value = self.options.get(key)
        return default if value is None else value

    def train_policy(self, base):
        """
        The base policy with the configured fields and the master seed.

        Raises:
            ConfigError: when the configured fields make an invalid policy.
        """
        changes = {key: value for key, value in self.policy_changes.items()
                   if key not in ('init_lo', 'init_hi')}
        if 'init_lo' in self.policy_changes or \
                'init_hi' in self.policy_changes:
            lo, hi = base.init_range
            changes['init_range'] = (self.policy_changes.get('init_lo', lo),
                                     self.policy_changes.get('init_hi', hi))
        try:
            return base.replace(master_seed=self.seed, **changes)
        except ValueError as ex:
            raise ConfigError('policy', str(ex)) from None

    def echo(self):
        """The configuration as ``key = value`` lines, defaults included."""
        values = {'experiment': self.experiment, 'seed': self.seed,
                  'out': self.out, 'n_list': self.n_list,
                  'm_list': self.m_list, 'replicates': self.replicates,
                  'threads': self.threads}
        values.update(self.policy_changes)
        values.update(self.options)
        lines = []
        for key in KEYS:
            if key not in values or values[key] is None:
                continue
            value = values[key]
            if isinstance(value, tuple):
                value = ', '.join(str(v) for v in value)
            elif isinstance(value, float):
                value = repr(value)
            lines.append('{} = {}'.format(key, value))
        return '\n'.join(lines) + '\n'

    def __repr__(self):
        return 'ExperimentConfig({!r}, seed={})'.format(self.experiment,
                                                        self.seed)


def parse_config_text(text):
    """
    Raw values of a configuration text.

    Returns:
        dict: key -> (value text, line number).

    Raises:
        ConfigError: for a line without '=' or an unknown key.
    """
    settings = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key = key.strip()
        if not sep:
            raise ConfigError(None, _('expected "key = value"'), lineno)
        if key not in KEYS:
            raise ConfigError(key, _('unknown key'), lineno)
        settings[key] = (value.strip(), lineno)
    return settings


def load_config(path=None, overrides=None, environ=None):
    """
    Configuration from a file, command line overrides and the environment.

    Args:
        path (str): configuration file, None for none.
        overrides (dict): key -> value text from the command line; None
            values are ignored.
        environ (dict): the environment, os.environ by default.

    Returns:
        ExperimentConfig: the configuration.

    Raises:
        ConfigError: for anything invalid, before any work starts.
    """
    environ = os.environ if environ is None else environ
    settings = {}
    if path is not None:
        try:
            with open(path, 'rt', encoding='utf-8') as file:
                settings = parse_config_text(file.read())
        except OSError as ex:
            raise ConfigError(None, _('cannot read {}: {}')
                              .format(path, ex.strerror)) from None
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in KEYS:
            raise ConfigError(key, _('unknown key'))
        settings[key] = (str(value), None)
    if 'threads' not in settings and environ.get(THREADS_VARIABLE):
        settings['threads'] = (environ[THREADS_VARIABLE], None)

    values = {}
    for key, (text, line) in settings.items():
        try:
            values[key] = KEYS[key](text)
        except ValueError as ex:
            raise ConfigError(key, _('bad value "{}": {}').format(text, ex),
                              line) from None
    if 'experiment' not in values:
        raise ConfigError('experiment', _('no experiment given'))
    if 'seed' not in values:
        raise ConfigError('seed', _('the seed is mandatory'))
    return ExperimentConfig(
        values.pop('experiment'), values.pop('seed'),
        out=values.pop('out', 'results'),
        n_list=values.pop('n_list', None),
        m_list=values.pop('m_list', None),
        replicates=values.pop('replicates', None),
        threads=values.pop('threads', 1),
        policy_changes={key: values.pop(key) for key in POLICY_KEYS
                        if key in values},
        options=values)
