#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RepQuest command line.

Usage::

    repquest translation --seed 1 --n-list 1,5,9 --m-list 1,41,81
    repquest quantize_quadratic --seed 1 --set k=6
    repquest binexp --config binexp.cfg --threads 4

Exit status is 0 on success, 2 for an invalid configuration and 1 when
some cells failed (their rows are still written, marked as failed).

File:
    project: RepQuest
    name: repquest_main.py
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

import argparse
import sys

import repquest_locale
from progress import Progress
from repquest_config import ConfigError, load_config
from repquest_experiments import ALL_EXPERIMENTS, experiment_by_name
from repquest_output import VERSION, Output

_ = repquest_locale.setup_locale_translation_gettext()

EXIT_OK = 0
EXIT_FAILED_CELLS = 1
EXIT_BAD_CONFIG = 2

FLAG_KEYS = ('seed', 'out', 'n_list', 'm_list', 'replicates', 'threads')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='repquest',
        description=_('Multi-task representation learning experiments.'))
    parser.add_argument('--version', action='version',
                        version='RepQuest ' + VERSION)
    subparsers = parser.add_subparsers(dest='experiment', metavar='EXPERIMENT')
    subparsers.required = True
    for experiment in ALL_EXPERIMENTS:
        sub = subparsers.add_parser(experiment.name,
                                    help=experiment.description)
        sub.add_argument('--config', metavar='PATH',
                         help=_('configuration file'))
        sub.add_argument('--seed', metavar='U64', help=_('master seed'))
        sub.add_argument('--out', metavar='DIR', help=_('output directory'))
        sub.add_argument('--n-list', dest='n_list', metavar='LIST',
                         help=_('comma separated task counts'))
        sub.add_argument('--m-list', dest='m_list', metavar='LIST',
                         help=_('comma separated examples per task'))
        sub.add_argument('--replicates', metavar='R',
                         help=_('replicates per cell'))
        sub.add_argument('--threads', metavar='T',
                         help=_('worker threads (default: REPNET_THREADS '
                                'or 1)'))
        sub.add_argument('--set', dest='settings', action='append',
                         default=[], metavar='KEY=VALUE',
                         help=_('any configuration key'))
        sub.add_argument('--quiet', action='store_true',
                         help=_('no progress output'))
    return parser


def overrides_from_args(args):
    """
    Configuration values given on the command line.

    Raises:
        ConfigError: for a --set argument without '='.
    """
    overrides = {}
    for setting in args.settings:
        key, sep, value = setting.partition('=')
        if not sep:
            raise ConfigError(setting, _('expected KEY=VALUE'))
        overrides[key.strip()] = value.strip()
    for key in FLAG_KEYS:
        value = getattr(args, key)
        if value is not None:
            overrides[key] = value
    overrides['experiment'] = args.experiment
    return overrides


def run(config, quiet=False):
    """
    Run the configured experiment and write its files.

    Args:
        config (ExperimentConfig): a validated configuration.
        quiet (bool): no progress output when True.

    Returns:
        int: the exit status.

    Raises:
        ConfigError: for experiment options that turn out to be invalid.
    """
    experiment = experiment_by_name(config.experiment)
    output = Output(config.out)
    output.write_manifest(config)
    progress = Progress(experiment.name, quiet=quiet)
    failed = experiment(config, output, progress)
    if failed:
        print(_('{} cells failed').format(failed), file=sys.stderr)
        return EXIT_FAILED_CELLS
    return EXIT_OK


def main(argv=None, environ=None):
    """
    Run one experiment from the command line.

    Args:
        argv (list): arguments without the program name, sys.argv[1:] by
            default.
        environ (dict): the environment, os.environ by default.

    Returns:
        int: the exit status.
    """
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, overrides_from_args(args), environ)
        return run(config, quiet=args.quiet)
    except ConfigError as ex:
        print(_('Invalid configuration: {}').format(ex), file=sys.stderr)
        return EXIT_BAD_CONFIG


if __name__ == '__main__':
    sys.exit(main())
