#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Result files of an experiment run.

All files of a run go through one Output object, which serializes the
writes. Numbers are written with repr(), which does not depend on the
locale, so a rerun with the same configuration reproduces every file
byte for byte.

File:
    project: RepQuest
    name: repquest_output.py
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

import csv
import math
import os
import threading
from numbers import Integral, Real

import numpy as np
import pandas as pd
import scipy

import repquest_locale
import repquest_netio

_ = repquest_locale.setup_locale_translation_gettext()

MANIFEST = 'manifest.txt'
NETS_DIRECTORY = 'nets'
VERSION = '0.1.0.0'


def format_cell(value):
    """
    Text of one CSV cell.

    None and NaN are empty cells, integers are written as integers and
    other numbers with repr(float(value)).
    """
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, Real):
        value = float(value)
        return '' if math.isnan(value) else repr(value)
    return str(value)


class Output:
    """
    Writer of CSV tables, the manifest and network files of a run.

    Attributes:
        directory (str): where the files go; created when missing.
    """

    def __init__(self, directory):
        self.directory = directory
        self._lock = threading.Lock()
        self.written = []

    def path(self, name):
        return os.path.join(self.directory, name)

    def _open(self, name):
        path = self.path(name)
        os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
        self.written.append(name)
        encoding = repquest_locale.setup_locale_csv_format()['encoding']
        return open(path, 'wt', encoding=encoding, newline='')

    def write_csv(self, name, header, rows):
        """
        Write a table.

        Args:
            name (str): file name relative to the directory.
            header (sequence): column names.
            rows (iterable): sequences of cells, in header order.
        """
        settings = repquest_locale.setup_locale_csv_format('en_US')
        with self._lock, self._open(name) as file:
            writer = csv.writer(file, delimiter=settings['delimiter'],
                                lineterminator=settings['lineterminator'])
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_cell(cell) for cell in row])

    def write_frame(self, name, frame, columns=None):
        """Write a pandas.DataFrame, optionally restricted to columns."""
        columns = list(frame.columns) if columns is None else list(columns)
        frame = frame.reindex(columns=columns)
        self.write_csv(name, columns,
                       frame.itertuples(index=False, name=None))

    def write_manifest(self, config):
        """Write the configuration echo, the seed and library versions."""
        with self._lock, self._open(MANIFEST) as file:
            file.write('repquest = {}\n'.format(VERSION))
            file.write('numpy = {}\n'.format(np.__version__))
            file.write('scipy = {}\n'.format(scipy.__version__))
            file.write('pandas = {}\n'.format(pd.__version__))
            file.write('master_seed = {}\n'.format(config.seed))
            file.write(config.echo())

    def save_net(self, name, obj):
        """Save a Network or MultiTaskNet under the nets directory."""
        name = os.path.join(NETS_DIRECTORY, name)
        with self._lock, self._open(name) as file:
            file.write(repquest_netio.format_net(obj))
        return self.path(name)
