#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fan-out of independent experiment cells.

File:
    project: RepQuest
    name: repquest_sweep.py
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
from concurrent.futures import ThreadPoolExecutor

import repquest_locale

_ = repquest_locale.setup_locale_translation_gettext()


class CellFailure:
    """
    A cell that could not be computed.

    Attributes:
        key (tuple): the cell key.
        message (str): what went wrong.
    """

    def __init__(self, key, message):
        self.key = key
        self.message = message

    def __bool__(self):
        return False

    def __repr__(self):
        return 'CellFailure({!r}, {!r})'.format(self.key, self.message)


def run_cells(keys, job, threads=1, progress=None):
    """
    Compute job(key) for every key.

    A cell that raises an exception does not stop the sweep: the problem
    is reported on stderr and the cell's result is a CellFailure.

    Note:
        Every job must derive its random stream from its key alone, then
        the results do not depend on the number of threads.

    Args:
        keys (iterable): cell keys.
        job (callable): key -> result.
        threads (int): worker threads; 1 runs everything in this thread.
        progress (progress.Progress): an optional Progress object.

    Returns:
        list: pairs (key, result) in the order of keys.
    """
    keys = list(keys)
    if progress:
        progress.range(len(keys))

    def guarded(key):
        try:
            result = job(key)
        except Exception as ex:  # pylint: disable=broad-except
            print(_('Unable to compute cell {}: {}').format(key, ex),
                  file=sys.stderr)
            result = CellFailure(key, str(ex))
        if progress:
            progress.step()
        return result

    if threads <= 1:
        results = [guarded(key) for key in keys]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(guarded, keys))
    if progress:
        progress.stop()
    return list(zip(keys, results))


def failures(pairs):
    """The CellFailure results of run_cells()."""
    return [result for __, result in pairs if isinstance(result, CellFailure)]
