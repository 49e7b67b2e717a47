#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
A console progress indicator.

File:
    project: RepQuest
    name: progress.py
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
import threading


class Progress:
    """Progress indicator written to a text stream, one line redrawn."""

    def __init__(self, label='', stream=None, quiet=False):
        """
        Creates the indicator.

        Args:
            label (str): text shown before the counter.
            stream (file): where to write, sys.stderr by default.
            quiet (bool): when True nothing is written at all.
        """
        self.label = label
        self.stream = sys.stderr if stream is None else stream
        self.quiet = quiet
        self.value = 0
        self.maximum = 0
        self._lock = threading.Lock()

    def set(self, x):
        """
        Set the current value.

        Args:
            x (float): value to set.
        """
        with self._lock:
            self.value = x
        self.update()

    def step(self, delta=1):
        """
        Increases the progress; safe to call from worker threads.

        Args:
            delta (float): increment by which the value is increased.
        """
        with self._lock:
            self.value += delta
        self.update()

    def range(self, maximal_value):
        """
        Set up the end of the scale and reset the value.

        Args:
            maximal_value (float): the end of the scale.
        """
        with self._lock:
            self.maximum = maximal_value
            self.value = 0
        self.update()

    def stop(self):
        """
        Finish the line.
        """
        if not self.quiet:
            print(file=self.stream)

    def update(self):
        """
        Redraw the indicator.
        """
        if self.quiet:
            return
        with self._lock:
            text = '\r{} {}/{}'.format(self.label, self.value, self.maximum)
        print(text, end='', file=self.stream, flush=True)
