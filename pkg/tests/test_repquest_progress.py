#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
File:
    project: RepQuest
    name: test_repquest_progress.py
    version: 0.1.0.0
    date: 19.10.2026

Authors:
    RepQuest contributors

Copyright (c) 2026 RepQuest contributors.
"""

import io
from unittest import TestCase

from progress import *


class TestProgress(TestCase):

    def test_1(self):
        """redrawn line"""
        stream = io.StringIO()
        progress = Progress('sweep', stream=stream)
        progress.range(2)
        progress.step()
        progress.set(2)
        progress.stop()
        self.assertEqual(stream.getvalue(),
                         '\rsweep 0/2\rsweep 1/2\rsweep 2/2\n')

    def test_2(self):
        """quiet"""
        stream = io.StringIO()
        progress = Progress('sweep', stream=stream, quiet=True)
        progress.range(10)
        progress.step(4)
        progress.stop()
        self.assertEqual(progress.value, 4)
        self.assertEqual(stream.getvalue(), '')
