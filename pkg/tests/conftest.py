#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Test configuration: RepQuest modules are imported by their bare names.

File:
    project: RepQuest
    name: conftest.py
    version: 0.1.0.0
    date: 19.10.2026

Authors:
    RepQuest contributors

Copyright (c) 2026 RepQuest contributors.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                os.pardir, 'repquest'))
