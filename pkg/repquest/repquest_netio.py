#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Text files with trained networks.

A file looks like::

    repquest-net 1
    kind multitask
    count 3
    net
    activation sigmoid
    dims 10 3 2
    parameters 41
    0.53425645082294331
    ...

Every net is stored as its activation, its node counts and its
parameters in the canonical order of Network.parameters(), one number
per line with 17 significant digits, so reading a file back restores the
parameters exactly. A multitask file holds the representation first and
then the heads.

File:
    project: RepQuest
    name: repquest_netio.py
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

import numpy as np

import repquest_locale
from repquest_nnet import ACTIVATIONS, Network
from repquest_replearn import MultiTaskNet

_ = repquest_locale.setup_locale_translation_gettext()

MAGIC = 'repquest-net 1'
NETWORK = 'network'
MULTITASK = 'multitask'


class NetFileError(ValueError):
    """
    A network file cannot be parsed.

    Attributes:
        lineno (int): the line, counted from 1, where parsing failed.
    """

    def __init__(self, message, lineno):
        super().__init__(_('line {}: {}').format(lineno, message))
        self.lineno = lineno


def format_net(obj):
    """
    Text of a Network or MultiTaskNet in the network file format.

    Returns:
        str: the text, ending with a newline.
    """
    if isinstance(obj, MultiTaskNet):
        kind, nets = MULTITASK, (obj.f,) + obj.heads
    elif isinstance(obj, Network):
        kind, nets = NETWORK, (obj,)
    else:
        raise TypeError(_('cannot save {}').format(type(obj).__name__))
    lines = [MAGIC, 'kind ' + kind, 'count {}'.format(len(nets))]
    for net in nets:
        parameters = net.parameters()
        lines.append('net')
        lines.append('activation ' + net.activation)
        lines.append('dims ' + ' '.join(str(d) for d in net.dims))
        lines.append('parameters {}'.format(parameters.size))
        lines.extend('%.17g' % p for p in parameters)
    return '\n'.join(lines) + '\n'


def save_net(path, obj):
    """Write a Network or MultiTaskNet to a file."""
    with open(path, 'wt', encoding='utf-8', newline='\n') as file:
        file.write(format_net(obj))


class _Lines:
    def __init__(self, text):
        self.lines = text.splitlines()
        self.lineno = 0

    def next(self):
        if self.lineno >= len(self.lines):
            raise NetFileError(_('unexpected end of file'), self.lineno + 1)
        self.lineno += 1
        return self.lines[self.lineno - 1].strip()

    def field(self, name):
        line = self.next()
        key, __, value = line.partition(' ')
        if key != name:
            raise self.error(_('expected "{}", found "{}"').format(name, line))
        return value.strip()

    def integers(self, name):
        try:
            return [int(v) for v in self.field(name).split()]
        except ValueError:
            raise self.error(_('"{}" needs integers').format(name)) from None

    def error(self, message):
        return NetFileError(message, self.lineno)


def _parse_net(lines):
    if lines.next() != 'net':
        raise lines.error(_('expected "net"'))
    activation = lines.field('activation')
    if activation not in ACTIVATIONS:
        raise lines.error(_('unknown activation {}').format(activation))
    dims = lines.integers('dims')
    if len(dims) < 2 or min(dims) < 1:
        raise lines.error(_('bad network dimensions {}').format(dims))
    template = Network.zeros(dims, activation)
    count = lines.integers('parameters')
    if count != [template.n_parameters]:
        raise lines.error(_('dims {} need {} parameters, not {}')
                          .format(dims, template.n_parameters,
                                  ' '.join(str(c) for c in count)))
    values = np.empty(template.n_parameters)
    for i in range(values.size):
        line = lines.next()
        try:
            values[i] = float(line)
        except ValueError:
            raise lines.error(_('"{}" is not a number').format(line)) \
                from None
    return template.with_parameters(values)


def parse_net(text):
    """
    Network or MultiTaskNet from the text of a network file.

    Raises:
        NetFileError: for a malformed text; nothing is built then.
    """
    lines = _Lines(text)
    if lines.next() != MAGIC:
        raise lines.error(_('not a RepQuest network file'))
    kind = lines.field('kind')
    if kind not in (NETWORK, MULTITASK):
        raise lines.error(_('unknown kind {}').format(kind))
    count = lines.integers('count')
    expected = 1 if kind == NETWORK else 2
    if len(count) != 1 or count[0] < expected \
            or (kind == NETWORK and count[0] != 1):
        raise lines.error(_('bad net count for kind {}').format(kind))
    nets = [_parse_net(lines) for __ in range(count[0])]
    if any(line.strip() for line in lines.lines[lines.lineno:]):
        raise NetFileError(_('unexpected text after the last net'),
                           lines.lineno + 1)
    if kind == NETWORK:
        return nets[0]
    try:
        return MultiTaskNet(nets[0], nets[1:])
    except ValueError as ex:
        raise NetFileError(str(ex), lines.lineno) from None


def load_net(path):
    """Read a Network or MultiTaskNet written by save_net()."""
    with open(path, 'rt', encoding='utf-8') as file:
        return parse_net(file.read())
