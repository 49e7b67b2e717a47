#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Dense feedforward networks.

Two families are provided: real valued layered networks (sigmoid, identity
or sign activation) with analytic gradients, and the ±1 weight binary
networks with five inputs, three outputs and no thresholds.

The parameters of a Network are always flattened in the same order:
layer by layer, and inside a layer first the weight matrix (row-major,
one row per node) and then the thresholds of the nodes. Gradients,
parameter caps and network files use this order.

File:
    project: RepQuest
    name: repquest_nnet.py
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
from scipy.special import expit

import repquest_locale

_ = repquest_locale.setup_locale_translation_gettext()

SIGMOID = 'sigmoid'
IDENTITY = 'identity'
SIGN = 'sign'
ACTIVATIONS = (SIGMOID, IDENTITY, SIGN)

# Pre-activations beyond this magnitude saturate the sigmoid exactly.
SATURATION = 500.0

BINARY_INPUTS = 5
BINARY_OUTPUTS = 3
BINARY_WEIGHTS = BINARY_INPUTS * BINARY_OUTPUTS
BINARY_CANDIDATES = 2 ** BINARY_WEIGHTS


class InputError(ValueError):
    """Rejected input: a wrong dimension or a value out of the domain."""


def sigmoid(t):
    """
    The standard squashing function 1/(1 + exp(-t)).

    Args:
        t (float or numpy.ndarray): pre-activation(s).

    Returns:
        numpy.ndarray: values in [0, 1], equal to 0 or 1 exactly only for
            |t| > SATURATION.
    """
    t = np.asarray(t, dtype=float)
    return np.where(t > SATURATION, 1.0,
                    np.where(t < -SATURATION, 0.0, expit(t)))


def sign(t):
    """The hard limiter: 1 if t > 0 else -1."""
    return np.where(np.asarray(t) > 0, 1.0, -1.0)


def _activate(activation, t):
    if activation == SIGMOID:
        return sigmoid(t)
    if activation == IDENTITY:
        return np.asarray(t, dtype=float)
    return sign(t)


def _derivative(activation, a):
    # Derivative expressed by the activation value a.
    if activation == SIGMOID:
        return a * (1.0 - a)
    if activation == IDENTITY:
        return np.ones_like(a)
    raise ValueError(_('the sign activation has no gradient'))


class Network:
    """
    Layered dense feedforward network.

    A Network is an immutable value: its arrays are read-only and training
    creates new networks with with_parameters().

    Attributes:
        layers (tuple): pairs (weights, thresholds); weights has shape
            (nodes, inputs) and thresholds has shape (nodes,).
        activation (str): one of ACTIVATIONS, used by every node.
    """

    def __init__(self, layers, activation=SIGMOID):
        """
        Initialize the network.

        Args:
            layers (iterable): pairs (weight matrix, thresholds).
            activation (str): 'sigmoid', 'identity' or 'sign'.

        Raises:
            ValueError: unknown activation, no layers, or layer dimensions
                that do not chain.
        """
        if activation not in ACTIVATIONS:
            raise ValueError(_('unknown activation {}').format(activation))
        checked = []
        for weights, thresholds in layers:
            weights = np.array(weights, dtype=float, ndmin=2)
            thresholds = np.array(thresholds, dtype=float).reshape(-1)
            if weights.ndim != 2 or thresholds.shape != weights.shape[:1]:
                raise ValueError(_('thresholds do not match the weights'))
            if checked and checked[-1][0].shape[0] != weights.shape[1]:
                raise ValueError(_('layer dimensions do not chain'))
            weights.setflags(write=False)
            thresholds.setflags(write=False)
            checked.append((weights, thresholds))
        if not checked:
            raise ValueError(_('a network needs at least one layer'))
        self.layers = tuple(checked)
        self.activation = activation

    @classmethod
    def zeros(cls, dims, activation=SIGMOID):
        """
        Network with all weights and thresholds equal to zero.

        Args:
            dims (sequence): node counts (inputs, hidden..., outputs).
            activation (str): the activation.

        Returns:
            Network: the new network.
        """
        dims = [int(d) for d in dims]
        if len(dims) < 2 or min(dims) < 1:
            raise ValueError(_('bad network dimensions {}').format(dims))
        return cls([(np.zeros((d_out, d_in)), np.zeros(d_out))
                    for d_in, d_out in zip(dims[:-1], dims[1:])],
                   activation)

    @property
    def dims(self):
        return (self.in_dim,) + tuple(w.shape[0] for w, __ in self.layers)

    @property
    def in_dim(self):
        return self.layers[0][0].shape[1]

    @property
    def out_dim(self):
        return self.layers[-1][0].shape[0]

    @property
    def n_parameters(self):
        return sum(w.size + t.size for w, t in self.layers)

    def parameters(self):
        """
        All parameters as one flat vector in the canonical order.

        Returns:
            numpy.ndarray: a new array of length n_parameters.
        """
        return np.concatenate([np.concatenate((w.ravel(), t))
                               for w, t in self.layers])

    def with_parameters(self, vector):
        """
        A network of the same shape with the given parameters.

        Args:
            vector (array-like): flat parameters in the canonical order.

        Returns:
            Network: the new network.

        Raises:
            InputError: when the vector length is not n_parameters.
        """
        vector = np.asarray(vector, dtype=float).reshape(-1)
        if vector.size != self.n_parameters:
            raise InputError(_('expected {} parameters, got {}')
                             .format(self.n_parameters, vector.size))
        layers = []
        start = 0
        for w, t in self.layers:
            stop = start + w.size
            layers.append((vector[start:stop].reshape(w.shape),
                           vector[stop:stop + t.size]))
            start = stop + t.size
        return Network(layers, self.activation)

    def parameter_caps(self, weight_clip, threshold_clip):
        """
        Clipping caps aligned with parameters().

        Args:
            weight_clip (float): the cap for the weights.
            threshold_clip (float): the cap for the thresholds.

        Returns:
            numpy.ndarray: cap per parameter.
        """
        return np.concatenate([np.concatenate((np.full(w.size, weight_clip),
                                               np.full(t.size, threshold_clip)))
                               for w, t in self.layers]).astype(float)

    def __call__(self, x):
        return forward(self, x)

    def __repr__(self):
        return 'Network(dims={}, activation={!r})'.format(self.dims,
                                                          self.activation)


def random_network(dims, activation, rng, init_range=(-1.0, 1.0)):
    """
    Network with parameters drawn uniformly from init_range.

    Args:
        dims (sequence): node counts (inputs, hidden..., outputs).
        activation (str): the activation.
        rng (numpy.random.Generator): the random stream.
        init_range (tuple): (lo, hi).

    Returns:
        Network: the new network.
    """
    template = Network.zeros(dims, activation)
    lo, hi = init_range
    return template.with_parameters(rng.uniform(lo, hi,
                                                template.n_parameters))


def _check_input(net, x):
    x = np.asarray(x, dtype=float)
    if x.shape != (net.in_dim,):
        raise InputError(_('input of shape {} does not fit {} inputs')
                         .format(x.shape, net.in_dim))
    return x


def forward(net, x):
    """
    Evaluate the network on one input vector.

    Args:
        net (Network): the network.
        x (array-like): input of length net.in_dim.

    Returns:
        numpy.ndarray: the output vector.

    Raises:
        InputError: on a dimension mismatch.
    """
    a = _check_input(net, x)
    for weights, thresholds in net.layers:
        a = _activate(net.activation, weights @ a + thresholds)
    return a


def forward_trace(net, inputs):
    """
    Evaluate the network on a batch and keep every layer's activations.

    Args:
        net (Network): the network.
        inputs (array-like): a batch of shape (N, net.in_dim).

    Returns:
        list: activations [inputs, layer 1, ..., output], each (N, nodes).
    """
    a = np.asarray(inputs, dtype=float)
    if a.ndim != 2 or a.shape[1] != net.in_dim:
        raise InputError(_('batch of shape {} does not fit {} inputs')
                         .format(a.shape, net.in_dim))
    trace = [a]
    for weights, thresholds in net.layers:
        a = _activate(net.activation, a @ weights.T + thresholds)
        trace.append(a)
    return trace


def forward_batch(net, inputs):
    """Outputs of the network for a batch of shape (N, net.in_dim)."""
    return forward_trace(net, inputs)[-1]


def backward(net, trace, grad_output):
    """
    Reverse accumulation through the network.

    Args:
        net (Network): the network that produced the trace.
        trace (list): activations returned by forward_trace().
        grad_output (numpy.ndarray): derivative of the loss with respect to
            the outputs, shape (N, net.out_dim).

    Returns:
        tuple: (gradient, grad_input) where gradient is the flat parameter
            gradient summed over the batch and grad_input, of shape
            (N, net.in_dim), is the derivative with respect to the inputs.
    """
    delta = grad_output * _derivative(net.activation, trace[-1])
    pieces = []
    grad_input = None
    for index in range(len(net.layers) - 1, -1, -1):
        weights, __ = net.layers[index]
        pieces.append(np.concatenate(((delta.T @ trace[index]).ravel(),
                                      delta.sum(axis=0))))
        grad_input = delta @ weights
        if index > 0:
            delta = grad_input * _derivative(net.activation, trace[index])
    pieces.reverse()
    return np.concatenate(pieces), grad_input


def loss_and_gradient(net, x, y, loss='squared'):
    """
    Squared error of one example and its gradient.

    Args:
        net (Network): the network.
        x (array-like): input of length net.in_dim.
        y (float or array-like): target with net.out_dim values.
        loss (str): only 'squared' is supported.

    Returns:
        tuple: (loss value, flat gradient).

    Raises:
        InputError: on dimension mismatch.
        ValueError: for an unknown loss.
    """
    if loss != 'squared':
        raise ValueError(_('unknown loss {}').format(loss))
    x = _check_input(net, x)
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.shape != (net.out_dim,):
        raise InputError(_('target of shape {} does not fit {} outputs')
                         .format(y.shape, net.out_dim))
    trace = forward_trace(net, x[np.newaxis, :])
    residual = trace[-1][0] - y
    gradient, __ = backward(net, trace, 2.0 * residual[np.newaxis, :])
    return float(residual @ residual), gradient


def batch_loss_and_gradient(net, inputs, targets, weights=None):
    """
    Weighted squared error over a batch and its gradient.

    Args:
        net (Network): the network, with one output node.
        inputs (array-like): shape (N, net.in_dim).
        targets (array-like): shape (N,).
        weights (array-like): example weights; the plain mean when None.

    Returns:
        tuple: (sum_j w_j (net(x_j) - y_j)^2, flat gradient, residuals).
    """
    trace = forward_trace(net, inputs)
    residual = trace[-1][:, 0] - np.asarray(targets, dtype=float)
    if weights is None:
        weights = np.full(residual.size, 1.0 / residual.size)
    weighted = np.asarray(weights, dtype=float) * residual
    gradient, __ = backward(net, trace, 2.0 * weighted[:, np.newaxis])
    return float(weighted @ residual), gradient, residual


class BinaryNetwork:
    """
    Binary network with five ±1 inputs and three hard-limited outputs.

    Candidates are enumerated by a 15-bit counter: bit j of the index is
    the weight j in row-major order (row = output node), 1 meaning +1 and
    0 meaning -1.
    """

    def __init__(self, weights):
        weights = np.array(weights, dtype=int)
        if weights.shape != (BINARY_OUTPUTS, BINARY_INPUTS) or \
                np.any(np.abs(weights) != 1):
            raise ValueError(_('binary weights must be a 3x5 matrix of ±1'))
        weights.setflags(write=False)
        self.weights = weights

    @classmethod
    def from_index(cls, index):
        if not 0 <= index < BINARY_CANDIDATES:
            raise ValueError(_('no binary network {}').format(index))
        bits = (int(index) >> np.arange(BINARY_WEIGHTS)) & 1
        return cls((2 * bits - 1).reshape(BINARY_OUTPUTS, BINARY_INPUTS))

    def index(self):
        bits = (self.weights.ravel() > 0).astype(int)
        return int(bits @ (1 << np.arange(BINARY_WEIGHTS)))

    def __eq__(self, other):
        if not isinstance(other, BinaryNetwork):
            return NotImplemented
        return bool(np.array_equal(self.weights, other.weights))

    def __hash__(self):
        return self.index()

    def __call__(self, x):
        return binary_forward(self, x)

    def __repr__(self):
        return 'BinaryNetwork.from_index({})'.format(self.index())


def all_binary_weights():
    """Weights of every candidate, shape (32768, 3, 5), in index order."""
    bits = (np.arange(BINARY_CANDIDATES)[:, np.newaxis]
            >> np.arange(BINARY_WEIGHTS)) & 1
    return (2 * bits - 1).reshape(-1, BINARY_OUTPUTS, BINARY_INPUTS)


def binary_forward(net, x):
    """
    Evaluate a binary network.

    Args:
        net (BinaryNetwork): the network.
        x (array-like): five values, each -1 or +1.

    Returns:
        numpy.ndarray: three values, each -1 or +1.

    Raises:
        InputError: when x is not a ±1 vector of length 5.
    """
    x = np.asarray(x)
    if x.shape != (BINARY_INPUTS,) or np.any(np.abs(x) != 1):
        raise InputError(_('binary input must be five values ±1'))
    return np.where(net.weights @ x.astype(int) > 0, 1, -1)
