#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sample size calculators for single-task and multi-task learning.

The calculators evaluate closed formulas; capacities enter as natural
logarithms, either given directly or taken from the neural network
capacity bound nn_log_capacity(). Working with logarithms keeps values
like ln C = 100 representable.

File:
    project: RepQuest
    name: repquest_bounds.py
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
import warnings

import numpy as np

import repquest_locale

_ = repquest_locale.setup_locale_translation_gettext()


class BoundInputs:
    """
    Numeric inputs of the bound formulas.

    Attributes:
        M (float): bound of the loss, losses lie in [0, M].
        alpha (float): accuracy in the d_nu metric, 0 < alpha < 1.
        nu (float): the d_nu parameter, nu > 0.
        delta (float): confidence, 0 < delta < 1.
        n (int): tasks.
        m (int): examples per task.
        lnC_G (float): log capacity of the output class, None when it
            has to come from nn_log_capacity().
        lnCstar_F (float): log capacity of the representation class, None
            when it has to come from nn_log_capacity().
        W (int): weights of a network, for nn_log_capacity().
        W_F (int): weights of the representation network.
        W_G (int): weights of one output network.
        d (int): depth of a network.
        lipschitz_product (float): product of the layer Lipschitz bounds.
        epsilon (float): capacity scale, for nn_log_capacity().
        eps1 (float): scale of the output class capacity.
        eps2 (float): scale of the representation class capacity.
    """

    FIELDS = ('M', 'alpha', 'nu', 'delta', 'n', 'm', 'lnC_G', 'lnCstar_F',
              'W', 'W_F', 'W_G', 'd', 'lipschitz_product', 'epsilon', 'eps1',
              'eps2')

    def __init__(self, M=1.0, alpha=0.1, nu=0.1, delta=0.01, n=1, m=1,
                 lnC_G=None, lnCstar_F=None, W=None, W_F=None, W_G=None, d=1,
                 lipschitz_product=1.0, epsilon=None, eps1=None, eps2=None):
        self.M = float(M)
        self.alpha = float(alpha)
        self.nu = float(nu)
        self.delta = float(delta)
        self.n = int(n)
        self.m = int(m)
        self.lnC_G = lnC_G
        self.lnCstar_F = lnCstar_F
        self.W = W
        self.W_F = W_F
        self.W_G = W_G
        self.d = int(d)
        self.lipschitz_product = float(lipschitz_product)
        self.epsilon = epsilon
        self.eps1 = eps1
        self.eps2 = eps2
        self._validate()

    def _validate(self):
        if not self.M > 0:
            raise ValueError(_('M must be positive'))
        if not 0 < self.alpha < 1:
            raise ValueError(_('alpha must lie in (0, 1)'))
        if not self.nu > 0:
            raise ValueError(_('nu must be positive'))
        if not 0 < self.delta < 1:
            raise ValueError(_('delta must lie in (0, 1)'))
        if self.n < 1 or self.m < 1 or self.d < 1:
            raise ValueError(_('n, m and d must be at least 1'))
        if not self.lipschitz_product >= 1:
            raise ValueError(_('the Lipschitz product must be at least 1'))
        for name in ('lnC_G', 'lnCstar_F'):
            value = getattr(self, name)
            if value is not None and not 0 <= value < math.inf:
                raise ValueError(_('{} must be finite and nonnegative')
                                 .format(name))
        for name in ('W', 'W_F', 'W_G'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(_('{} must be at least 1').format(name))
        for name in ('epsilon', 'eps1', 'eps2'):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(_('{} must be positive').format(name))

    def replace(self, **changes):
        fields = {name: getattr(self, name) for name in self.FIELDS}
        fields.update(changes)
        return BoundInputs(**fields)

    @property
    def rate(self):
        """The common factor M / (alpha^2 nu)."""
        return self.M / (self.alpha ** 2 * self.nu)

    def __repr__(self):
        return 'BoundInputs({})'.format(', '.join(
            '{}={!r}'.format(name, getattr(self, name))
            for name in self.FIELDS if getattr(self, name) is not None))


def d_nu(x, y, nu):
    """
    The metric d_nu(x, y) = |x - y| / (nu + x + y) on nonnegative reals.

    Raises:
        ValueError: for a negative argument or nu <= 0.
    """
    if not nu > 0:
        raise ValueError(_('nu must be positive'))
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < 0) or np.any(y < 0):
        raise ValueError(_('d_nu is defined on nonnegative numbers'))
    value = np.abs(x - y) / (nu + x + y)
    return float(value) if value.ndim == 0 else value


def nn_log_capacity(b, W=None, epsilon=None):
    """
    Log capacity bound 2 W ln(2 e M d L / epsilon) of a neural network.

    Args:
        b (BoundInputs): M, d, lipschitz_product and the defaults of W and
            epsilon.
        W (int): weights, b.W by default.
        epsilon (float): scale, b.epsilon by default.

    Returns:
        float: the bound, 0 when it is below 0.
    """
    W = b.W if W is None else W
    epsilon = b.epsilon if epsilon is None else epsilon
    if W is None or epsilon is None:
        raise ValueError(_('the network capacity needs W and epsilon'))
    if W < 1 or not epsilon > 0:
        raise ValueError(_('W must be at least 1 and epsilon positive'))
    scale = 2.0 * math.e * b.M * b.d * b.lipschitz_product / epsilon
    return max(0.0, 2.0 * W * math.log(scale))


def _split(b, total):
    eps1 = b.eps1 if b.eps1 is not None else total / 2.0
    eps2 = b.eps2 if b.eps2 is not None else total - eps1
    if not math.isclose(eps1 + eps2, total):
        raise ValueError(_('eps1 + eps2 must equal {}').format(total))
    return eps1, eps2


def _capacities(b, total):
    eps1, eps2 = _split(b, total)
    lnC_G = b.lnC_G if b.lnC_G is not None \
        else nn_log_capacity(b, b.W_G, eps1)
    lnCstar_F = b.lnCstar_F if b.lnCstar_F is not None \
        else nn_log_capacity(b, b.W_F, eps2)
    return lnC_G, lnCstar_F


def ordinary_m(b, lnC):
    """
    Examples for single-task learning with log capacity lnC at alpha nu/8.

    Returns:
        float: (8M/(alpha^2 nu)) ln(4 C / delta).
    """
    return 8.0 * b.rate * (math.log(4.0) + lnC - math.log(b.delta))


def multitask_m(b):
    """
    Examples per task when n tasks are learnt together.

    Returns:
        float: (8M/(alpha^2 nu)) [ln C_G + (1/n) ln(4 C*_F / delta)], the
            capacities taken at eps1 + eps2 = alpha nu / 8.
    """
    lnC_G, lnCstar_F = _capacities(b, b.alpha * b.nu / 8.0)
    return 8.0 * b.rate * (lnC_G + (math.log(4.0) + lnCstar_F
                                    - math.log(b.delta)) / b.n)


def transfer_nm(b):
    """
    Tasks and examples per task that make a learnt representation reliable.

    Returns:
        tuple: (n_req, m_req) with
            n_req = (32M/(alpha^2 nu)) ln(8 C*_F / delta) and
            m_req = (32M/(alpha^2 nu)) [ln C_G + (1/n) ln(8 C*_F / delta)].
            In n_req C*_F is taken at alpha nu / 16, in m_req C_G at eps1
            and C*_F at eps2 with eps1 + eps2 = alpha nu / 16.
    """
    total = b.alpha * b.nu / 16.0
    lnC_G, lnCstar_F = _capacities(b, total)
    lnCstar_n = b.lnCstar_F if b.lnCstar_F is not None \
        else nn_log_capacity(b, b.W_F, total)
    confidence = math.log(8.0) - math.log(b.delta)
    n_req = 32.0 * b.rate * (confidence + lnCstar_n)
    m_req = 32.0 * b.rate * (lnC_G + (confidence + lnCstar_F) / b.n)
    return n_req, m_req


def impedance_ratio(lnC_joint_n, lnC_sigma, n):
    """
    Learning impedance (1/n) ln C(H^n) / ln C(H).

    The value lies between 1/n (n tasks cost as much as one) and 1 (no
    benefit from learning them together); outside that range a warning is
    issued and the value is clamped.
    """
    if not lnC_sigma > 0:
        raise ValueError(_('the single-task log capacity must be positive'))
    if n < 1:
        raise ValueError(_('n must be at least 1'))
    ratio = lnC_joint_n / (n * lnC_sigma)
    clamped = min(1.0, max(1.0 / n, ratio))
    if clamped != ratio:
        warnings.warn(_('impedance {} lies outside [1/n, 1]').format(ratio))
    return clamped


def representation_impedance(lnC_G, lnCstar_F, n):
    """
    Impedance of representation learning, (1/n + r)/(1 + r), r = lnC_G/lnC*_F.
    """
    if not lnCstar_F > 0:
        raise ValueError(_('the representation log capacity must be '
                           'positive'))
    r = lnC_G / lnCstar_F
    return (1.0 / n + r) / (1.0 + r)


def deviation_bound(b, lnC_at):
    """
    Probability bound of a d_nu deviation above alpha on an (n, m) sample.

    Returns:
        float: min(1, 4 C exp(-alpha^2 nu n m / (8M))) for ln C = lnC_at.
    """
    exponent = math.log(4.0) + lnC_at - b.n * b.m / (8.0 * b.rate)
    return 1.0 if exponent >= 0 else math.exp(exponent)


def nn_sample_orders(b):
    """
    Orders of magnitude of the sample sizes for network classes.

    Logarithmic factors are dropped.

    Returns:
        dict: 'n' tasks ~ W_F/(alpha^2 nu); 'm' per task
            ~ (W_G + W_F/n)/(alpha^2 nu); 'ordinary_m' for a single task
            ~ (W_G + W_F)/(alpha^2 nu); 'known_representation_m' once the
            representation is known ~ W_G/(alpha^2 nu).
    """
    if b.W_F is None or b.W_G is None:
        raise ValueError(_('W_F and W_G are needed'))
    rate = 1.0 / (b.alpha ** 2 * b.nu)
    return {'n': b.W_F * rate,
            'm': (b.W_G + b.W_F / b.n) * rate,
            'ordinary_m': (b.W_G + b.W_F) * rate,
            'known_representation_m': b.W_G * rate}
