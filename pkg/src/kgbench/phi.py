"""Exponential-integrator phi functions for complex arguments.

    phi1(z) = (e^z - 1)/z             = int_0^1 e^{zs} ds
    phi2(z) = (z e^z - e^z + 1)/z^2   = int_0^1 e^{zs} s ds
    psi(z)  = (e^z - 1 - z)/z^2       = int_0^1 e^{zs} (1 - s) ds

A Taylor series is used below |z| = 0.5 and the closed form above it.
"""

from __future__ import annotations

from math import factorial

import numpy as np

CROSSOVER = 0.5
_NTERMS = 22

_C1 = np.array([1.0 / factorial(k + 1) for k in range(_NTERMS)])
_C2 = np.array([1.0 / (factorial(k) * (k + 2)) for k in range(_NTERMS)])
_CPSI = np.array([1.0 / factorial(k + 2) for k in range(_NTERMS)])


def _horner(coef, z):
    acc = np.zeros_like(z)
    for c in coef[::-1]:
        acc = acc * z + c
    return acc


def _eval(z, coef, direct):
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < CROSSOVER
    out = np.empty_like(z)
    out[small] = _horner(coef, z[small])
    big = ~small
    if big.any():
        out[big] = direct(z[big])
    return out


def phi1(z):
    return _eval(z, _C1, lambda w: np.expm1(w) / w)


def phi2(z):
    return _eval(z, _C2, lambda w: (w * np.exp(w) - np.expm1(w)) / (w * w))


def psi(z):
    return _eval(z, _CPSI, lambda w: (np.expm1(w) - w) / (w * w))


def int_exp(delta, s):
    """int_0^s e^{i delta theta} d theta."""
    return s * phi1(1j * np.asarray(delta) * s)


def int_exp_theta(delta, s):
    """int_0^s e^{i delta theta} theta d theta."""
    return s * s * phi2(1j * np.asarray(delta) * s)


def int_exp_rev(delta, s):
    """int_0^s e^{i delta theta} (s - theta) d theta."""
    return s * s * psi(1j * np.asarray(delta) * s)
