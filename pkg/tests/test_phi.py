from math import factorial

import mpmath as mp
import numpy as np
import pytest

from kgbench.phi import CROSSOVER, int_exp, int_exp_rev, int_exp_theta, phi1, phi2, psi


def series(z, k0, weight):
    return sum(weight(k) * z**k / factorial(k + k0) for k in range(50))


PHI = {
    "phi1": (phi1, lambda z: series(z, 1, lambda k: 1)),
    "phi2": (phi2, lambda z: series(z, 0, lambda k: 1 / (k + 2))),
    "psi": (psi, lambda z: series(z, 2, lambda k: 1)),
}


@pytest.mark.parametrize("name", sorted(PHI))
@pytest.mark.parametrize("z", [0.0, 1e-9, 0.3j, -0.2 + 0.1j, 0.49, 0.51j, 1.0 - 1.0j, 3.0j])
def test_against_long_series(name, z):
    f, ref = PHI[name]
    assert abs(f(np.array([z]))[0] - ref(complex(z))) < 1e-14


@pytest.mark.parametrize("name", sorted(PHI))
def test_continuous_across_crossover(name):
    f, _ = PHI[name]
    z = np.array([CROSSOVER * (1 - 1e-12), CROSSOVER * (1 + 1e-12)]) * 1j
    a, b = f(z)
    assert abs(a - b) < 1e-12


@pytest.mark.parametrize("delta", [0.0, 1e-8, 2.5, 400.0])
def test_integrals_against_quadrature(delta):
    s = 0.37
    mp.mp.dps = 30

    def q(w):
        re = mp.quad(lambda th: mp.cos(delta * th) * w(th), [0, s])
        im = mp.quad(lambda th: mp.sin(delta * th) * w(th), [0, s])
        return complex(re, im)

    assert abs(int_exp(delta, s) - q(lambda th: 1)) < 1e-14
    assert abs(int_exp_theta(delta, s) - q(lambda th: th)) < 1e-14
    assert abs(int_exp_rev(delta, s) - q(lambda th: s - th)) < 1e-14


def test_large_arguments_stay_finite():
    z = 1j * np.array([1e3, 1e6, 1e9])
    for f in (phi1, phi2, psi):
        assert np.all(np.isfinite(f(z)))
