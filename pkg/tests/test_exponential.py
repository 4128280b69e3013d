from dataclasses import replace

import numpy as np
import pytest

from kgbench import exponential as ex
from kgbench.harness.reference import linear_solution
from kgbench.harness.sweep import SweepSpec, run_sweep
from kgbench.problem import InitialData, energy, sample_data
from kgbench.spectral import Grid1d, Grid2d, inv
from kgbench.schemes import integrate

from conftest import params


@pytest.fixture
def grid128():
    return Grid1d(-16.0, 16.0, 128)


@pytest.mark.parametrize("scheme", ["ewi-fp", "ts-fp", "iei-fp"])
@pytest.mark.parametrize("eps", [1.0, 0.5, 0.125])
def test_linear_problem_is_exact(grid128, scheme, eps):
    p = params(eps, lam=0.0)
    d = sample_data("initKG", grid128)
    tau = 0.05
    u = integrate(scheme, d, p, grid128, tau, 100 * tau)
    ref = inv(linear_solution(d, p, grid128, 100 * tau)[0]).real
    assert np.max(np.abs(u - ref)) < 1e-10


def test_ewi_reversal_with_frozen_shift(grid128):
    # alpha is a running maximum, so reversal is exact once it stops growing
    p = params(0.5)
    d = sample_data("initKG", grid128)
    s = replace(ex.ewi_init(d, p, grid128, 0.01), alpha=2.0)
    for _ in range(100):
        s = ex.step_ewi(s)
    assert s.alpha == 2.0
    s = ex.ewi_reverse(s)
    for _ in range(99):
        s = ex.step_ewi(s)
    assert np.max(np.abs(s.u - d.phi1)) < 1e-10
    assert np.max(np.abs(-s.ut - d.phi2 / p.eps**2)) < 1e-10


def test_ewi_shift_is_nondecreasing(grid128):
    s = ex.ewi_init(sample_data("initKG", grid128), params(0.5), grid128, 0.01)
    seen = [s.alpha]
    for _ in range(50):
        s = ex.step_ewi(s)
        seen.append(s.alpha)
    assert np.all(np.diff(seen) >= 0)
    assert seen[1] == pytest.approx(np.max(sample_data("initKG", grid128).phi1 ** 2))


def test_ts_reversal(grid128):
    d = sample_data("initKG", grid128)
    s = ex.ts_init(d, params(0.25), grid128, 0.01)
    for _ in range(100):
        s = ex.step_tsfp(s)
    for _ in range(100):
        s = ex.ts_inverse_step(s)
    assert s.n == 0
    assert np.max(np.abs(s.u - d.phi1)) < 1e-10


def test_ts_energy_near_conservation(grid128):
    p = params(0.5)
    s = ex.ts_init(sample_data("initKG", grid128), p, grid128, 0.005)
    e0 = energy(s.u, s.v, p, grid128)
    for _ in range(200):
        s = ex.step_tsfp(s)
    assert abs(energy(s.u, s.v, p, grid128) - e0) / e0 < 1e-3


def test_ts_2d_matches_1d_on_separable_linear_data():
    g2 = Grid2d.square(-4.0, 4.0, 32)
    g1 = g2.gx
    p = params(0.5, lam=0.0)
    X, _ = g2.mesh
    f = np.exp(-X**2)
    s2 = ex.ts_init(InitialData(f, 0 * f), p, g2, 0.01)
    s1 = ex.ts_init(InitialData(np.exp(-g1.x**2), 0 * g1.x), p, g1, 0.01)
    for _ in range(20):
        s2 = ex.step_tsfp_2d(s2)
        s1 = ex.step_tsfp(s1)
    assert np.max(np.abs(s2.u - s1.u[:, None])) < 1e-12


def test_ts_published_cell():
    t = run_sweep(SweepSpec.temporal("ts-fp", [1.0], [0.2]))
    e = t.errors[0, 0]
    assert e == pytest.approx(8.49e-3, rel=0.15)
