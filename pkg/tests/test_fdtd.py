import mpmath as mp
import numpy as np
import pytest

from kgbench import fdtd
from kgbench.errors import BlowUpError, ConvergenceError
from kgbench.fdtd import CnfdSolveConfig, discrete_energy, fdtd_first_step
from kgbench.problem import InitialData, sample_data
from kgbench.schemes import grid_for_h, integrate, lffd_delta, lffd_mesh

from conftest import params, single_mode

TIGHT = CnfdSolveConfig(tol=1e-14)


def test_first_step_matches_extended_precision(grid64):
    p = params(0.5)
    tau = 0.05
    d = sample_data("initKG", grid64)
    u1 = fdtd_first_step(d, p, tau, grid64).u_curr
    mp.mp.dps = 40
    s = mp.sin(mp.mpf(tau) / mp.mpf(p.eps) ** 2)
    h = mp.mpf(grid64.h)
    N = grid64.N
    phi1 = [mp.mpf(float(v)) for v in d.phi1]
    phi2 = [mp.mpf(float(v)) for v in d.phi2]
    worst = 0
    for j in range(N):
        d2 = (phi1[(j + 1) % N] - 2 * phi1[j] + phi1[j - 1]) / h**2
        ref = phi1[j] + s * phi2[j] + mp.mpf(tau) * s / 2 * (d2 - s / tau * phi1[j] - phi1[j] ** 3)
        worst = max(worst, abs(float(ref) - u1[j]))
    assert worst < 1e-13


def _scalar_recurrence(kind, l, grid, eps, tau, nsteps, c2):
    """Amplitude of cos(mu_l x) under the lam=0 recurrence, mode by mode."""
    e2 = eps * eps
    d2 = -4.0 / grid.h**2 * np.sin(np.pi * l / grid.N) ** 2
    s = np.sin(tau / e2)
    a0, a1 = 1.0, 1.0 + s * c2 + 0.5 * tau * s * (d2 - s / tau)
    for _ in range(nsteps - 1):
        if kind == "lffd":
            a2 = 2 * a1 - a0 + tau**2 / e2 * (d2 - 1 / e2) * a1
        else:
            beta = -0.5 * d2 + 0.5 / e2
            a2 = 2 * e2 / tau**2 / (e2 / tau**2 + beta) * a1 - a0
        a0, a1 = a1, a2
    return a1


@pytest.mark.parametrize("kind", ["cnfd", "sifd", "lffd"])
@pytest.mark.parametrize("l", [0, 3, 17])
def test_linear_full_grid_matches_mode_recurrence(grid64, kind, l):
    eps, tau, n = 0.5, 0.01, 60
    mode = single_mode(grid64, l)
    d = InitialData(mode, 0.3 * mode)
    opts = {"cnfd": TIGHT} if kind == "cnfd" else {}
    u = integrate(kind, d, params(eps, lam=0.0), grid64, tau, n * tau, **opts)
    amp = _scalar_recurrence(kind, l, grid64, eps, tau, n, 0.3)
    assert np.max(np.abs(u - amp * mode)) < 1e-10


def test_cnfd_conserves_discrete_energy(grid256):
    p = params(0.5)
    cfg = CnfdSolveConfig(tol=1e-13)
    s = fdtd_first_step(sample_data("initKG", grid256), p, 1e-3, grid256)
    e0 = discrete_energy(s)
    for _ in range(1000):
        s = fdtd.step_cnfd(s, cfg)
    assert abs(discrete_energy(s) - e0) / e0 <= 1e-10


@pytest.mark.parametrize("kind", ["cnfd", "sifd", "lffd"])
def test_time_reversal(grid64, kind):
    p = params(0.5)
    tau = 0.005
    d = sample_data("initKG", grid64)
    s = fdtd_first_step(d, p, tau, grid64)
    step = {"cnfd": lambda st: fdtd.step_cnfd(st, TIGHT), "sifd": fdtd.step_sifd,
            "lffd": fdtd.step_lffd}[kind]
    for _ in range(100):
        s = step(s)
    s = fdtd.reverse(s)
    for _ in range(100):
        s = step(s)
    assert np.max(np.abs(s.u_curr - d.phi1)) < 1e-10


def test_lffd_blows_up_on_coarse_mesh():
    tau, h = lffd_mesh(0.25, 0)
    grid = grid_for_h(h, (-16.0, 16.0))
    with pytest.raises(BlowUpError):
        integrate("lffd", sample_data("initKG", grid), params(0.25), grid, tau, 1.0)


def test_lffd_stable_on_rule_mesh():
    tau, h = lffd_mesh(0.25, 2)
    grid = grid_for_h(h, (-16.0, 16.0))
    u = integrate("lffd", sample_data("initKG", grid), params(0.25), grid, tau, 1.0)
    assert np.max(np.abs(u)) < 10


def test_lffd_mesh_rule():
    assert lffd_delta(1.0, 0) == 1.0
    assert lffd_delta(0.25, 0) == 1.0
    assert lffd_delta(0.25, 2) == 0.0625
    tau, h = lffd_mesh(0.5, 1)
    assert tau == pytest.approx(0.2 / 8)
    assert h == pytest.approx(0.5 / (8 * 0.25))


def test_cnfd_nonconvergence_is_reported(grid64):
    s = fdtd_first_step(sample_data("initKG", grid64), params(1.0), 0.1, grid64)
    with pytest.raises(ConvergenceError):
        fdtd.step_cnfd(s, CnfdSolveConfig(tol=1e-30, max_iter=2))


def test_config_validation():
    with pytest.raises(ValueError):
        CnfdSolveConfig(tol=0)
    with pytest.raises(ValueError):
        CnfdSolveConfig(max_iter=0)


def test_fd_needs_two_steps(grid64):
    with pytest.raises(ValueError):
        integrate("sifd", sample_data("initKG", grid64), params(1.0), grid64, 0.5, 0.5)
