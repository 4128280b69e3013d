import numpy as np
import pytest

from kgbench import uoa
from kgbench.harness.reference import linear_solution
from kgbench.problem import sample_data
from kgbench.schemes import integrate
from kgbench.spectral import Grid1d, fwd, inv

from conftest import params


@pytest.fixture
def grid128():
    return Grid1d(-16.0, 16.0, 128)


def _self_ratio(scheme, grid, eps, taus, t_end=0.5, **opts):
    d = sample_data("initKG", grid)
    p = params(eps)
    ref = fwd(integrate(scheme, d, p, grid, taus[-1] / 16, t_end, **opts))
    e = [np.max(np.abs(fwd(integrate(scheme, d, p, grid, tau, t_end, **opts)) - ref))
         for tau in taus]
    return e[0] / e[1]


@pytest.mark.parametrize("scheme", ["iei-fp", "mti-fp2"])
@pytest.mark.parametrize("eps", [1.0, 0.125])
def test_second_order_in_time(grid128, scheme, eps):
    assert 3.3 < _self_ratio(scheme, grid128, eps, (0.005, 0.0025)) < 4.7


@pytest.mark.parametrize("variant", uoa.GAMMA_VARIANTS)
def test_iei_variants_linear_exact(grid128, variant):
    p = params(0.25, lam=0.0)
    d = sample_data("initKG", grid128)
    u = integrate("iei-fp", d, p, grid128, 0.05, 1.0, variant=variant)
    ref = inv(linear_solution(d, p, grid128, 1.0)[0]).real
    assert np.max(np.abs(u - ref)) < 1e-10


def test_iei_variants_differ_only_at_second_order(grid128):
    d = sample_data("initKG", grid128)
    p = params(0.5)
    a = integrate("iei-fp", d, p, grid128, 0.01, 0.5, variant="literal")
    b = integrate("iei-fp", d, p, grid128, 0.01, 0.5, variant="derived")
    assert 0 < np.max(np.abs(a - b)) < 1e-2


def test_iei_rejects_unknown_variant(grid128):
    with pytest.raises(ValueError):
        uoa.iei_init(sample_data("initKG", grid128), params(1.0), grid128, 0.1, "other")


def test_iei_initial_state(grid128):
    d = sample_data("initKG", grid128)
    s = uoa.iei_init(d, params(0.5), grid128, 0.1)
    assert np.max(np.abs(s.u - d.phi1)) < 1e-13


def test_mti2_initial_reconstruction(grid128):
    d = sample_data("initKG", grid128)
    p = params(0.25)
    s = uoa.mti2_initialize(d, p, grid128, 0.01)
    u, ut = uoa.mti2_reconstruct(s, 0.0)
    assert np.max(np.abs(u - d.phi1)) < 1e-12
    assert np.max(np.abs(ut - d.phi2 / p.eps**2)) < 1e-9


def test_mti2_linear_exact(grid128):
    p = params(0.25, lam=0.0)
    d = sample_data("initKG", grid128)
    u = integrate("mti-fp2", d, p, grid128, 0.05, 1.0)
    ref = inv(linear_solution(d, p, grid128, 1.0)[0]).real
    assert np.max(np.abs(u - ref)) < 1e-10


@pytest.mark.parametrize("scheme", ["iei-fp", "mti-fp2"])
def test_uniform_in_eps(grid128, scheme):
    # same tau, eps spanning the resolved and the oscillatory regime
    d = sample_data("initKG", grid128)
    errs = []
    for eps in (1.0, 2.0**-4, 2.0**-7):
        p = params(eps)
        ref = fwd(integrate("tsf-fp2", d, p, grid128, 1e-4, 0.2, xi_points=32))
        errs.append(np.max(np.abs(fwd(integrate(scheme, d, p, grid128, 0.01, 0.2)) - ref)))
    assert max(errs) < 5e-4
