import numpy as np
import pytest
from scipy.integrate import quad, solve_ivp

from kgbench import ua
from kgbench.harness.reference import linear_solution
from kgbench.problem import sample_data
from kgbench.schemes import integrate
from kgbench.spectral import Grid1d, fwd, inv

from conftest import params


def cquad(f, a, b):
    re = quad(lambda x: f(x).real, a, b, epsabs=1e-14, epsrel=1e-12, limit=500)[0]
    im = quad(lambda x: f(x).imag, a, b, epsabs=1e-14, epsrel=1e-12, limit=500)[0]
    return re + 1j * im


def _wave_oracle(om, eps, kappa, s):
    e2 = eps * eps
    p = cquad(lambda th: np.sin(om * (s - th)) / (e2 * om) * np.exp(1j * kappa * th), 0, s)
    q = cquad(lambda th: np.sin(om * (s - th)) / (e2 * om) * np.exp(1j * kappa * th) * th, 0, s)
    dp = cquad(lambda th: np.cos(om * (s - th)) / e2 * np.exp(1j * kappa * th), 0, s)
    dq = cquad(lambda th: np.cos(om * (s - th)) / e2 * np.exp(1j * kappa * th) * th, 0, s)
    return p, q, dp, dq


@pytest.mark.parametrize("eps,s", [(1.0, 0.2), (0.1, 0.01), (0.1, 0.05)])
@pytest.mark.parametrize("where", ["mode5", "resonant", "near-resonant"])
def test_wave_kernels_against_quadrature(eps, s, where):
    kappa = 3.0 / eps**2
    om = {"mode5": np.sqrt(1 + eps**2 * 25) / eps**2, "resonant": kappa,
          "near-resonant": kappa * (1 + 1e-9)}[where]
    got = ua.wave_kernels(np.array([om]), eps, kappa, s)
    for g, r in zip(got, _wave_oracle(om, eps, kappa, s)):
        assert abs(g[0] - r) < 1e-10 * max(1.0, abs(r))


@pytest.mark.parametrize("eps,mu,s", [(1.0, 0.0, 0.3), (0.5, 1.3, 0.3), (0.1, 5.0, 0.02)])
def test_nlsw_kernels_against_ode(eps, mu, s, rng):
    # eps^2 z'' + 2i z' + mu^2 z = -(g0 + theta g1)
    e2 = eps * eps
    z0, z1, g0, g1 = rng.standard_normal(4) + 1j * rng.standard_normal(4)

    def rhs(t, y):
        z, dz = y[0] + 1j * y[1], y[2] + 1j * y[3]
        ddz = (-(g0 + t * g1) - 2j * dz - mu * mu * z) / e2
        return [dz.real, dz.imag, ddz.real, ddz.imag]

    sol = solve_ivp(rhs, (0, s), [z0.real, z0.imag, z1.real, z1.imag], method="DOP853",
                    rtol=1e-13, atol=1e-15)
    zs = sol.y[0, -1] + 1j * sol.y[1, -1]
    dzs = sol.y[2, -1] + 1j * sol.y[3, -1]
    a, b, c, d, da, db, dc, dd = (k[0] for k in ua.nlsw_kernels(np.array([mu]), eps, s))
    assert abs(a * z0 + e2 * b * z1 - c * g0 - d * g1 - zs) < 1e-10
    assert abs(da * z0 + e2 * db * z1 - dc * g0 - dd * g1 - dzs) < 1e-10 * max(1, abs(dzs))


def test_lambda_roots():
    mu = np.array([0.0, 2.0])
    lp, lm = ua.lambda_pm(mu, 0.5)
    for r in (lp, lm):
        assert np.allclose(0.25 * r**2 + 2 * r - mu**2, 0, atol=1e-10)


@pytest.fixture
def grid128():
    return Grid1d(-16.0, 16.0, 128)


@pytest.mark.parametrize("scheme", ["mti-fp", "tsf-fp1", "tsf-fp2"])
def test_linear_problem(grid128, scheme):
    p = params(0.25, lam=0.0)
    d = sample_data("initKG", grid128)
    u = integrate(scheme, d, p, grid128, 0.05, 1.0)
    ref = inv(linear_solution(d, p, grid128, 1.0)[0]).real
    assert np.max(np.abs(u - ref)) < 1e-10


@pytest.mark.parametrize("order", [1, 2])
def test_tsf_prepared_data_reproduces_initial_state(grid128, order):
    p = params(0.125)
    d = sample_data("initKG", grid128)
    s = ua.tsf_init(d, p, grid128, 0.01, order, 32)
    assert np.max(np.abs(s.U.sum(axis=0) - ua.tsf_v0(d, p, grid128))) < 1e-12
    assert np.max(np.abs(ua.tsf_reconstruct(s, 0.0) - d.phi1)) < 1e-12


def test_tsf_xi_operators():
    c = np.zeros((8, 3), complex)
    c[0], c[2] = 1.0, 2.0
    assert np.allclose(ua.avg_op(c)[2], 0)
    li = ua.inv_L(c)
    assert np.allclose(li[0], 0)
    assert np.allclose(li[2], 2.0 / 2j)
    with pytest.raises(ValueError):
        ua.tsf_prepare_initial(sample_data("initKG", Grid1d(-1, 1, 8)), params(1.0), 1,
                               Grid1d(-1, 1, 8), 3)


def test_mti_agrees_with_fine_ts(grid128):
    p = params(0.5)
    d = sample_data("initKG", grid128)
    u = integrate("mti-fp", d, p, grid128, 1e-3, 0.5)
    ref = integrate("ts-fp", d, p, grid128, 1e-4, 0.5)
    assert np.max(np.abs(u - ref)) < 1e-4


def test_mti_kernel_table_rejects_negative_tau(grid128):
    with pytest.raises(ValueError):
        ua.build_mti_kernels(params(1.0), -1.0, grid128)


def test_tsf_order(grid128):
    p = params(0.25)
    d = sample_data("initKG", grid128)
    ref = fwd(integrate("tsf-fp2", d, p, grid128, 1e-4, 0.4, xi_points=32))
    err = [np.max(np.abs(fwd(integrate("tsf-fp2", d, p, grid128, tau, 0.4, xi_points=32)) - ref))
           for tau in (0.02, 0.01)]
    assert 3.2 < err[0] / err[1] < 5.0
