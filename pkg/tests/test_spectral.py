from decimal import Decimal, getcontext

import numpy as np
import pytest
from scipy.integrate import trapezoid

from kgbench.errors import DimensionError, NumericError
from kgbench.problem import sample_data
from kgbench.spectral import (
    Grid1d, Grid2d, SpectralField, SymbolFn, apply_symbol, d_eps_symbol, dx_symbol, dxx_symbol,
    fwd, h1_norm_coeffs, inv, inv_sqrt_symbol, interp_to, pad_coeffs, project_coeffs,
)


def naive_dft(v):
    N = len(v)
    j = np.arange(N)
    return np.array([np.sum(v * np.exp(-2j * np.pi * l * j / N)) / N for l in range(N)])


class TestTransforms:
    def test_constant_field_is_dc(self, grid64):
        c = fwd(np.full(grid64.N, 3.5))
        assert c[0] == pytest.approx(3.5)
        assert np.max(np.abs(c[1:])) < 1e-15

    def test_single_cosine(self, grid64):
        c = fwd(np.cos(grid64.mu[1] * (grid64.x - grid64.a)))
        assert c[1] == pytest.approx(0.5)
        assert c[-1] == pytest.approx(0.5)
        rest = np.delete(c, [1, grid64.N - 1])
        assert np.max(np.abs(rest)) < 1e-15

    def test_matches_naive_dft(self, rng):
        v = rng.standard_normal(64)
        assert np.max(np.abs(fwd(v) - naive_dft(v))) < 1e-12

    def test_round_trip(self, rng):
        v = rng.standard_normal(128)
        assert np.allclose(inv(fwd(v)).real, v, atol=1e-14)


class TestGrid:
    def test_rejects_odd_or_tiny(self):
        with pytest.raises(DimensionError):
            Grid1d(0, 1, 7)
        with pytest.raises(DimensionError):
            Grid1d(0, 1, 2)
        with pytest.raises(DimensionError):
            Grid1d(1, 0, 8)

    def test_geometry(self, grid256):
        assert grid256.h == 0.125
        assert grid256.x[0] == -16.0
        assert grid256.nodes[-1] == 16.0
        assert grid256.mu[1] == pytest.approx(2 * np.pi / 32)
        assert grid256.modes[grid256.nyquist] == -128

    def test_hashable_value_type(self):
        assert Grid1d(-1, 1, 8) == Grid1d(-1, 1, 8)
        assert len({Grid1d(-1, 1, 8), Grid1d(-1, 1, 8)}) == 1


class TestSymbols:
    def test_dxx_eigenfunction(self, grid64):
        f = np.cos(grid64.mu[2] * (grid64.x - grid64.a))
        out = apply_symbol(SpectralField.from_values(grid64, f), dxx_symbol(), grid64).real
        assert np.allclose(out, -grid64.mu[2] ** 2 * f, atol=1e-13)

    def test_inverse_sqrt_closed_form(self):
        g = Grid1d(-16, 16, 64)
        sym = inv_sqrt_symbol(1.0).on(g)
        mu1 = 2 * np.pi / 32
        assert sym[1].real == pytest.approx(1 / np.sqrt(1 + mu1**2), rel=1e-15)

    def test_d_eps_no_cancellation(self):
        g = Grid1d(-16, 16, 64)
        eps = 0.01
        getcontext().prec = 50
        mu3 = Decimal(2) * Decimal("3.14159265358979323846264338327950288419716939937510") * 3 / 32
        e = Decimal(eps)
        exact = ((1 + e * e * mu3 * mu3).sqrt() - 1) / (e * e)
        got = d_eps_symbol(eps).on(g)[3].real
        assert abs(got - float(exact)) / float(exact) < 1e-12

    def test_odd_symbol_zeroes_nyquist(self, grid64):
        s = dx_symbol().on(grid64)
        assert s[grid64.nyquist] == 0

    def test_nonfinite_symbol_reports_mode(self, grid64):
        bad = SymbolFn(lambda mu: 1.0 / mu, "1/mu")
        with pytest.raises(NumericError) as ei:
            bad.on(grid64)
        assert ei.value.mode == 0

    def test_field_grid_mismatch(self, grid64):
        with pytest.raises(DimensionError):
            SpectralField.from_values(grid64, np.zeros(10))


class TestH1:
    def test_zero(self, grid64):
        assert h1_norm_coeffs(np.zeros(64, complex), grid64) == 0.0

    def test_single_mode(self, grid64):
        c = np.zeros(64, complex)
        c[1] = 0.3 - 0.4j
        mu1 = grid64.mu[1]
        assert h1_norm_coeffs(c, grid64) == pytest.approx(0.5 * np.sqrt(32 * (1 + mu1**2)), rel=1e-14)

    def test_matches_refined_quadrature(self, grid64, rng):
        u = rng.standard_normal(64)
        v = rng.standard_normal(64)
        c = fwd(u - v)
        c[grid64.nyquist] = 0  # the unpaired mode is counted once by the metric
        fine = Grid1d(grid64.a, grid64.b, 64 * 16)
        cf = pad_coeffs(c, fine.N)
        w = inv(cf).real
        dw = inv(1j * fine.mu_odd() * cf).real
        wx = np.append(w, w[0])
        dwx = np.append(dw, dw[0])
        quad = trapezoid(wx**2 + dwx**2, fine.nodes)
        assert h1_norm_coeffs(c, grid64) == pytest.approx(np.sqrt(quad), rel=1e-8)


class TestProjection:
    def test_band_limited_projection_is_exact(self):
        fine = Grid1d(-16, 16, 64)
        x = fine.x - fine.a
        f = 1 + np.cos(fine.mu[2] * x) + 0.5 * np.sin(fine.mu[3] * x)
        cc = project_coeffs(fwd(f), 16)
        coarse = Grid1d(-16, 16, 16)
        assert np.allclose(cc, fwd(1 + np.cos(coarse.mu[2] * (coarse.x - coarse.a))
                                   + 0.5 * np.sin(coarse.mu[3] * (coarse.x - coarse.a))),
                           atol=1e-15)

    def test_parseval_on_retained_modes(self, rng):
        c = fwd(rng.standard_normal(64))
        g16 = Grid1d(-16, 16, 16)
        p = project_coeffs(c, 16)
        keep = np.r_[c[:8], c[-7:]]
        direct = np.sqrt(32 * np.sum((1 + np.r_[g16.mu[:8], g16.mu[-7:]] ** 2) * np.abs(keep) ** 2)
                         + 32 * (1 + g16.mu[8] ** 2) * abs(p[8]) ** 2)
        assert h1_norm_coeffs(p, g16) == pytest.approx(direct, rel=1e-14)

    def test_smooth_data_projection(self):
        fine, coarse = Grid1d(-16, 16, 2048), Grid1d(-16, 16, 256)
        cf = fwd(sample_data("initKG", fine).phi1)
        cc = fwd(sample_data("initKG", coarse).phi1)
        assert np.max(np.abs(project_coeffs(cf, 256) - cc)) < 1e-10

    def test_pad_then_project_is_identity(self, rng):
        c = fwd(rng.standard_normal(32))
        c[16] = 0
        assert np.allclose(project_coeffs(pad_coeffs(c, 128), 32), c, atol=1e-16)
        assert np.allclose(interp_to(interp_to(c, 64), 32), c, atol=1e-16)


    def test_nyquist_is_halved_by_pad_then_project(self):
        c = np.zeros(16, complex)
        c[8] = 1.0
        assert project_coeffs(pad_coeffs(c, 64), 16)[8] == pytest.approx(0.5)


def test_grid2d_square():
    g = Grid2d.square(-16, 16, 8)
    assert g.shape == (8, 8)
    assert g.mu2[1, 1] == pytest.approx(2 * (2 * np.pi / 32) ** 2)
