"""Limit integrators LI-FP1 and LI-FP2.

Both integrate the limiting Schroedinger equation 2i z_t - z_xx + 3 lam |z|^2 z = 0
by Strang splitting and rebuild u from the phase ansatz.  LI-FP2 also
carries the corrector field v and adds eps^2 w at output times.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .errors import check_finite
from .problem import InitialData, NkgeParams, nlse_initial
from .spectral import Grid1d, fwd, inv


@dataclass(frozen=True)
class LiState:
    z: np.ndarray
    v: np.ndarray | None
    n: int
    tau: float
    p: NkgeParams
    grid: Grid1d
    chi: np.ndarray | None = None  # chi of the current z, reused next step

    @property
    def t(self) -> float:
        return self.n * self.tau

    @property
    def order(self) -> int:
        return 1 if self.v is None else 2


def _free_half(c: np.ndarray, grid: Grid1d, tau: float) -> np.ndarray:
    return np.exp(0.25j * grid.mu**2 * tau) * c


def step_nlse_tsfp(z: np.ndarray, tau: float, lam: float, grid: Grid1d) -> np.ndarray:
    z1 = inv(_free_half(fwd(z), grid, tau))
    z2 = np.exp(1.5j * lam * tau * np.abs(z1) ** 2) * z1
    out = inv(_free_half(fwd(z2), grid, tau))
    check_finite(out, what="z")
    return out


def reconstruct_li1(z: np.ndarray, t: float, eps: float) -> np.ndarray:
    return 2.0 * (np.exp(1j * t / eps**2) * z).real


def li2_initial_v(z0: np.ndarray, lam: float, grid: Grid1d) -> np.ndarray:
    zb = np.conj(z0)
    dxx = inv(-(grid.mu**2) * fwd(z0 - zb))
    return (-0.5 * lam * z0**3 + 0.25 * lam * zb**3 + 1.5 * lam * np.abs(z0) ** 2 * zb
            + 0.5 * dxx)


def li2_source(z: np.ndarray, lam: float, grid: Grid1d) -> np.ndarray:
    """chi = z_xxxx/4 + (51 lam^2/8)|z|^4 z - (3 lam/2)(|z|^2 z)_xx, spectrally."""
    mu2 = grid.mu**2
    a2 = np.abs(z) ** 2
    return (inv(0.25 * mu2**2 * fwd(z)) + 51.0 / 8.0 * lam**2 * a2**2 * z
            + 1.5 * lam * inv(mu2 * fwd(a2 * z)))


def li2_matrix(zr: np.ndarray, zi: np.ndarray, lam: float) -> np.ndarray:
    """Nodal 2x2 potential matrices A(zR, zI), shape (N, 2, 2)."""
    k = -1.5 * lam
    A = np.empty(zr.shape + (2, 2))
    A[..., 0, 0] = k * 2 * zr * zi
    A[..., 0, 1] = k * (zr**2 + 3 * zi**2)
    A[..., 1, 0] = k * (-3 * zr**2 - zi**2)
    A[..., 1, 1] = -A[..., 0, 0]
    return A


def step_v_flow(v: np.ndarray, z_n: np.ndarray, z_np1: np.ndarray, tau: float, lam: float,
                grid: Grid1d, chi_n: np.ndarray | None = None,
                chi_np1: np.ndarray | None = None) -> np.ndarray:
    """Kinetic half step, exponential-trapezoidal potential step, kinetic half step."""
    if chi_n is None:
        chi_n = li2_source(z_n, lam, grid)
    if chi_np1 is None:
        chi_np1 = li2_source(z_np1, lam, grid)
    v1 = inv(_free_half(fwd(v), grid, tau))
    alpha = np.ascontiguousarray(v1.real)
    beta = np.ascontiguousarray(v1.imag)
    kernels.li2_potential(
        np.ascontiguousarray(z_n.real), np.ascontiguousarray(z_n.imag),
        np.ascontiguousarray(z_np1.real), np.ascontiguousarray(z_np1.imag),
        alpha, beta, np.ascontiguousarray(chi_n, dtype=complex),
        np.ascontiguousarray(chi_np1, dtype=complex), float(tau), float(lam))
    out = inv(_free_half(fwd(alpha + 1j * beta), grid, tau))
    check_finite(out, what="v")
    return out


def li2_w(z: np.ndarray, v: np.ndarray, t: float, eps: float, lam: float) -> np.ndarray:
    e1 = np.exp(1j * t / eps**2)
    e3 = e1**3
    return (-1.5 * lam * np.abs(z) ** 2 * (e1 * z).real
            + 0.25 * lam * (e3 * z**3).real
            + (e1 * v).real)


def reconstruct_li2(z: np.ndarray, v: np.ndarray, t: float, eps: float, lam: float) -> np.ndarray:
    return reconstruct_li1(z, t, eps) + eps**2 * li2_w(z, v, t, eps, lam)


def li_init(data: InitialData, p: NkgeParams, grid: Grid1d, tau: float, order: int = 1) -> LiState:
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    z0 = nlse_initial(data).astype(complex)
    v0 = li2_initial_v(z0, p.lam, grid) if order == 2 else None
    return LiState(z0, v0, 0, tau, p, grid)


def step_li(s: LiState) -> LiState:
    z_new = step_nlse_tsfp(s.z, s.tau, s.p.lam, s.grid)
    if s.v is None:
        return replace(s, z=z_new, n=s.n + 1)
    chi_n = s.chi if s.chi is not None else li2_source(s.z, s.p.lam, s.grid)
    chi_np1 = li2_source(z_new, s.p.lam, s.grid)
    v_new = step_v_flow(s.v, s.z, z_new, s.tau, s.p.lam, s.grid, chi_n, chi_np1)
    return replace(s, z=z_new, v=v_new, n=s.n + 1, chi=chi_np1)


def li_solution(s: LiState) -> np.ndarray:
    if s.v is None:
        return reconstruct_li1(s.z, s.t, s.p.eps)
    return reconstruct_li2(s.z, s.v, s.t, s.p.eps, s.p.lam)
