"""Finite-difference time-domain schemes: CNFD (alias ECFD), SIFD, LFFD.

All three are three-level schemes started by the regularised first step
in which tau/eps^2 is replaced by sin(tau/eps^2).  The implicit operators
eps^2/tau^2 - D2/2 + 1/(2 eps^2) are circulant and solved by FFT.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from scipy.fft import irfft, rfft

from . import kernels
from .errors import ConvergenceError, check_finite
from .problem import InitialData, NkgeParams
from .spectral import Grid1d


@dataclass(frozen=True)
class FdtdState:
    u_prev: np.ndarray
    u_curr: np.ndarray
    n: int
    tau: float
    p: NkgeParams
    grid: Grid1d

    @property
    def t(self) -> float:
        return self.n * self.tau


@dataclass(frozen=True)
class CnfdSolveConfig:
    tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not self.tol > 0 or self.max_iter < 1:
            raise ValueError("tol must be positive and max_iter >= 1")


def d2_symbol(grid: Grid1d) -> np.ndarray:
    """Eigenvalues of the periodic second difference."""
    return -4.0 / grid.h**2 * np.sin(0.5 * grid.mu * grid.h) ** 2


def fdtd_first_step(data: InitialData, p: NkgeParams, tau: float, grid: Grid1d) -> FdtdState:
    e2 = p.eps**2
    s = np.sin(tau / e2)
    phi1 = np.asarray(data.phi1, dtype=float)
    phi2 = np.asarray(data.phi2, dtype=float)
    d2 = kernels.second_difference(np.ascontiguousarray(phi1), 1.0 / grid.h**2)
    u1 = phi1 + s * phi2 + 0.5 * tau * s * (d2 - s / tau * phi1 - p.lam * phi1**3)
    return FdtdState(phi1.copy(), u1, 1, tau, p, grid)


@lru_cache(maxsize=64)
def _half_ops(N: int, h: float, eps: float, tau: float):
    """Half-spectrum symbols (rfft layout) of the implicit FD operators."""
    e2 = eps * eps
    mu = 2.0 * np.pi * np.arange(N // 2 + 1) / (N * h)
    d2 = -4.0 / h**2 * np.sin(0.5 * mu * h) ** 2
    inv_lhs = 1.0 / (e2 / tau**2 - 0.5 * d2 + 0.5 / e2)
    rest = -0.5 * d2 + 0.5 / e2
    inv_lhs.setflags(write=False)
    rest.setflags(write=False)
    return inv_lhs, rest


def _lin_ops(s: FdtdState):
    return _half_ops(s.grid.N, s.grid.h, s.p.eps, s.tau)


def step_sifd(s: FdtdState) -> FdtdState:
    e2 = s.p.eps**2
    inv_lhs, rest = _lin_ops(s)
    up, uc = s.u_prev, s.u_curr
    rhs = e2 / s.tau**2 * rfft(2.0 * uc - up) - rest * rfft(up) - rfft(s.p.lam * uc**3)
    un = irfft(rhs * inv_lhs, n=uc.size)
    check_finite(un, s.n + 1)
    return replace(s, u_prev=uc, u_curr=un, n=s.n + 1)


def step_cnfd(s: FdtdState, cfg: CnfdSolveConfig = CnfdSolveConfig()) -> FdtdState:
    e2 = s.p.eps**2
    lam = s.p.lam
    inv_lhs, rest = _lin_ops(s)
    up, uc = s.u_prev, s.u_curr
    N = uc.size
    base = e2 / s.tau**2 * rfft(2.0 * uc - up) - rest * rfft(up)
    it = 2.0 * uc - up
    up2 = up * up
    inc = np.inf
    scale = np.sqrt(s.grid.h)
    for _ in range(cfg.max_iter):
        nl = 0.25 * lam * (it * it + up2) * (it + up)
        new = irfft((base - rfft(nl)) * inv_lhs, n=N)
        inc = scale * np.linalg.norm(new - it)
        it = new
        if inc < cfg.tol:
            break
    else:
        raise ConvergenceError(f"CNFD fixed point did not converge in {cfg.max_iter} iterations", inc)
    check_finite(it, s.n + 1)
    return replace(s, u_prev=uc, u_curr=it, n=s.n + 1)


def _lffd_coeffs(s: FdtdState):
    e2 = s.p.eps**2
    a = s.tau**2 / (e2 * s.grid.h**2)
    b = s.tau**2 / e2**2
    c = s.p.lam * s.tau**2 / e2
    return a, b, c


def run_lffd(s: FdtdState, nsteps: int) -> FdtdState:
    """Advance nsteps leap-frog steps in the compiled loop."""
    a, b, c = _lffd_coeffs(s)
    up, uc, done, blown = kernels.lffd_run(
        np.ascontiguousarray(s.u_prev), np.ascontiguousarray(s.u_curr), int(nsteps), a, b, c)
    if blown:
        check_finite(np.array([np.inf]), s.n + done)
    return replace(s, u_prev=np.asarray(up), u_curr=np.asarray(uc), n=s.n + int(nsteps))


def step_lffd(s: FdtdState) -> FdtdState:
    return run_lffd(s, 1)


def discrete_energy(s: FdtdState) -> float:
    """Energy of the level pair (u_prev, u_curr) = (u^n, u^{n+1})."""
    e2 = s.p.eps**2
    h = s.grid.h
    u0, u1 = s.u_prev, s.u_curr

    def l2(v):
        return h * np.sum(v * v)

    def dxp(v):
        return (np.roll(v, -1) - v) / h

    return float(
        e2 * l2((u1 - u0) / s.tau)
        + 0.5 * (l2(dxp(u0)) + l2(dxp(u1)))
        + 0.5 / e2 * (l2(u0) + l2(u1))
        + 0.25 * h * s.p.lam * np.sum(u0**4 + u1**4)
    )


def reverse(s: FdtdState) -> FdtdState:
    """Swap the two levels so that the recurrence runs backward in time."""
    return replace(s, u_prev=s.u_curr, u_curr=s.u_prev)
