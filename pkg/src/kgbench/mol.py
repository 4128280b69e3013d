"""Method-of-lines reference: Fourier collocation in x, adaptive DOP853 in t.

The linear part is removed by the interaction picture.  With
psi_l = u_l - i v_l / omega_l one has psi' = i omega psi + forcing, so
beta = exp(-i omega t) psi obeys

    beta' = (i lam / (eps^2 omega)) exp(-i omega t) (u^3)_l,

which is non-stiff and is integrated by scipy's DOP853.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import solve_ivp

from .problem import InitialData, NkgeParams
from .spectral import Grid1d, fwd, inv


def _conj_flip(c: np.ndarray) -> np.ndarray:
    """Map coefficient array c_l to c_{-l} (FFT order)."""
    return np.roll(c[::-1], 1)


def mol_solve(data: InitialData, p: NkgeParams, grid: Grid1d, t_end: float,
              rtol: float = 1e-12, atol: float = 1e-14) -> tuple[np.ndarray, np.ndarray]:
    """Return (u, u_t) coefficient arrays at t_end."""
    eps2 = p.eps**2
    w = np.sqrt(1.0 + eps2 * grid.mu**2) / eps2
    u0 = fwd(np.asarray(data.phi1, dtype=float))
    v0 = fwd(np.asarray(data.phi2, dtype=float) / eps2)
    beta0 = u0 - 1j * v0 / w
    coef = 1j * p.lam / (eps2 * w)
    N = grid.N

    def unpack(t, y):
        beta = y[:N] + 1j * y[N:]
        psi = np.exp(1j * w * t) * beta
        uc = 0.5 * (psi + np.conj(_conj_flip(psi)))
        return beta, psi, uc

    def rhs(t, y):
        _, _, uc = unpack(t, y)
        u = inv(uc).real
        db = coef * np.exp(-1j * w * t) * fwd(u**3)
        return np.concatenate([db.real, db.imag])

    y0 = np.concatenate([beta0.real, beta0.imag])
    sol = solve_ivp(rhs, (0.0, t_end), y0, method="DOP853", rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"MOL integration failed: {sol.message}")
    y = sol.y[:, -1]
    _, psi, uc = unpack(t_end, y)
    # v_l = i omega (u_l - psi_l)
    vc = 1j * w * (psi - uc)
    return uc, vc
