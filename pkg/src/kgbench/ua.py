"""Uniformly accurate schemes: MTI-FP and the two-scale TSF-FP1/TSF-FP2.

MTI-FP restarts a multiscale decomposition u = e^{is/eps^2} z + c.c. + r
on every step and integrates both parts with exponential wave integrators.
All kernel integrals reduce to phi-functions of detuned frequencies, which
keeps them accurate through the resonance omega_l ~ 3/eps^2.

TSF-FP adds the fast variable xi = t/eps^2 on the torus and integrates
U_t + U_xi/eps^2 = F(t, xi, U) with Chapman-Enskog prepared data.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
import scipy.fft as sfft

from .errors import check_finite
from .phi import int_exp, int_exp_rev, int_exp_theta
from .problem import InitialData, NkgeParams
from .spectral import Grid1d, d_eps_values, fwd, inv


# ---------------------------------------------------------------- MTI-FP

@dataclass(frozen=True)
class MtiKernelTable:
    tau: float
    eps: float
    omega: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    da: np.ndarray
    db: np.ndarray
    dc: np.ndarray
    dd: np.ndarray
    p: np.ndarray
    q: np.ndarray
    dp: np.ndarray
    dq: np.ndarray


def lambda_pm(mu: np.ndarray, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """Roots lambda^+ = -(1 + sqrt)/eps^2 and lambda^- = (sqrt - 1)/eps^2."""
    dm = d_eps_values(mu, eps)
    return -(2.0 / eps**2 + dm), dm


def nlsw_kernels(mu: np.ndarray, eps: float, s: float):
    """a, b, c, d and their s-derivatives for eps^2 z'' + 2i z' - z_xx = -f."""
    e2 = eps * eps
    lp, lm = lambda_pm(mu, eps)
    ep, em = np.exp(1j * s * lp), np.exp(1j * s * lm)
    gap = lp - lm
    a = (lp * em - lm * ep) / gap
    da = 1j * lp * lm * (em - ep) / gap
    kb = -1j / (e2 * gap)
    b = kb * (ep - em)
    db = kb * 1j * (lp * ep - lm * em)
    c = kb * (int_exp(lp, s) - int_exp(lm, s))
    d = kb * (int_exp_rev(lp, s) - int_exp_rev(lm, s))
    return a, b, c, d, da, db, b.copy(), c.copy()


def wave_kernels(omega: np.ndarray, eps: float, kappa: float, s: float):
    """p, q, p', q' for int_0^s sin(omega (s - th))/(eps^2 omega) e^{i kappa th} {1, th} dth."""
    e2 = eps * eps
    ep, em = np.exp(1j * omega * s), np.exp(-1j * omega * s)
    i0m, i0p = int_exp(kappa - omega, s), int_exp(kappa + omega, s)
    i1m, i1p = int_exp_theta(kappa - omega, s), int_exp_theta(kappa + omega, s)
    p = (ep * i0m - em * i0p) / (2j * e2 * omega)
    q = (ep * i1m - em * i1p) / (2j * e2 * omega)
    dp = (ep * i0m + em * i0p) / (2.0 * e2)
    dq = (ep * i1m + em * i1p) / (2.0 * e2)
    return p, q, dp, dq


def build_mti_kernels(p: NkgeParams, tau: float, grid: Grid1d) -> MtiKernelTable:
    if not tau >= 0:
        raise ValueError("tau must be non-negative")
    eps = p.eps
    mu = grid.mu
    om = np.sqrt(1.0 + eps**2 * mu**2) / eps**2
    a, b, c, d, da, db, dc, dd = nlsw_kernels(mu, eps, tau)
    pp, qq, dpp, dqq = wave_kernels(om, eps, 3.0 / eps**2, tau)
    return MtiKernelTable(tau, eps, om, a, b, c, d, da, db, dc, dd, pp, qq, dpp, dqq)


@dataclass(frozen=True)
class MtiState:
    u: np.ndarray
    du: np.ndarray
    n: int
    tau: float
    p: NkgeParams
    grid: Grid1d

    @property
    def t(self) -> float:
        return self.n * self.tau


def mti_init(data: InitialData, p: NkgeParams, grid: Grid1d, tau: float) -> MtiState:
    return MtiState(np.array(data.phi1, dtype=float), np.asarray(data.phi2, dtype=float) / p.eps**2,
                    0, tau, p, grid)


def step_mti(s: MtiState, k: MtiKernelTable) -> MtiState:
    lam, e2 = s.p.lam, s.p.eps**2
    mu2 = s.grid.mu**2
    tau = k.tau
    z1 = 0.5 * (s.u - 1j * e2 * s.du)
    a2 = np.abs(z1) ** 2
    eta = 3 * lam * a2 * z1
    g = lam * z1**3
    dz1 = 0.5j * (inv(mu2 * fwd(z1)) + eta)
    dr1 = -2.0 * dz1.real
    deta = 6 * lam * z1 * (np.conj(z1) * dz1).real + 3 * lam * dz1 * a2
    dg = 3 * lam * z1**2 * dz1

    cz, cdz, ceta, cdeta = fwd(z1), fwd(dz1), fwd(eta), fwd(deta)
    zn = inv(k.a * cz + e2 * k.b * cdz - k.c * ceta - k.d * cdeta)
    dzn = inv(k.da * cz + e2 * k.db * cdz - k.dc * ceta - k.dd * cdeta)

    cg, cdg, cgb, cdgb = fwd(g), fwd(dg), fwd(np.conj(g)), fwd(np.conj(dg))
    cdr1 = fwd(dr1)
    om = k.omega
    cr = (np.sin(om * tau) / om * cdr1 - k.p * cg - k.q * cdg
          - np.conj(k.p) * cgb - np.conj(k.q) * cdgb)
    rn = inv(cr).real

    ph = np.exp(1j * tau / e2)
    zz = ph * zn
    w = (3 * lam * rn * 2.0 * (zz**2).real + 3 * lam * rn**2 * 2.0 * zz.real
         + 6 * lam * np.abs(zn) ** 2 * rn + lam * rn**3)
    cdr = (np.cos(om * tau) * cdr1 - k.dp * cg - k.dq * cdg
           - np.conj(k.dp) * cgb - np.conj(k.dq) * cdgb - tau / (2 * e2) * fwd(w))
    drn = inv(cdr).real

    u = 2.0 * zz.real + rn
    du = 2.0 * (ph * (dzn + 1j * zn / e2)).real + drn
    check_finite(u, s.n + 1)
    return replace(s, u=u, du=du, n=s.n + 1)


# ---------------------------------------------------------------- TSF-FP

@dataclass(frozen=True)
class TsfField:
    """U stored spectrally in both xi (axis 0) and x (axis 1)."""

    U: np.ndarray
    n: int
    tau: float
    order: int
    p: NkgeParams
    grid: Grid1d

    @property
    def t(self) -> float:
        return self.n * self.tau

    @property
    def n_xi(self) -> int:
        return self.U.shape[0]


def xi_modes(n_xi: int) -> np.ndarray:
    return np.fft.fftfreq(n_xi, d=1.0 / n_xi)


def xi_nodes(n_xi: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(n_xi) / n_xi


def avg_op(c: np.ndarray) -> np.ndarray:
    """Pi on xi-spectra: keep the mean mode."""
    out = np.zeros_like(c)
    out[0] = c[0]
    return out


def inv_L(c: np.ndarray) -> np.ndarray:
    """L^{-1}(I - Pi) on xi-spectra: divide by i l, zero on the mean."""
    l = xi_modes(c.shape[0])
    f = np.zeros_like(l, dtype=complex)
    f[1:] = 1.0 / (1j * l[1:])
    return f.reshape((-1,) + (1,) * (c.ndim - 1)) * c


class _TsfOps:
    def __init__(self, p: NkgeParams, grid: Grid1d, n_xi: int):
        if n_xi < 4 or n_xi % 2:
            raise ValueError("n_xi must be even and >= 4")
        self.p = p
        self.grid = grid
        self.n_xi = n_xi
        self.D = d_eps_values(grid.mu, p.eps)
        self.Ainv = 1.0 / np.sqrt(1.0 + p.eps**2 * grid.mu**2)
        self.xi = xi_nodes(n_xi)[:, None]
        self.eix = np.exp(1j * self.xi)
        self.emx = np.conj(self.eix)
        self.c2 = 2.0 * np.cos(self.xi)
        self.s2 = 2.0 * np.sin(self.xi)
        self.l = xi_modes(n_xi)[:, None]

    def to_nodal(self, U, t):
        """(xi, x)-spectral U -> nodal e^{itD} U."""
        return sfft.ifft2(np.exp(1j * t * self.D) * U, norm="forward")

    def cube_term(self, P):
        B = self.c2 * P.real - self.s2 * P.imag
        return B, self.emx * (B * B * B)

    def from_nodal(self, G, t):
        return (0.125j * self.p.lam * self.Ainv * np.exp(-1j * t * self.D)
                * sfft.fft2(G, norm="forward"))

    def F(self, U, t):
        _, G = self.cube_term(self.to_nodal(U, t))
        return self.from_nodal(G, t)

    def F_xi_nodal(self, phi_xi_nodal_x_coeffs, t=0.0):
        """F(t, xi_m, phi_m) for per-xi x-spectral rows; returns (xi, x)-spectral."""
        P = inv(np.exp(1j * t * self.D) * phi_xi_nodal_x_coeffs)
        _, G = self.cube_term(P)
        return self.from_nodal(G, t)

    def eval_at_xi(self, U, xi):
        """xi-Fourier interpolation of (xi, x)-spectral U at a point; x-spectral row."""
        return np.sum(np.exp(1j * self.l * xi) * U, axis=0)


def _broadcast_xi(c: np.ndarray, n_xi: int) -> np.ndarray:
    return np.broadcast_to(c, (n_xi, c.shape[-1])).copy()


def tsf_v0(data: InitialData, p: NkgeParams, grid: Grid1d) -> np.ndarray:
    """x-spectral v0 = phi1 - i (1 - eps^2 Lap)^{-1/2} phi2."""
    A = 1.0 / np.sqrt(1.0 + p.eps**2 * grid.mu**2)
    return fwd(np.asarray(data.phi1, dtype=complex)) - 1j * A * fwd(np.asarray(data.phi2, dtype=complex))


def _G1(ops: _TsfOps, phi_rows: np.ndarray) -> np.ndarray:
    """eps^2 A F(0, xi, phi(xi)) as a (xi, x)-spectral array."""
    return ops.p.eps**2 * inv_L(ops.F_xi_nodal(phi_rows, 0.0))


def _G2(ops: _TsfOps, v0: np.ndarray) -> np.ndarray:
    """-eps^4 A^2 [d_t F(0, xi, v0) + d_phi F(0, xi, v0) Pi F(0, ., v0)].

    d_t brings down i D on e^{itD} phi and -i D on e^{-itD} conj(phi) and
    -i D on the outer e^{-itD}; d_phi is the real directional derivative
    in the direction psi = Pi F.
    """
    lam = ops.p.lam
    rows = _broadcast_xi(v0, ops.n_xi)
    P = inv(rows)
    B, G = ops.cube_term(P)
    emx = np.conj(ops.eix)
    pref = 0.125j * lam * ops.Ainv
    # outer phase derivative
    dt_outer = pref * (-1j * ops.D) * fwd(G)
    dP = inv(1j * ops.D * rows)
    dB = 2.0 * (ops.eix * dP).real
    dt_inner = pref * fwd(emx * 3.0 * B**2 * dB)
    Fc = pref * fwd(G)
    psi = np.mean(Fc, axis=0)
    dpsi = 2.0 * (ops.eix * inv(psi)[None, :]).real
    dphi = pref * fwd(emx * 3.0 * B**2 * dpsi)
    bracket = dt_outer + dt_inner + dphi
    xs = sfft.fft(bracket, axis=0, norm="forward")
    return -ops.p.eps**4 * inv_L(inv_L(xs))


def tsf_prepare_initial(data: InitialData, p: NkgeParams, order: int, grid: Grid1d,
                        n_xi: int = 32) -> TsfField:
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    ops = _TsfOps(p, grid, n_xi)
    v0 = tsf_v0(data, p, grid)
    G1 = _G1(ops, _broadcast_xi(v0, n_xi))
    U1 = G1.copy()
    U1[0] += v0 - np.sum(G1, axis=0)
    if order == 1:
        return TsfField(U1, 0, 0.0, 1, p, grid)
    # rows of the first-order data at each xi node, x-spectral
    U1_rows = sfft.ifft(U1, axis=0, norm="forward")
    G1b = _G1(ops, U1_rows)
    G2 = _G2(ops, v0)
    U = G1b + G2
    U[0] += v0 - np.sum(G1b, axis=0) - np.sum(G2, axis=0)
    return TsfField(U, 0, 0.0, 2, p, grid)


def tsf_init(data: InitialData, p: NkgeParams, grid: Grid1d, tau: float, order: int,
             n_xi: int = 32) -> TsfField:
    s = tsf_prepare_initial(data, p, order, grid, n_xi)
    return replace(s, tau=tau)


_OPS_CACHE: dict = {}


def _ops_for(s: TsfField) -> _TsfOps:
    key = (s.p, s.grid, s.n_xi)
    ops = _OPS_CACHE.get(key)
    if ops is None:
        if len(_OPS_CACHE) > 16:
            _OPS_CACHE.clear()
        ops = _OPS_CACHE[key] = _TsfOps(s.p, s.grid, s.n_xi)
    return ops


def step_tsf(s: TsfField) -> TsfField:
    ops = _ops_for(s)
    tau, e2 = s.tau, s.p.eps**2
    il = 1j * ops.l
    t = s.t
    if s.order == 1:
        U = (s.U + tau * ops.F(s.U, t)) / (1.0 + il * tau / e2)
    else:
        Uh = (s.U + 0.5 * tau * ops.F(s.U, t)) / (1.0 + 0.5 * il * tau / e2)
        U = ((1.0 - 0.5 * il * tau / e2) * s.U + tau * ops.F(Uh, t + 0.5 * tau)) / (1.0 + 0.5 * il * tau / e2)
    check_finite(U, s.n + 1, "U")
    return replace(s, U=U, n=s.n + 1)


def tsf_reconstruct_v(s: TsfField, t: float | None = None) -> np.ndarray:
    """x-spectral v(t) = e^{it/eps^2} e^{itD} U(t, t/eps^2)."""
    ops = _ops_for(s)
    t = s.t if t is None else t
    e2 = s.p.eps**2
    xi = np.mod(t / e2, 2.0 * np.pi)
    w = ops.eval_at_xi(s.U, xi)
    return np.exp(1j * np.mod(t / e2, 2 * np.pi)) * np.exp(1j * t * ops.D) * w


def tsf_reconstruct(s: TsfField, t: float | None = None) -> np.ndarray:
    """Nodal u = Re v."""
    return inv(tsf_reconstruct_v(s, t)).real
