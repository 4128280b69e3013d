"""Second-order uniformly accurate schemes: IEI-FP and MTI-FP2.

IEI-FP integrates the filtered variable v_* = e^{-it/eps^2} v of the first
order formulation with an iterated exponential integrator.  MTI-FP2 splits
u into an NLSW profile v, its third harmonic and a remainder eps^2 R and
integrates both with exponential wave integrators.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import check_finite
from .phi import phi1, phi2
from .problem import InitialData, NkgeParams
from .spectral import Grid1d, d_eps_values, fwd, inv
from .ua import nlsw_kernels, wave_kernels

GAMMA_VARIANTS = ("literal", "derived")


def _abs2(z):
    return z.real * z.real + z.imag * z.imag


# ---------------------------------------------------------------- IEI-FP

@dataclass(frozen=True)
class IeiState:
    vstar: np.ndarray
    n: int
    tau: float
    p: NkgeParams
    grid: Grid1d
    variant: str = "derived"

    @property
    def t(self) -> float:
        return self.n * self.tau

    @property
    def u(self) -> np.ndarray:
        return (np.exp(1j * np.mod(self.t / self.p.eps**2, 2 * np.pi)) * self.vstar).real


def iei_init(data: InitialData, p: NkgeParams, grid: Grid1d, tau: float,
             variant: str = "derived") -> IeiState:
    if variant not in GAMMA_VARIANTS:
        raise ValueError(f"variant must be one of {GAMMA_VARIANTS}")
    A = 1.0 / np.sqrt(1.0 + p.eps**2 * grid.mu**2)
    v0 = inv(fwd(np.asarray(data.phi1, dtype=complex)) - 1j * A * fwd(np.asarray(data.phi2, dtype=complex)))
    return IeiState(v0, 0, tau, p, grid, variant)


class _IeiOps:
    def __init__(self, p: NkgeParams, grid: Grid1d, tau: float):
        e2 = p.eps**2
        mu2 = grid.mu**2
        self.D = d_eps_values(grid.mu, p.eps)
        self.A = 1.0 / np.sqrt(1.0 + e2 * mu2)
        self.mu2 = mu2
        self.half = np.exp(0.5j * tau * self.D)
        self.full = np.exp(1j * tau * self.D)
        z = 1j * tau * (2.0 / e2 + 0.5 * mu2)
        self.frakD = [tau * self.full * phi1(z), tau * self.full * phi2(z)]
        self.calD = {}
        for m in (2, 4):
            zm = -1j * tau * (m / e2 + self.D)
            self.calD[m] = [tau * self.full * phi1(zm), tau * self.full * phi2(zm)]
        r = tau / e2
        self.ph1 = {m: complex(phi1(np.array(1j * m * r))) for m in range(-6, 7, 2)}
        self.ph2 = {m: complex(phi2(np.array(1j * m * r))) for m in range(-4, 5, 2)}


_IEI_CACHE: dict = {}


def _iei_ops(s: IeiState) -> _IeiOps:
    key = (s.p, s.grid, s.tau)
    ops = _IEI_CACHE.get(key)
    if ops is None:
        if len(_IEI_CACHE) > 32:
            _IEI_CACHE.clear()
        ops = _IEI_CACHE[key] = _IeiOps(s.p, s.grid, s.tau)
    return ops


def step_iei(s: IeiState) -> IeiState:
    p, tau = s.p, s.tau
    lam, e2 = p.lam, p.eps**2
    ops = _iei_ops(s)
    A = ops.A

    def op(sym, f):
        return inv(sym * fwd(f))

    v = s.vstar
    vb = np.conj(v)
    a2 = _abs2(v)
    tn = s.t
    ph = lambda m: np.exp(1j * np.mod(m * tn / e2, 2 * np.pi))  # noqa: E731

    # leading Strang-type part
    w = op(ops.half, v)
    aw = _abs2(w)
    Nw = aw * w
    lead = op(ops.half, np.exp(0.375j * lam * tau * aw) * w)
    corr = 0.375j * lam * tau * op((A - 1.0) * ops.half, Nw)
    AmN = op(A - 1.0, Nw)
    kappa = (9.0 / 128.0) * op(ops.half, op(A, w**2 * np.conj(AmN)) - op(A - 1.0, aw**2 * w)
                                - 2.0 * op(A, aw * AmN))

    # zeta_m
    P1 = ops.ph1
    v3, n1, vb3 = v**3, a2 * vb, vb**3

    def zeta(m):
        return (ph(2) * (P1[m + 2] - P1[m]) * v3 - 3.0 * ph(-2) * (P1[m - 2] - P1[m]) * n1
                - ph(-4) * 0.5 * (P1[m - 4] - P1[m]) * vb3)

    c = 0.5j * e2 / tau

    def U(m):
        return 3.0 * ops.ph2[m] * a2 * v - c * zeta(m)

    def W(m):
        if s.variant == "literal":
            return 3.0 * ops.ph2[m] * n1 + c * np.conj(zeta(m))
        return 3.0 * ops.ph2[-m] * n1 + c * np.conj(zeta(m))

    def Gam(m, j, k, f):
        return 0.375j * lam * tau**2 * ph(m) * v**j * vb**k * op(A, f)

    Dv = op(ops.D, v)
    Dvb = np.conj(Dv)
    fD, cD = ops.frakD, ops.calD
    chi = (ph(2) * op(fD[0], v3)
           + 1j * tau * ph(2) * op(fD[1], op(-0.5 * ops.mu2 - ops.D, v3) + 3.0 * v**2 * Dv)
           + 3.0 * ph(-2) * op(cD[2][0], n1) + ph(-4) * op(cD[4][0], vb3)
           + 3j * tau * ph(-2) * op(cD[2][1], vb**2 * Dv - 2.0 * a2 * Dvb)
           - 3j * tau * ph(-4) * op(cD[4][1], vb**2 * Dvb))
    if s.variant == "literal":
        chi = (chi - Gam(2, 2, 0, U(2)) - Gam(-2, 0, 2, U(-2))
               + 2.0 * Gam(-2, 1, 1, W(2)) + Gam(-4, 0, 2, W(4)))
    else:
        chi = (chi + Gam(2, 2, 0, U(2)) + Gam(-2, 0, 2, U(-2))
               - 2.0 * Gam(-2, 1, 1, W(2)) - Gam(-4, 0, 2, W(4)))

    z0 = zeta(0)
    tail = (3j * tau * e2 * lam**2 / 128.0) * op(A, 2.0 * a2 * op(A, z0) + v**2 * op(A, np.conj(z0)))
    vn = lead + corr + tau**2 * lam**2 * kappa + 0.125j * lam * op(A, chi) + tail
    check_finite(vn, s.n + 1, "v*")
    return replace(s, vstar=vn, n=s.n + 1)


# ---------------------------------------------------------------- MTI-FP2

@dataclass(frozen=True)
class Mti2State:
    v: np.ndarray
    dv: np.ndarray
    R: np.ndarray
    dR: np.ndarray
    n: int
    tau: float
    p: NkgeParams
    grid: Grid1d
    g_prev: np.ndarray | None = None

    @property
    def t(self) -> float:
        return self.n * self.tau


@dataclass(frozen=True)
class Mti2KernelTable:
    tau: float
    omega: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    da: np.ndarray
    db: np.ndarray
    dc: np.ndarray
    dd: np.ndarray
    # p_{l,k}^0, q_{l,k}^0 and derivatives (including the factor lam), k = 3, 5
    pq: dict


def build_mti2_kernels(p: NkgeParams, tau: float, grid: Grid1d) -> Mti2KernelTable:
    eps = p.eps
    om = np.sqrt(1.0 + eps**2 * grid.mu**2) / eps**2
    a, b, c, d, da, db, dc, dd = nlsw_kernels(grid.mu, eps, tau)
    pq = {}
    for k in (3, 5):
        pq[k] = tuple(p.lam * arr for arr in wave_kernels(om, eps, k / eps**2, tau))
    return Mti2KernelTable(tau, om, a, b, c, d, da, db, dc, dd, pq)


def _lap(f, grid):
    return inv(-(grid.mu**2) * fwd(f))


def mti2_initialize(data: InitialData, p: NkgeParams, grid: Grid1d, tau: float) -> Mti2State:
    lam, e2 = p.lam, p.eps**2
    w0 = 0.5 * (np.asarray(data.phi1, dtype=float) - 1j * np.asarray(data.phi2, dtype=float))
    v1 = 0.5j * (-_lap(w0, grid) + 3.0 * lam * _abs2(w0) * w0)
    r0 = lam / 8.0 * np.conj(w0) ** 3 - lam / 4.0 * w0**3 + 1j * v1.real
    v0 = w0 + e2 * r0
    r1 = r0 * (v0**2 + v0 * w0 + w0**2)
    R0 = -lam * e2 / 4.0 * r1.real
    R1 = -0.75 * lam * (v0**2 * v1).real + 0.75 * lam * r1.imag
    return Mti2State(v0, v1, R0, R1, 0, tau, p, grid)


def _g(v, p):
    a2 = _abs2(v)
    return 3.0 * (p.lam * a2 + p.eps**2 * p.lam**2 / 8.0 * a2**2) * v


def _ddv(v, dv, p, grid):
    return -(2j * dv - _lap(v, grid) + _g(v, p)) / p.eps**2


def _ph(k, t, e2):
    return np.exp(1j * np.mod(k * t / e2, 2 * np.pi))


def _source_D(v, dv, ddv, R, t, p):
    lam, e2 = p.lam, p.eps**2
    e4 = e2 * e2
    a2 = _abs2(v)
    a6 = a2**3
    ph = lambda k: _ph(k, t, e2)  # noqa: E731
    Fv = (ph(1) * 3 * lam**2 / 32 * e2 * a6 * v
          + ph(3) * (e2 * 0.75 * v * dv**2 + e2 * 3.0 / 8.0 * v**2 * ddv
                     + e4 * 3 * lam**3 / 512 * a6 * v**3)
          + ph(5) * 3 * lam**2 / 64 * e2 * a2 * v**5
          + ph(7) * 3 * lam**2 / 64 * e2 * v**7
          + ph(9) * lam**3 / 512 * e4 * v**9)
    FR = (ph(2) * (3 * v**2 + 0.75 * lam * e2 * a2 * v**2) * R
          + ph(1) * 3 * e2 * v * R**2
          + ph(6) * 3 * lam**2 / 64 * e4 * v**6 * R
          + ph(3) * 3 * lam / 8 * e4 * v**3 * R**2
          + ph(4) * 0.75 * lam * e2 * v**4 * R)
    return 2.0 * (Fv + FR).real + 6 * a2 * R + e4 * R**3 + 3 * lam**2 / 32 * e4 * a6 * R


def step_mti2(s: Mti2State, k: Mti2KernelTable) -> Mti2State:
    p, grid, tau = s.p, s.grid, k.tau
    lam, e2 = p.lam, p.eps**2
    v, dv, R, dR = s.v, s.dv, s.R, s.dR
    tn = s.t

    g = _g(v, p)
    cv, cdv, cg = fwd(v), fwd(dv), fwd(g)
    nv = k.a * cv + e2 * k.b * cdv - k.c * cg
    ndv = k.da * cv + e2 * k.db * cdv - k.dc * cg
    if s.n > 0 and s.g_prev is not None:
        dg = fwd(g - s.g_prev) / tau
        nv -= k.d * dg
        ndv -= k.dd * dg
    v_new, dv_new = inv(nv), inv(ndv)

    ddv = _ddv(v, dv, p, grid)
    a2 = _abs2(v)
    G3 = 0.75 * lam * a2 * v**3 + 2.25j * v**2 * dv + 0.125 * inv(grid.mu**2 * fwd(v**3))
    dG3 = (0.75 * lam * (4 * v**3 * dv * np.conj(v) + v**4 * np.conj(dv))
           + 2.25j * (2 * v * dv**2 + v**2 * ddv)
           + 0.375 * inv(grid.mu**2 * fwd(dv * v**2)))
    G5 = 0.375 * lam * v**5
    dG5 = 1.875 * lam * v**4 * dv
    Dn = _source_D(v, dv, ddv, R, tn, p)

    om = k.omega
    cs, sn = np.cos(om * tau), np.sin(om * tau)
    cR, cdR = fwd(R), fwd(dR)
    nR = cs * cR + sn / om * cdR - tau * lam * sn / (2 * e2 * om) * fwd(Dn)
    ndR = -om * sn * cR + cs * cdR - tau * lam / (2 * e2) * cs * fwd(Dn)
    for kk, G, dG in ((3, G3, dG3), (5, G5, dG5)):
        phase = _ph(kk, tn, e2)
        pk, qk, dpk, dqk = (phase * arr for arr in k.pq[kk])
        fG, fdG, fGb, fdGb = fwd(G), fwd(dG), fwd(np.conj(G)), fwd(np.conj(dG))
        nR -= pk * fG + qk * fdG + np.conj(pk) * fGb + np.conj(qk) * fdGb
        ndR -= dpk * fG + dqk * fdG + np.conj(dpk) * fGb + np.conj(dqk) * fdGb
    R_new = inv(nR).real

    ddv_new = _ddv(v_new, dv_new, p, grid)
    D_new = _source_D(v_new, dv_new, ddv_new, R_new, tn + tau, p)
    ndR -= tau * lam / (2 * e2) * fwd(D_new)
    dR_new = inv(ndR).real
    check_finite(v_new, s.n + 1, "v")
    check_finite(R_new, s.n + 1, "R")
    return replace(s, v=v_new, dv=dv_new, R=R_new, dR=dR_new, n=s.n + 1, g_prev=g)


def mti2_reconstruct(s: Mti2State, t: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    t = s.t if t is None else t
    lam, e2 = s.p.lam, s.p.eps**2
    e1, e3 = _ph(1, t, e2), _ph(3, t, e2)
    v, dv = s.v, s.dv
    u = 2.0 * (e1 * v + lam * e2 / 8.0 * e3 * v**3).real + e2 * s.R
    du = 2.0 * (1j / e2 * e1 * v + e1 * dv + 3j * lam / 8.0 * e3 * v**3
                + 3 * lam / 8.0 * e2 * e3 * v**2 * dv).real + e2 * s.dR
    return u, du
