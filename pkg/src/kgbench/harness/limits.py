"""Distance of the NKGE solution to its Schroedinger-type limits.

u comes from MTI-FP2; z_sw solves the wave-operator model
eps^2 z_tt + 2i z_t - z_xx + 3 lam |z|^2 z = 0 and z_s the cubic
Schroedinger equation.  Both are turned into oscillatory fields
u_* = 2 Re(e^{it/eps^2} z_*) and compared with u in H1.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .. import uoa
from ..errors import check_finite
from ..limit import reconstruct_li1, step_nlse_tsfp
from ..problem import DOMAINS, NkgeParams, catalog_entry, nlse_initial, nlsw_initial, sample_data
from ..spectral import Grid1d, fwd, h1_norm_coeffs, inv
from ..ua import nlsw_kernels
from .sweep import fit_order

LIMIT_DATA = ("smooth", "nonsmooth-m1", "nonsmooth-m2")


@dataclass(frozen=True)
class LimitStudySpec:
    eps: tuple = (1 / 4, 1 / 8, 1 / 16, 1 / 32)
    data: str = "smooth"
    t_grid: tuple = tuple(0.125 * k for k in range(9))
    domain: str = "wide"
    N: int = 2048
    tau: float = 1e-3
    lam: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "eps", tuple(float(e) for e in self.eps))
        object.__setattr__(self, "t_grid", tuple(sorted(float(t) for t in self.t_grid)))
        if not self.eps or not self.t_grid:
            raise ValueError("eps and t_grid must be nonempty")
        if self.data not in LIMIT_DATA:
            raise ValueError(f"limit data must be one of {LIMIT_DATA}")
        catalog_entry(self.data)
        if self.domain not in DOMAINS:
            raise KeyError(f"unknown domain {self.domain!r}")
        if min(self.t_grid) < 0 or not self.tau > 0:
            raise ValueError("times must be nonnegative and tau positive")
        for t in self.t_grid:
            n = t / self.tau
            if abs(n - round(n)) > 1e-9 * max(1.0, n):
                raise ValueError(f"tau={self.tau} does not divide t={t}")

    @property
    def grid(self) -> Grid1d:
        a, b = DOMAINS[self.domain]
        return Grid1d(a, b, self.N)


@dataclass
class LimitReport:
    spec: LimitStudySpec
    t: list
    eta_sw: dict = field(default_factory=dict)  # eps -> list over t
    eta_s: dict = field(default_factory=dict)
    slope_sw: float = math.nan
    slope_s: float = math.nan
    wall: float = 0.0

    def final(self, which: str) -> list[float]:
        d = self.eta_sw if which == "sw" else self.eta_s
        return [d[e][-1] for e in self.spec.eps]

    def to_dict(self) -> dict:
        s = self.spec
        return {
            "data": s.data, "domain": s.domain, "N": s.N, "tau": s.tau, "lam": s.lam,
            "eps": list(s.eps), "t": list(self.t),
            "eta_sw": {repr(e): v for e, v in self.eta_sw.items()},
            "eta_s": {repr(e): v for e, v in self.eta_s.items()},
            "slope_sw": self.slope_sw, "slope_s": self.slope_s, "wall": self.wall,
        }


class NlswSolver:
    """Exponential integrator for the wave-operator Schroedinger model,
    with the nonlinearity interpolated linearly in time across a step."""

    def __init__(self, z0, zt0, p: NkgeParams, grid: Grid1d, tau: float):
        self.p, self.grid, self.tau = p, grid, tau
        self.k = nlsw_kernels(grid.mu, p.eps, tau)
        self.z, self.zt = np.asarray(z0, complex), np.asarray(zt0, complex)
        self.g_prev = None
        self.n = 0

    def _g(self, z):
        return 3.0 * self.p.lam * (z.real**2 + z.imag**2) * z

    def step(self):
        a, b, c, d, da, db, dc, dd = self.k
        e2 = self.p.eps**2
        g = self._g(self.z)
        cz, czt, cg = fwd(self.z), fwd(self.zt), fwd(g)
        nz = a * cz + e2 * b * czt - c * cg
        nzt = da * cz + e2 * db * czt - dc * cg
        if self.g_prev is not None:
            dg = fwd(g - self.g_prev) / self.tau
            nz -= d * dg
            nzt -= dd * dg
        self.g_prev = g
        self.z, self.zt = inv(nz), inv(nzt)
        self.n += 1
        check_finite(self.z, self.n, "z_sw")


def _h1(u: np.ndarray, grid: Grid1d) -> float:
    return h1_norm_coeffs(fwd(u), grid)


def eta_series(spec: LimitStudySpec, eps: float) -> tuple[list[float], list[float]]:
    """eta_sw(t) and eta_s(t) on spec.t_grid for one eps."""
    grid = spec.grid
    p = NkgeParams(eps, spec.lam, (grid.a, grid.b))
    data = sample_data(spec.data, grid)
    tau = spec.tau
    kern = uoa.build_mti2_kernels(p, tau, grid)
    s = uoa.mti2_initialize(data, p, grid, tau)
    sw = NlswSolver(*nlsw_initial(data, p, grid), p, grid, tau)
    zs = nlse_initial(data)
    targets = sorted(spec.t_grid)
    eta_sw, eta_s = {}, {}
    n = 0
    for t in targets:
        m = round(t / tau)
        while n < m:
            s = uoa.step_mti2(s, kern)
            sw.step()
            zs = step_nlse_tsfp(zs, tau, spec.lam, grid)
            n += 1
        u = uoa.mti2_reconstruct(s)[0] if n else np.asarray(data.phi1, dtype=float)
        tt = n * tau
        eta_sw[t] = _h1(u - reconstruct_li1(sw.z, tt, eps), grid)
        eta_s[t] = _h1(u - reconstruct_li1(zs, tt, eps), grid)
    return [eta_sw[t] for t in spec.t_grid], [eta_s[t] for t in spec.t_grid]


def limit_study(spec: LimitStudySpec) -> LimitReport:
    """eta curves for every eps and the log-log eps slopes at the last time."""
    t0 = time.perf_counter()
    rep = LimitReport(spec, list(spec.t_grid))
    for eps in spec.eps:
        rep.eta_sw[eps], rep.eta_s[eps] = eta_series(spec, eps)
    if len(spec.eps) > 1:
        rep.slope_sw = fit_order(rep.final("sw"), spec.eps)
        rep.slope_s = fit_order(rep.final("s"), spec.eps)
    rep.wall = time.perf_counter() - t0
    return rep
