"""Scheme registry and a uniform integration driver.

Every scheme is reachable through :func:`integrate`, which advances the
initial data to ``t_end`` with a fixed step and returns the nodal solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import exponential as ex
from . import fdtd, limit, ua, uoa
from .fdtd import CnfdSolveConfig
from .problem import InitialData, NkgeParams
from .spectral import Grid1d, Grid2d


@dataclass(frozen=True)
class SchemeInfo:
    id: str
    family: str
    order: int
    spectral: bool
    uniform: bool
    dim: int = 1


SCHEMES: dict[str, SchemeInfo] = {s.id: s for s in [
    SchemeInfo("cnfd", "fdtd", 2, False, False),
    SchemeInfo("sifd", "fdtd", 2, False, False),
    SchemeInfo("lffd", "fdtd", 2, False, False),
    SchemeInfo("ewi-fp", "exponential", 2, True, False),
    SchemeInfo("ts-fp", "exponential", 2, True, False),
    SchemeInfo("ts-fp-2d", "exponential", 2, True, False, dim=2),
    SchemeInfo("li-fp1", "limit", 2, True, False),
    SchemeInfo("li-fp2", "limit", 2, True, False),
    SchemeInfo("mti-fp", "ua", 1, True, True),
    SchemeInfo("tsf-fp1", "ua", 1, True, True),
    SchemeInfo("tsf-fp2", "ua", 2, True, True),
    SchemeInfo("iei-fp", "uoa", 2, True, True),
    SchemeInfo("mti-fp2", "uoa", 2, True, True),
]}

ALIASES = {"ecfd": "cnfd"}


def resolve(scheme: str) -> SchemeInfo:
    key = ALIASES.get(scheme.lower(), scheme.lower())
    try:
        return SCHEMES[key]
    except KeyError:
        known = sorted(SCHEMES) + sorted(ALIASES)
        raise KeyError(f"unknown scheme {scheme!r}; known: {known}") from None


def step_count(t_end: float, tau: float) -> int:
    """Number of steps of size tau reaching t_end; tau must divide t_end."""
    if not (tau > 0 and t_end > 0):
        raise ValueError("tau and t_end must be positive")
    n = round(t_end / tau)
    if n < 1 or abs(n * tau - t_end) > 1e-9 * t_end:
        raise ValueError(f"tau={tau!r} does not divide t_end={t_end!r}")
    return n


def lffd_delta(eps: float, j: int, eps0: float = 1.0) -> float:
    """delta_j(eps) of the LFFD mesh rule."""
    if eps >= eps0 / 2**j:
        return eps**2
    return eps0**2 / 4**j


def lffd_mesh(eps: float, j: int, tau0: float = 0.2, h0: float = 0.5) -> tuple[float, float]:
    """(tau, h) of column j: tau0/8^j and h0/(8^j delta_j(eps))."""
    return tau0 / 8**j, h0 / (8**j * lffd_delta(eps, j))


# -------------------------------------------------------------- runners
# Each runner takes (data, p, grid, tau, nsteps, opts, observe) and
# returns the nodal solution after nsteps.  ``observe(n, u)`` is called
# with intermediate solutions when supplied and the scheme supports it.

def _run_fd(kind):
    def run(data, p, grid, tau, nsteps, opts, observe):
        s = fdtd.fdtd_first_step(data, p, tau, grid)
        if kind == "lffd":
            s = fdtd.run_lffd(s, nsteps - 1)
            return s.u_curr
        cfg = opts.get("cnfd", CnfdSolveConfig())
        step = (lambda st: fdtd.step_cnfd(st, cfg)) if kind == "cnfd" else fdtd.step_sifd
        for _ in range(nsteps - 1):
            s = step(s)
            if observe:
                observe(s.n, s.u_curr)
        return s.u_curr
    return run


def _loop(s, step, nsteps, sol, observe):
    for _ in range(nsteps):
        s = step(s)
        if observe:
            observe(s.n, sol(s))
    return sol(s)


def _run_ewi(data, p, grid, tau, nsteps, opts, observe):
    return _loop(ex.ewi_init(data, p, grid, tau), ex.step_ewi, nsteps, lambda s: s.u, observe)


def _run_ts(data, p, grid, tau, nsteps, opts, observe):
    step = ex.step_tsfp_2d if isinstance(grid, Grid2d) else ex.step_tsfp
    return _loop(ex.ts_init(data, p, grid, tau), step, nsteps, lambda s: s.u, observe)


def _run_li(order):
    def run(data, p, grid, tau, nsteps, opts, observe):
        return _loop(limit.li_init(data, p, grid, tau, order), limit.step_li, nsteps,
                     limit.li_solution, observe)
    return run


def _run_mti(data, p, grid, tau, nsteps, opts, observe):
    k = ua.build_mti_kernels(p, tau, grid)
    return _loop(ua.mti_init(data, p, grid, tau), lambda s: ua.step_mti(s, k), nsteps,
                 lambda s: s.u, observe)


def _run_tsf(order):
    def run(data, p, grid, tau, nsteps, opts, observe):
        s = ua.tsf_init(data, p, grid, tau, order, int(opts.get("xi_points", 32)))
        return _loop(s, ua.step_tsf, nsteps, ua.tsf_reconstruct, observe)
    return run


def _run_iei(data, p, grid, tau, nsteps, opts, observe):
    s = uoa.iei_init(data, p, grid, tau, opts.get("variant", "derived"))
    return _loop(s, uoa.step_iei, nsteps, lambda s: s.u, observe)


def _run_mti2(data, p, grid, tau, nsteps, opts, observe):
    k = uoa.build_mti2_kernels(p, tau, grid)
    return _loop(uoa.mti2_initialize(data, p, grid, tau), lambda s: uoa.step_mti2(s, k), nsteps,
                 lambda s: uoa.mti2_reconstruct(s)[0], observe)


RUNNERS: dict[str, Callable] = {
    "cnfd": _run_fd("cnfd"),
    "sifd": _run_fd("sifd"),
    "lffd": _run_fd("lffd"),
    "ewi-fp": _run_ewi,
    "ts-fp": _run_ts,
    "ts-fp-2d": _run_ts,
    "li-fp1": _run_li(1),
    "li-fp2": _run_li(2),
    "mti-fp": _run_mti,
    "tsf-fp1": _run_tsf(1),
    "tsf-fp2": _run_tsf(2),
    "iei-fp": _run_iei,
    "mti-fp2": _run_mti2,
}

KNOWN_OPTIONS = {"xi_points", "variant", "cnfd"}


def integrate(scheme: str, data: InitialData, p: NkgeParams, grid: Grid1d | Grid2d, tau: float,
              t_end: float, observe: Callable[[int, np.ndarray], None] | None = None,
              **opts) -> np.ndarray:
    """Advance ``data`` to ``t_end`` with ``scheme`` and return nodal u.

    Options: ``xi_points`` (TSF schemes), ``variant`` (IEI-FP),
    ``cnfd`` (a :class:`CnfdSolveConfig`).
    """
    info = resolve(scheme)
    unknown = set(opts) - KNOWN_OPTIONS
    if unknown:
        raise TypeError(f"unknown options {sorted(unknown)}")
    if info.dim == 2 and not isinstance(grid, Grid2d):
        raise ValueError(f"{info.id} needs a 2D grid")
    if info.dim == 1 and not isinstance(grid, Grid1d):
        raise ValueError(f"{info.id} needs a 1D grid")
    n = step_count(t_end, tau)
    if info.family == "fdtd" and n < 2:
        raise ValueError("finite-difference schemes need at least two steps")
    return RUNNERS[info.id](data, p, grid, tau, n, opts, observe)


def scheme_ids(families: Iterable[str] | None = None) -> list[str]:
    fam = set(families) if families else None
    return [k for k, v in SCHEMES.items() if fam is None or v.family in fam]


def grid_for_h(h: float, domain: tuple[float, float]) -> Grid1d:
    n = (domain[1] - domain[0]) / h
    N = int(round(n))
    if abs(N - n) > 1e-9 * n:
        raise ValueError(f"h={h} does not divide the domain")
    return Grid1d(domain[0], domain[1], N)

