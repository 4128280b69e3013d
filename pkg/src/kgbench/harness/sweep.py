"""Error sweeps over (eps, tau, h) and the tables they produce."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from ..errors import BlowUpError
from ..problem import DOMAINS, NkgeParams, catalog_entry, sample_data
from ..schemes import integrate, lffd_mesh, resolve, grid_for_h
from ..spectral import Grid1d, fwd, h1_norm_coeffs, interp_to
from .reference import POLICIES, make_reference
from .tables import TableSpec, get_table, tolerance

AXES = ("tau", "h", "xi", "lffd", "diagonal")
FD_REF_H = 1.0 / 16
RESONANCE_DROP = 0.5


@dataclass(frozen=True)
class SweepSpec:
    """One scheme over a list of eps (rows) and a list of ``columns``.

    The column values are interpreted by ``axis``: time steps (``tau``,
    ``diagonal``), mesh sizes (``h``), xi point counts (``xi``) or column
    indices of the LFFD mesh rule (``lffd``).  Quantities not varied along
    the axis are fixed by ``tau``, ``h`` and ``xi_points``.
    """

    scheme: str
    eps: tuple
    columns: tuple
    axis: str = "tau"
    tau: float | None = None
    h: float | None = 1.0 / 8
    xi_points: int | None = None
    domain: str = "default"
    data: str = "initKG"
    t_end: float = 1.0
    reference: str = "auto"
    ref_mode: str = "true"
    self_ref: float | int | None = None
    lam: float = 1.0
    variant: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "eps", tuple(float(e) for e in self.eps))
        object.__setattr__(self, "columns", tuple(self.columns))
        if not self.eps or not self.columns:
            raise ValueError("eps and columns must be nonempty")
        if not self.t_end > 0:
            raise ValueError("t_end must be positive")
        resolve(self.scheme)
        catalog_entry(self.data)
        if self.domain not in DOMAINS:
            raise KeyError(f"unknown domain {self.domain!r}; known: {sorted(DOMAINS)}")
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}")
        if self.reference not in POLICIES:
            raise ValueError(f"unknown reference policy {self.reference!r}")
        if self.ref_mode not in ("true", "self"):
            raise ValueError("ref_mode must be 'true' or 'self'")
        if self.axis == "diagonal" and len(self.eps) != len(self.columns):
            raise ValueError("a diagonal sweep pairs eps and tau one to one")
        if self.axis in ("h", "xi") and self.tau is None:
            raise ValueError("spatial sweeps need a fixed tau")
        if self.axis in ("tau", "xi", "diagonal") and self.h is None:
            raise ValueError("this axis needs a fixed h")
        if self.ref_mode == "self" and self.self_ref is None:
            raise ValueError("self references need self_ref")

    @classmethod
    def temporal(cls, scheme, eps, taus, **kw) -> "SweepSpec":
        return cls(scheme, tuple(eps), tuple(taus), axis="tau", **kw)

    @property
    def domain_bounds(self) -> tuple[float, float]:
        return DOMAINS[self.domain]

    def options(self) -> dict:
        opts = {}
        if self.xi_points is not None and resolve(self.scheme).id.startswith("tsf"):
            opts["xi_points"] = int(self.xi_points)
        if self.variant is not None and resolve(self.scheme).id == "iei-fp":
            opts["variant"] = self.variant
        return opts

    def cell(self, i: int, j: int) -> tuple[float, float, float, dict]:
        """(eps, tau, h, options) of cell (i, j)."""
        eps = self.eps[j] if self.axis == "diagonal" else self.eps[i]
        c = self.columns[j]
        opts = self.options()
        if self.axis in ("tau", "diagonal"):
            return eps, float(c), self.h, opts
        if self.axis == "h":
            return eps, self.tau, float(c), opts
        if self.axis == "xi":
            opts["xi_points"] = int(c)
            return eps, self.tau, self.h, opts
        tau, h = lffd_mesh(eps, int(c))
        return eps, tau, h, opts

    def axis_values(self) -> list[float]:
        """Abscissae for rate fitting."""
        if self.axis == "xi":
            return [2 * math.pi / c for c in self.columns]
        if self.axis == "lffd":
            return [lffd_mesh(1.0, int(c))[0] for c in self.columns]
        return [float(c) for c in self.columns]

    def nrows(self) -> int:
        return 1 if self.axis == "diagonal" else len(self.eps)


@dataclass
class ErrorTable:
    """H1 errors of one or more sweeps.

    ``errors`` holds nan for cells not computed and inf for blown-up
    cells; ``flags`` holds ``unstable``, ``resonance`` or an empty string.
    """

    rows: list
    row_labels: list[str]
    columns: list
    column_labels: list[str]
    axis_values: list[float]
    errors: np.ndarray
    flags: list[list[str]]
    wall: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.columns))

    @property
    def rates(self) -> np.ndarray:
        return fit_rates(self.errors, self.axis_values)

    @property
    def e_inf(self) -> np.ndarray:
        """Column maxima; inf where any row blew up, nan where no row ran."""
        out = np.full(len(self.columns), np.nan)
        for j in range(len(self.columns)):
            col = self.errors[:, j]
            col = col[~np.isnan(col)]
            if col.size:
                out[j] = col.max()
        return out

    def row(self, key) -> np.ndarray:
        return self.errors[self.rows.index(key)]

    def to_dict(self) -> dict:
        return {
            "rows": list(self.rows),
            "row_labels": list(self.row_labels),
            "columns": list(self.columns),
            "column_labels": list(self.column_labels),
            "axis_values": list(self.axis_values),
            "errors": self.errors.tolist(),
            "flags": [list(f) for f in self.flags],
            "wall": self.wall.tolist(),
            "meta": dict(self.meta),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ErrorTable":
        nrow, ncol = len(d["rows"]), len(d["columns"])
        return cls(
            rows=list(d["rows"]),
            row_labels=list(d["row_labels"]),
            columns=list(d["columns"]),
            column_labels=list(d["column_labels"]),
            axis_values=[float(v) for v in d["axis_values"]],
            errors=np.array(d["errors"], dtype=float).reshape(nrow, ncol),
            flags=[list(f) for f in d["flags"]],
            wall=np.array(d["wall"], dtype=float).reshape(nrow, ncol),
            meta=dict(d["meta"]),
        )

    @classmethod
    def stack(cls, tables: list["ErrorTable"], meta: dict | None = None) -> "ErrorTable":
        first = tables[0]
        return cls(
            rows=[r for t in tables for r in t.rows],
            row_labels=[r for t in tables for r in t.row_labels],
            columns=list(first.columns),
            column_labels=list(first.column_labels),
            axis_values=list(first.axis_values),
            errors=np.vstack([t.errors for t in tables]),
            flags=[f for t in tables for f in t.flags],
            wall=np.vstack([t.wall for t in tables]),
            meta=dict(meta if meta is not None else first.meta),
        )


def fit_rates(errors, x) -> np.ndarray:
    """Local rates log(e_{j-1}/e_j) / log(x_{j-1}/x_j); column 0 is nan.

    Only adjacent finite positive cells produce a rate.
    """
    e = np.atleast_2d(np.asarray(errors, dtype=float))
    x = np.asarray(x, dtype=float)
    out = np.full(e.shape, np.nan)
    with np.errstate(divide="ignore", invalid="ignore"):
        for j in range(1, e.shape[1]):
            a, b = e[:, j - 1], e[:, j]
            ok = np.isfinite(a) & np.isfinite(b) & (a > 0) & (b > 0)
            out[ok, j] = np.log(a[ok] / b[ok]) / math.log(x[j - 1] / x[j])
    return out


def fit_order(errors, x) -> float:
    """Least-squares slope of log e against log x over finite positive cells."""
    e = np.asarray(errors, dtype=float)
    x = np.asarray(x, dtype=float)
    ok = np.isfinite(e) & (e > 0)
    if ok.sum() < 2:
        return float("nan")
    return float(np.polyfit(np.log(x[ok]), np.log(e[ok]), 1)[0])


# -------------------------------------------------------------- cells

def _grid(domain, h) -> Grid1d:
    return grid_for_h(h, domain)


def _error(u: np.ndarray, ref: np.ndarray, grid: Grid1d) -> float:
    return h1_norm_coeffs(interp_to(ref, grid.N) - fwd(u), grid)


def _run_cell(task: dict) -> tuple[float, str, float]:
    """Worker entry point: integrate one cell and measure its error."""
    p = NkgeParams(task["eps"], task["lam"], task["domain"])
    grid = _grid(task["domain"], task["h"])
    data = sample_data(task["data"], grid)
    t0 = time.perf_counter()
    try:
        u = integrate(task["scheme"], data, p, grid, task["tau"], task["t_end"], **task["opts"])
    except BlowUpError:
        return math.inf, "unstable", time.perf_counter() - t0
    wall = time.perf_counter() - t0
    err = _error(u, task["ref"], grid)
    return err, "", wall


def workers() -> int:
    try:
        return max(1, int(os.environ.get("KGBENCH_WORKERS", "1")))
    except ValueError:
        return 1


def _ref_grid(spec: SweepSpec, eps_cells: list) -> Grid1d:
    """Grid of the reference for a row: the finest sweep grid for spectral
    schemes, h = 1/16 for finite differences."""
    info = resolve(spec.scheme)
    dom = spec.domain_bounds
    if not info.spectral:
        return _grid(dom, FD_REF_H)
    hs = [c[2] for c in eps_cells]
    return _grid(dom, min(hs))


def _self_reference(spec: SweepSpec, eps: float) -> np.ndarray:
    """Same scheme and step on the refined grid (or xi grid)."""
    dom = spec.domain_bounds
    p = NkgeParams(eps, spec.lam, dom)
    opts = spec.options()
    if spec.axis == "xi":
        h = spec.h
        opts["xi_points"] = int(spec.self_ref)
    else:
        h = float(spec.self_ref)
    grid = _grid(dom, h)
    u = integrate(spec.scheme, sample_data(spec.data, grid), p, grid, spec.tau, spec.t_end, **opts)
    return fwd(u)


def _references(spec: SweepSpec, use_cache: bool) -> dict:
    """Reference coefficients keyed by eps, built once before the cells run."""
    dom = spec.domain_bounds
    by_eps: dict[float, list] = {}
    for i in range(spec.nrows()):
        for j in range(len(spec.columns)):
            c = spec.cell(i, j)
            by_eps.setdefault(c[0], []).append(c)
    refs = {}
    for eps, cells in by_eps.items():
        if spec.ref_mode == "self":
            refs[eps] = (_self_reference(spec, eps), {"generator": "self"})
            continue
        p = NkgeParams(eps, spec.lam, dom)
        r = make_reference(p, spec.data, spec.t_end, spec.reference, _ref_grid(spec, cells),
                           use_cache=use_cache)
        refs[eps] = (r.u, r.meta)
    return refs


def _row_label(spec: SweepSpec, i: int) -> tuple:
    if spec.axis == "diagonal":
        return spec.scheme, spec.scheme
    eps = spec.eps[i]
    k = -math.log2(eps)
    label = f"eps=2^-{round(k)}" if abs(k - round(k)) < 1e-12 else f"eps={eps:g}"
    return eps, label


def _column_labels(spec: SweepSpec) -> list[str]:
    if spec.axis == "tau":
        return [f"tau={c:.6g}" for c in spec.columns]
    if spec.axis == "h":
        return [f"h={c:.6g}" for c in spec.columns]
    if spec.axis == "xi":
        return [f"N_xi={c}" for c in spec.columns]
    if spec.axis == "lffd":
        return [f"j={c}" for c in spec.columns]
    return [f"eps={e:g},tau={c:.6g}" for e, c in zip(spec.eps, spec.columns)]


def _flag_resonance(table: ErrorTable, spec: SweepSpec) -> None:
    info = resolve(spec.scheme)
    if not info.uniform or spec.axis not in ("tau", "diagonal"):
        return
    rates = table.rates
    for i in range(rates.shape[0]):
        for j in range(1, rates.shape[1]):
            r = rates[i, j]
            if np.isfinite(r) and r < info.order - RESONANCE_DROP and not table.flags[i][j]:
                table.flags[i][j] = "resonance"


def run_sweep(spec: SweepSpec, use_cache: bool = True, max_workers: int | None = None) -> ErrorTable:
    """Integrate every cell of ``spec`` and measure its H1 error at t_end."""
    refs = _references(spec, use_cache)
    nrow, ncol = spec.nrows(), len(spec.columns)
    tasks = {}
    for i in range(nrow):
        for j in range(ncol):
            eps, tau, h, opts = spec.cell(i, j)
            tasks[(i, j)] = dict(scheme=spec.scheme, eps=eps, lam=spec.lam,
                                 domain=spec.domain_bounds, data=spec.data, tau=tau, h=h,
                                 t_end=spec.t_end, opts=opts, ref=refs[eps][0])
    errors = np.full((nrow, ncol), np.nan)
    wall = np.full((nrow, ncol), np.nan)
    flags = [[""] * ncol for _ in range(nrow)]
    n = max_workers or workers()
    if n <= 1 or len(tasks) == 1:
        results = {k: _run_cell(t) for k, t in tasks.items()}
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            futs = {k: pool.submit(_run_cell, t) for k, t in tasks.items()}
            results = {k: f.result() for k, f in futs.items()}
    for (i, j), (e, f, w) in results.items():
        errors[i, j], flags[i][j], wall[i, j] = e, f, w
    rows, labels = zip(*(_row_label(spec, i) for i in range(nrow)))
    meta = {
        "scheme": resolve(spec.scheme).id,
        "axis": spec.axis,
        "eps": list(spec.eps),
        "tau": spec.tau,
        "h": spec.h,
        "xi_points": spec.xi_points,
        "domain": spec.domain,
        "data": spec.data,
        "t_end": spec.t_end,
        "lam": spec.lam,
        "reference": spec.reference if spec.ref_mode == "true" else "self",
        "reference_generators": sorted({str(m.get("generator")) for _, m in refs.values()}),
    }
    if spec.ref_mode == "self":
        meta["self_ref"] = spec.self_ref
    table = ErrorTable(list(rows), list(labels), list(spec.columns), _column_labels(spec),
                       spec.axis_values(), errors, flags, wall, meta)
    _flag_resonance(table, spec)
    return table


def diagonal_sweep(spec: SweepSpec, **kw) -> ErrorTable:
    """One error per (eps_j, tau_j) pair."""
    if spec.axis != "diagonal":
        spec = replace(spec, axis="diagonal")
    return run_sweep(spec, **kw)


# -------------------------------------------------------------- tables

def table_sweeps(t: TableSpec, verbatim: bool = False, rows=None, columns=None,
                 reference: str = "auto") -> list[SweepSpec]:
    """SweepSpecs regenerating (a subset of) an embedded table."""
    rows = list(t.rows) if rows is None else list(rows)
    cols = list(range(len(t.columns))) if columns is None else list(columns)
    colvals = tuple(t.columns[j] for j in cols)
    tau = t.step(verbatim)
    common = dict(axis=t.axis, tau=tau, h=t.h, xi_points=t.xi_points, reference=reference,
                  ref_mode=t.reference, self_ref=t.self_ref)
    if t.comparison:
        if t.axis == "diagonal":
            eps = tuple(2.0**-j for j in cols)
        else:
            eps = (t.eps,)
        return [SweepSpec(t.row_scheme(r), eps, colvals, **common) for r in rows]
    eps = tuple(t.row_eps(r) for r in rows)
    return [SweepSpec(t.schemes[0], eps, colvals, **common)]


def run_table(ref, verbatim: bool = False, rows=None, columns=None, reference: str = "auto",
              **kw) -> ErrorTable:
    """Regenerate an embedded table by number or label."""
    t = get_table(ref)
    rows = list(t.rows) if rows is None else list(rows)
    cols = list(range(len(t.columns))) if columns is None else list(columns)
    parts = [run_sweep(s, **kw) for s in table_sweeps(t, verbatim, rows, cols, reference)]
    out = ErrorTable.stack(parts)
    out.rows = list(rows)
    if t.comparison:
        out.row_labels = list(rows)
    out.meta = dict(parts[0].meta)
    out.meta.update(table=t.label, columns_index=cols, verbatim=verbatim,
                    tau_used=t.step(verbatim), tau_stated=t.tau)
    if t.comparison:
        out.meta["scheme"] = list(rows)
    return out


@dataclass(frozen=True)
class CellDiff:
    row: object
    column: int
    value: float
    published: float | None
    ratio: float
    tol: float
    ok: bool
    note: str = ""


def compare_published(table: ErrorTable, ref=None) -> list[CellDiff]:
    """Cellwise comparison with an embedded table at tiered tolerances.

    A cell published as unstable matches a blown-up cell and nothing else.
    """
    t = get_table(ref if ref is not None else table.meta["table"])
    pub = t.published_rows()
    cols = table.meta.get("columns_index", list(range(len(table.columns))))
    out = []
    for i, key in enumerate(table.rows):
        if key not in pub:
            continue
        for jj, j in enumerate(cols):
            v = float(table.errors[i, jj])
            p = pub[key][j]
            if math.isnan(v):
                continue
            if p is None:
                blown = table.flags[i][jj] == "unstable"
                out.append(CellDiff(key, j, v, None, math.nan, 0.0, blown, "published unstable"))
                continue
            tol = tolerance(p)
            ratio = v / p
            out.append(CellDiff(key, j, v, p, ratio, tol, abs(ratio - 1) <= tol))
    return out


def compare_einf(table: ErrorTable, ref=None) -> list[CellDiff]:
    t = get_table(ref if ref is not None else table.meta["table"])
    pub = t.published_einf()
    if pub is None:
        return []
    cols = table.meta.get("columns_index", list(range(len(table.columns))))
    einf = table.e_inf
    out = []
    for jj, j in enumerate(cols):
        p, v = pub[j], float(einf[jj])
        tol = tolerance(p)
        out.append(CellDiff("einf", j, v, p, v / p, tol, abs(v / p - 1) <= tol))
    return out
