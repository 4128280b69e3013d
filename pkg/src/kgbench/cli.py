"""Command line interface: ``kgbench run|table|limits|demo2d``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .harness import emit
from .harness.reference import POLICIES
from .problem import DOMAINS
from .schemes import SCHEMES, ALIASES

_POW = re.compile(r"^\s*([0-9.]+)\s*(?:\^|\*\*)\s*(-?[0-9]+)\s*$")


def parse_number(text: str) -> float:
    """Accept 0.125, 1/8, 2^-3, 2**-3 and 1e-3."""
    m = _POW.match(text)
    if m:
        return float(m.group(1)) ** int(m.group(2))
    try:
        return float(text)
    except ValueError:
        return float(Fraction(text.strip()))


def parse_list(text: str) -> list[float]:
    return [parse_number(t) for t in text.split(",") if t.strip()]


def _write(text: str, out) -> None:
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_run(a) -> int:
    from .harness.sweep import SweepSpec, run_sweep

    a_, b_ = DOMAINS[a.domain]
    spec = SweepSpec.temporal(a.scheme, parse_list(a.eps), parse_list(a.tau),
                              h=(b_ - a_) / a.grid, domain=a.domain, data=a.data,
                              t_end=a.tend, reference=a.ref, xi_points=a.xi_points,
                              variant=a.variant)
    table = run_sweep(spec)
    _write(emit.emit_table(table, a.format), a.out)
    if a.out:
        sys.stdout.write(emit.format_table(table))
    return 0


def cmd_table(a) -> int:
    from .harness import tables
    from .harness.sweep import run_table

    label = tables.lookup(a.paper)
    if label == "properties":
        _write(json.dumps(tables.PROPERTIES, indent=1) + "\n", a.out)
        return 0
    rows = None
    if a.rows:
        spec = tables.get_table(label)
        rows = [r if spec.comparison else int(r) for r in a.rows.split(",")]
    cols = [int(c) for c in a.columns.split(",")] if a.columns else None
    t = run_table(label, verbatim=a.verbatim, rows=rows, columns=cols, reference=a.ref)
    sys.stdout.write(f"{label}: {tables.TABLES[label].title}\n")
    sys.stdout.write(emit.format_table(t))
    if a.diff:
        report, _ = emit.diff_report(t)
        sys.stdout.write(report)
    if a.out:
        emit.emit_table(t, a.format, a.out)
    return 0


def cmd_limits(a) -> int:
    from .harness.limits import LimitStudySpec, limit_study

    kw = {}
    if a.eps:
        kw["eps"] = tuple(parse_list(a.eps))
    spec = LimitStudySpec(data=a.data, N=a.N, tau=a.tau, **kw)
    rep = limit_study(spec)
    text = json.dumps(rep.to_dict(), indent=1) + "\n"
    _write(text, a.out)
    if a.out:
        sys.stdout.write(f"slope eta_sw {rep.slope_sw:.3f}  slope eta_s {rep.slope_s:.3f}\n")
    return 0


def cmd_demo2d(a) -> int:
    from .harness.demo2d import richardson_ratio, run_2d_demo, write_snapshots
    from .spectral import Grid2d

    lo, hi = DOMAINS["default"]
    grid = Grid2d.square(lo, hi, a.grid)
    tau = parse_number(a.tau) if a.tau else None
    res = run_2d_demo(a.eps, tau, grid, parse_list(a.snapshots), energy_every=a.energy_every)
    paths = write_snapshots(res, a.out)
    sys.stdout.write(f"{len(paths)} snapshots in {a.out}; energy drift {res.energy_drift:.3e}"
                     f"{'; blew up' if res.blown_up else ''}\n")
    if a.richardson:
        ratio, _ = richardson_ratio(a.eps, a.richardson, tau, grid)
        sys.stdout.write(f"Richardson ratio at t={a.richardson:g}: {ratio:.3f}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kgbench", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="error sweep of one scheme over eps and tau")
    r.add_argument("--scheme", required=True, choices=sorted(SCHEMES) + sorted(ALIASES))
    r.add_argument("--eps", required=True, help="comma list, e.g. 1,1/2,2^-3")
    r.add_argument("--tau", required=True, help="comma list of time steps")
    r.add_argument("--grid", type=int, default=256, help="number of grid points")
    r.add_argument("--domain", default="default", choices=sorted(DOMAINS))
    r.add_argument("--data", default="initKG")
    r.add_argument("--tend", type=float, default=1.0)
    r.add_argument("--ref", default="auto", choices=POLICIES)
    r.add_argument("--xi-points", type=int, default=None)
    r.add_argument("--variant", default=None)
    r.add_argument("--out")
    r.add_argument("--format", default="csv", choices=emit.FORMATS)
    r.set_defaults(func=cmd_run)

    t = sub.add_parser("table", help="regenerate an embedded published table")
    t.add_argument("--paper", required=True, help="table number 1..20 or label")
    t.add_argument("--rows", help="subset of row keys (eps exponents or scheme ids)")
    t.add_argument("--columns", help="subset of column indices")
    t.add_argument("--verbatim", action="store_true", help="use the stated fixed step")
    t.add_argument("--ref", default="auto", choices=POLICIES)
    t.add_argument("--diff", action="store_true", help="compare with the published values")
    t.add_argument("--out")
    t.add_argument("--format", default="json", choices=emit.FORMATS)
    t.set_defaults(func=cmd_table)

    lm = sub.add_parser("limits", help="distance to the Schroedinger-type limits")
    lm.add_argument("--data", required=True, choices=["smooth", "nonsmooth-m1", "nonsmooth-m2"])
    lm.add_argument("--eps")
    lm.add_argument("--N", type=int, default=2048)
    lm.add_argument("--tau", type=float, default=1e-3)
    lm.add_argument("--out")
    lm.set_defaults(func=cmd_limits)

    d = sub.add_parser("demo2d", help="2D TS-FP snapshots")
    d.add_argument("--eps", type=float, required=True)
    d.add_argument("--snapshots", default="0,0.5,1")
    d.add_argument("--grid", type=int, default=64)
    d.add_argument("--tau")
    d.add_argument("--energy-every", type=int, default=0)
    d.add_argument("--richardson", type=float, default=0.0, help="also report the ratio at t")
    d.add_argument("--out", default="demo2d_out")
    d.set_defaults(func=cmd_demo2d)
    return ap


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    try:
        return a.func(a)
    except (KeyError, ValueError) as e:
        sys.stderr.write(f"kgbench: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
