"""CSV/JSON emission of error tables and diffs against published values."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .. import __version__
from .sweep import CellDiff, ErrorTable, compare_einf, compare_published

FORMATS = ("csv", "json")
CSV_FIELDS = ("row", "row_label", "column", "column_label", "axis_value", "error", "rate",
              "flag", "wall")
JSON_KIND = "kgbench-error-table"


def _provenance(t: ErrorTable) -> dict:
    meta = dict(t.meta)
    meta.setdefault("kgbench_version", __version__)
    return meta


def table_to_csv(t: ErrorTable) -> str:
    """Long-format CSV; provenance goes into leading ``#`` comment lines."""
    buf = io.StringIO()
    for k, v in sorted(_provenance(t).items()):
        buf.write(f"# {k}={json.dumps(v)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    rates = t.rates if t.errors.size else t.errors
    for i, key in enumerate(t.rows):
        for j in range(len(t.columns)):
            w.writerow([key, t.row_labels[i], t.columns[j], t.column_labels[j],
                        repr(float(t.axis_values[j])), repr(float(t.errors[i, j])),
                        repr(float(rates[i, j])), t.flags[i][j], repr(float(t.wall[i, j]))])
    return buf.getvalue()


def table_to_json(t: ErrorTable) -> str:
    doc = {"kind": JSON_KIND, "version": 1}
    d = t.to_dict()
    d["meta"] = _provenance(t)
    doc.update(d)
    return json.dumps(doc, indent=1)


def table_from_json(text: str) -> ErrorTable:
    doc = json.loads(text)
    if doc.get("kind") != JSON_KIND:
        raise ValueError("not a kgbench error table")
    return ErrorTable.from_dict(doc)


def emit_table(t: ErrorTable, fmt: str = "csv", path=None) -> str:
    """Render ``t`` as CSV or JSON; write it to ``path`` when given."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    text = table_to_csv(t) if fmt == "csv" else table_to_json(t)
    if path is not None:
        Path(path).write_text(text)
    return text


def _fmt(v) -> str:
    if v is None:
        return "unstable"
    if isinstance(v, float) and math.isinf(v):
        return "blow-up"
    return f"{v:.3E}"


def diff_report(t: ErrorTable, ref=None) -> tuple[str, list[CellDiff]]:
    """Side-by-side comparison with the embedded published table."""
    cells = compare_published(t, ref) + compare_einf(t, ref)
    lines = [f"{'row':>10} {'col':>4} {'computed':>11} {'published':>11} {'ratio':>7} "
             f"{'tol':>5}  status"]
    for c in cells:
        ratio = "" if math.isnan(c.ratio) else f"{c.ratio:.3f}"
        tol = "" if c.published is None else f"{c.tol:.2f}"
        lines.append(f"{str(c.row):>10} {c.column:>4} {_fmt(c.value):>11} "
                     f"{_fmt(c.published):>11} {ratio:>7} {tol:>5}  "
                     f"{'ok' if c.ok else 'MISMATCH'}")
    n_ok = sum(c.ok for c in cells)
    lines.append(f"{n_ok}/{len(cells)} cells within tolerance")
    return "\n".join(lines) + "\n", cells


def format_table(t: ErrorTable) -> str:
    """Plain-text grid of errors with local rates beneath each row."""
    width = 11
    head = f"{'':>14}" + "".join(f"{c[:width]:>{width + 1}}" for c in t.column_labels)
    lines = [head]
    rates = t.rates
    for i, lab in enumerate(t.row_labels):
        cells = []
        for j in range(len(t.columns)):
            e = t.errors[i, j]
            cells.append("unstable" if t.flags[i][j] == "unstable" else
                         ("-" if math.isnan(e) else f"{e:.3E}"))
        lines.append(f"{str(lab)[:14]:>14}" + "".join(f"{c:>{width + 1}}" for c in cells))
        rr = ["" if math.isnan(r) else f"{r:.2f}" + ("*" if t.flags[i][j] == "resonance" else "")
              for j, r in enumerate(rates[i])]
        lines.append(f"{'rate':>14}" + "".join(f"{c:>{width + 1}}" for c in rr))
    if len(t.rows) > 1:
        lines.append(f"{'e_inf':>14}" + "".join(
            f"{('-' if math.isnan(e) else f'{e:.3E}'):>{width + 1}}" for e in t.e_inf))
    return "\n".join(lines) + "\n"
