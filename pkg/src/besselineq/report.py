"""CSV and JSON serialisation of margin records, table cells and estimates."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Sequence

from .registry import MarginRecord, VerifyReport
from .scaled import EvalResult, ScaledReal, format_scaled
from .sharp import SharpConstantEstimate
from .tables import TableCell

MARGIN_COLUMNS = ("id", "nu", "beta", "n", "x", "lhs", "rhs", "rel_margin")
TABLE_COLUMNS = ("table", "nu", "x", "rel_err")
COMPARE_COLUMNS = ("table", "nu", "x", "rel_err", "rounded", "reference", "abs_diff")


def number(v) -> float | str | None:
    """JSON-friendly number: a float when representable, otherwise a decimal string."""
    if v is None:
        return None
    if isinstance(v, ScaledReal):
        f = float(v)
        if math.isfinite(f) and (f == 0.0 or abs(f) > 1e-300):
            return f
        return format_scaled(v, 17)
    f = float(v)
    return f if math.isfinite(f) else str(f)


def _cell(v) -> str:
    v = number(v)
    if v is None:
        return ""
    return v if isinstance(v, str) else repr(v)


def write_csv(rows: Iterable[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([row[c] if isinstance(row[c], str) else _cell(row[c]) for c in columns])
    return buf.getvalue()


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def record_dict(r: MarginRecord) -> dict:
    p = r.params
    return {
        "id": r.id,
        "nu": p.nu,
        "beta": p.beta,
        "n": p.n,
        "x": p.x,
        "lhs": number(r.lhs),
        "rhs": number(r.rhs),
        "margin": number(r.margin),
        "rel_margin": r.rel_margin,
        "eval_err": r.eval_err,
        "strictness": r.strictness.value,
        "on_equality_set": r.on_equality_set,
    }


def records_csv(records: Iterable[MarginRecord]) -> str:
    rows = []
    for r in records:
        p = r.params
        rows.append({"id": r.id, "nu": p.nu, "beta": p.beta, "n": p.n, "x": p.x,
                     "lhs": r.lhs, "rhs": r.rhs, "rel_margin": r.rel_margin})
    return write_csv(rows, MARGIN_COLUMNS)


def records_json(records: Iterable[MarginRecord]) -> str:
    return dump_json([record_dict(r) for r in records])


def report_summary(rep: VerifyReport) -> dict:
    by_case = rep.by_case()
    return {
        "records": len(rep.records),
        "cases": len(by_case),
        "violations": len(rep.violations),
        "tol": rep.tol,
        "min_rel_margin": {k: min(r.rel_margin for r in v) for k, v in by_case.items()},
    }


def cell_dict(c: TableCell, compare: bool) -> dict:
    d = {"table": c.table.value, "nu": c.nu, "x": c.x, "rel_err": c.rel_err}
    if compare:
        d.update({"rounded": c.rounded, "reference": c.reference, "abs_diff": c.diff})
    return d


def cells_csv(cells: Iterable[TableCell], compare: bool = False) -> str:
    cols = COMPARE_COLUMNS if compare else TABLE_COLUMNS
    return write_csv([cell_dict(c, compare) for c in cells], cols)


def cells_json(tables: dict[str, list[TableCell]], compare: bool = False) -> str:
    return dump_json({k: [cell_dict(c, compare) for c in v] for k, v in tables.items()})


def eval_dict(r: EvalResult) -> dict:
    return {"value": number(r.value), "abs_err": number(r.err), "status": r.status.value}


def estimate_dict(e: SharpConstantEstimate) -> dict:
    return {
        "nu": e.nu,
        "kind": e.kind.value,
        "value": e.value,
        "bracket": [e.lo, e.hi],
        "argmin_x": e.argmin_x,
        "meta": e.meta,
    }
