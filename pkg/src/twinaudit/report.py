"""CSV / JSON / text renderings of table rows and window reports."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict

from .estimator import EstimateRow
from .verifier import WindowReport

TABLE_HEADER = ("n", "range_limit", "atpg", "tpr_percent", "tpe", "tpa", "tpe_s")
WINDOW_HEADER = ("n", "window_lo", "window_hi", "twin_count", "meets_threshold")


def row_record(row: EstimateRow) -> dict:
    return {
        "n": row.n,
        "range_limit": row.range_limit,
        "atpg": row.atpg,
        "tpr_percent": row.tpr_percent[:-1],
        "tpe": row.tpe_rounded,
        "tpa": row.tpa,
        "tpe_s": row.tpe_s,
    }


def _csv(header, records) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(records)
    return buf.getvalue()


def _text(header, records) -> str:
    cells = [list(header)] + [[str(r[h]) for h in header] for r in records]
    widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(line, widths)) for line in cells]
    return "\n".join(lines) + "\n"


def render_table(rows: list[EstimateRow], fmt: str) -> str:
    records = [row_record(r) for r in rows]
    if fmt == "csv":
        return _csv(TABLE_HEADER, records)
    if fmt == "json":
        for rec, row in zip(records, rows):
            rec["tpr"] = {"num": str(row.tpr.numerator), "den": str(row.tpr.denominator)}
        return json.dumps(records, indent=2) + "\n"
    if fmt == "text":
        return _text(TABLE_HEADER, records)
    raise ValueError(f"unknown format {fmt!r}")


def render_windows(reports: list[WindowReport], fmt: str) -> str:
    records = [asdict(r) for r in reports]
    if fmt == "csv":
        for rec in records:
            rec["meets_threshold"] = str(rec["meets_threshold"]).lower()
        return _csv(WINDOW_HEADER, records)
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    if fmt == "text":
        return _text(WINDOW_HEADER, records)
    raise ValueError(f"unknown format {fmt!r}")
