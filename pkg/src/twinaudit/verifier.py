"""Table reproduction and claim audits on top of the sieve and estimator."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .atp import CaseKind, atpg_count
from .errors import DomainError, FixtureError
from .estimator import EstimateRow, iter_tpr_ab, tpe_s
from .sieve import DEFAULT_SEGMENT_SIZE, iter_pair_flags, twin_indices

GOLDEN_ROWS = 50
GOLDEN_COLUMNS = ("n", "range_limit", "atpg", "tpr", "tpe", "tpa", "tpe_s")
# Twin pairs below 25, the first window's lower edge.
INITIAL_TWINS = 3


def range_limit(n: int) -> int:
    return (6 * n + 5) ** 2


def tpa_counts(n_max: int, segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1) -> list[int]:
    """Actual twin pair counts below ``(6n+5)**2`` for ``n = 1..n_max``."""
    if n_max < 1:
        return []
    b = 6 * twin_indices(5, range_limit(n_max), segment_size, workers) + 1
    limits = np.array([range_limit(n) for n in range(1, n_max + 1)], dtype=np.int64)
    return np.searchsorted(b, limits, side="left").tolist()


def table_rows(n_max: int, segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1) -> list[EstimateRow]:
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    tpas = tpa_counts(n_max, segment_size, workers)
    rows = []
    for n, (tpr, tpa) in enumerate(zip(iter_tpr_ab(n_max), tpas), start=1):
        atpg = atpg_count(n)
        rows.append(EstimateRow(n, range_limit(n), atpg, tpr, float(atpg * tpr), tpa, tpe_s(n)))
    return rows


def table_row(n: int) -> EstimateRow:
    return table_rows(n)[-1]


# -- golden fixture ---------------------------------------------------------


def default_fixture_path() -> Path:
    return Path(str(resources.files("twinaudit") / "data" / "table2.tsv"))


def load_golden(path: str | Path | None = None) -> list[dict[str, str]]:
    """Read the verbatim Table 2 transcription (tab-separated, with header)."""
    path = Path(path) if path is not None else default_fixture_path()
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh, delimiter="\t"))
    except OSError as exc:
        raise FixtureError(f"cannot read golden fixture {path}: {exc}") from exc
    if not rows or tuple(rows[0].keys()) != GOLDEN_COLUMNS:
        raise FixtureError(f"{path}: expected columns {', '.join(GOLDEN_COLUMNS)}")
    return rows


def _int_cell(text: str) -> int:
    return int(text.replace(",", "").strip())


@dataclass(frozen=True)
class Mismatch:
    n: int
    column: str
    expected: str
    actual: str

    def __str__(self) -> str:
        return f"row n={self.n} column {self.column}: expected {self.expected!r}, got {self.actual!r}"


def rendered_cells(row: EstimateRow) -> dict[str, str]:
    """Row values in the table's display conventions."""
    return {
        "n": str(row.n),
        "range_limit": str(row.range_limit),
        "atpg": str(row.atpg),
        "tpr": row.tpr_percent,
        "tpe": str(row.tpe_rounded),
        "tpa": str(row.tpa),
        "tpe_s": str(row.tpe_s),
    }


def compare_rows(rows: list[EstimateRow], golden: list[dict[str, str]]) -> list[Mismatch]:
    by_n = {}
    for g in golden:
        try:
            by_n[_int_cell(g["n"])] = g
        except (TypeError, ValueError) as exc:
            raise FixtureError(f"bad n cell {g.get('n')!r}") from exc
    out = []
    for row in rows:
        g = by_n.get(row.n)
        if g is None:
            out.append(Mismatch(row.n, "n", "<missing>", str(row.n)))
            continue
        for col, actual in rendered_cells(row).items():
            expected = (g.get(col) or "").strip()
            if col == "tpr":
                same = expected == actual
            else:
                try:
                    same = _int_cell(expected) == int(actual)
                except ValueError:
                    same = False
            if not same:
                out.append(Mismatch(row.n, col, expected, actual))
    return out


def reproduce_table2(
    n_max: int = GOLDEN_ROWS,
    fixture: str | Path | None = None,
    rows: list[EstimateRow] | None = None,
) -> list[Mismatch]:
    """Recompute rows ``1..n_max`` and list every cell that differs from the fixture."""
    if not 1 <= n_max <= GOLDEN_ROWS:
        raise DomainError(f"n_max must be in 1..{GOLDEN_ROWS}, got {n_max}")
    golden = load_golden(fixture)
    if rows is None:
        rows = table_rows(n_max)
    return compare_rows(rows[:n_max], golden)


# -- incremental windows ----------------------------------------------------


@dataclass(frozen=True)
class WindowReport:
    n: int
    window_lo: int
    window_hi: int
    twin_count: int
    meets_threshold: bool


def window_counts(
    n_lo: int,
    n_hi: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
) -> list[int]:
    """Twin counts of windows ``n_lo..n_hi`` (inclusive) from one sieve pass."""
    if n_lo < 0 or n_hi < n_lo:
        raise DomainError(f"need 0 <= n_lo <= n_hi, got {n_lo}, {n_hi}")
    edges = np.array([range_limit(n) for n in range(n_lo, n_hi + 2)], dtype=np.int64)
    a = 6 * twin_indices(int(edges[0]), int(edges[-1]), segment_size, workers) - 1
    # window edges are odd squares = 1 (mod 6), so a pair never straddles one
    return np.diff(np.searchsorted(a, edges, side="left")).tolist()


def make_window_report(n: int, twin_count: int, min_threshold: int = 3) -> WindowReport:
    return WindowReport(n, range_limit(n), range_limit(n + 1), twin_count, twin_count >= min_threshold)


def window_report(n: int, min_threshold: int = 3) -> WindowReport:
    return make_window_report(n, window_counts(n, n)[0], min_threshold)


def window_reports(
    n_max: int,
    min_threshold: int = 3,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
) -> list[WindowReport]:
    counts = window_counts(0, n_max, segment_size, workers)
    return [make_window_report(n, c, min_threshold) for n, c in enumerate(counts)]


# -- audits -----------------------------------------------------------------


def case_histogram(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
) -> dict[CaseKind, int]:
    """Count Cases I-IV over every ATP pair with ``6k+1 < limit``."""
    hist = dict.fromkeys(CaseKind, 0)
    k_hi = (limit - 2) // 6 + 1
    for _, a, b in iter_pair_flags(1, k_hi, segment_size, workers):
        both = int(np.count_nonzero(a & b))
        na, nb = int(np.count_nonzero(a)), int(np.count_nonzero(b))
        hist[CaseKind.CASE_I] += both
        hist[CaseKind.CASE_II] += na - both
        hist[CaseKind.CASE_III] += nb - both
        hist[CaseKind.CASE_IV] += a.size - na - nb + both
    return hist


@dataclass
class ClaimAudit:
    n_max: int
    tpe_le_tpa_violations: list[int] = field(default_factory=list)
    window_violations: list[int] = field(default_factory=list)
    ordering_violations: list[int] = field(default_factory=list)
    case_histogram: dict[CaseKind, int] = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return not (self.tpe_le_tpa_violations or self.window_violations or self.ordering_violations)

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "tpe_le_tpa_violations": self.tpe_le_tpa_violations,
            "window_violations": self.window_violations,
            "ordering_violations": self.ordering_violations,
            "case_histogram": {k.name: v for k, v in self.case_histogram.items()},
            "clean": self.clean,
        }


def audit_claims(
    n_max: int,
    min_threshold: int = 3,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    windows: list[WindowReport] | None = None,
) -> ClaimAudit:
    """Check TPE <= TPA, the per-window minimum and TPA >= TPE >= TPE-S for n <= n_max.

    Window checks cover n = 0..n_max; estimate checks cover n = 1..n_max.
    The audit reports what it finds and never raises on a failed claim.
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    audit = ClaimAudit(n_max)
    for row in table_rows(n_max, segment_size, workers):
        est = row.tpe_rounded
        if est > row.tpa:
            audit.tpe_le_tpa_violations.append(row.n)
        if not row.tpa >= est >= row.tpe_s:
            audit.ordering_violations.append(row.n)
    if windows is None:
        windows = window_reports(n_max, min_threshold, segment_size, workers)
    audit.window_violations = [w.n for w in windows if w.twin_count < min_threshold]
    audit.case_histogram = case_histogram(range_limit(n_max), segment_size, workers)
    return audit
