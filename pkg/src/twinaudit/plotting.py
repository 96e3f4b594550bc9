"""Static SVG trend chart of actual vs estimated twin pair counts."""

from __future__ import annotations

from pathlib import Path

import matplotlib as mpl
from matplotlib.figure import Figure

from .estimator import EstimateRow

SERIES = (
    # (gid, label, row attribute, style)
    ("tpa", "TPA (actual)", "tpa", {"color": "black", "marker": "o", "markersize": 2.5}),
    ("tpe", "TPE (estimate)", "tpe_rounded", {"color": "tab:blue", "linestyle": "--"}),
    ("tpe_s", "TPE-S (3n+3)", "tpe_s", {"color": "tab:red", "linestyle": ":"}),
)


def series(rows: list[EstimateRow]) -> dict[str, list[int]]:
    return {gid: [getattr(r, attr) for r in rows] for gid, _, attr, _ in SERIES}


def trend_figure(rows: list[EstimateRow]) -> Figure:
    fig = Figure(figsize=(6.4, 4.0))
    ax = fig.add_subplot()
    ns = [r.n for r in rows]
    for gid, label, attr, style in SERIES:
        (line,) = ax.plot(ns, [getattr(r, attr) for r in rows], label=label, linewidth=1.2, **style)
        line.set_gid(gid)
    ax.set_xlabel("n  (range limit (6n+5)²)")
    ax.set_ylabel("twin prime pairs below (6n+5)²")
    ax.set_xlim(ns[0], ns[-1])
    ax.set_ylim(bottom=0)
    ax.grid(alpha=0.3, linewidth=0.5)
    ax.legend(loc="upper left", frameon=False)
    fig.tight_layout()
    return fig


def save_trend_svg(rows: list[EstimateRow], path: str | Path) -> Path:
    """Write the three-series chart as a standalone, script-free SVG."""
    if len(rows) < 2:
        raise ValueError("a trend chart needs at least two rows")
    path = Path(path)
    fig = trend_figure(rows)
    with mpl.rc_context({"svg.hashsalt": "twinaudit", "svg.fonttype": "path"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    return path
