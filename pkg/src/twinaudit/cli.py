"""Command-line front end.

Usage:
    twinaudit table --n-max 50 --format csv
    twinaudit verify-table2
    twinaudit windows --n-max 2000 --cache windows.jsonl
    twinaudit audit --n-max 50
    twinaudit oracle-compare --n-max 50
    twinaudit plot --n-max 50 -o trend.svg

Exit status: 0 all checks passed, 1 a checked claim failed,
2 usage or configuration error, 3 I/O error.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import __version__
from .cache import WindowCache
from .errors import CacheError, FixtureError
from .oracle import ORACLE_LIMIT, count_twins_below_oracle
from .plotting import save_trend_svg
from .report import render_table, render_windows
from .sieve import DEFAULT_SEGMENT_SIZE
from .verifier import (
    GOLDEN_ROWS,
    audit_claims,
    load_golden,
    compare_rows,
    make_window_report,
    range_limit,
    table_rows,
    tpa_counts,
    window_counts,
)

EXIT_OK, EXIT_CLAIM_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
COMMANDS = ("table", "verify-table2", "windows", "audit", "oracle-compare", "plot")
MIN_SEGMENT_SIZE = 1 << 16


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_max: int
    output_format: str = "csv"
    cache_path: Path | None = None
    min_threshold: int = 3
    segment_size: int = DEFAULT_SEGMENT_SIZE
    workers: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if self.min_threshold < 0:
            raise ValueError("min_threshold must be >= 0")
        s = self.segment_size
        if s < MIN_SEGMENT_SIZE or s & (s - 1):
            raise ValueError(f"segment size must be a power of two >= {MIN_SEGMENT_SIZE}, got {s}")


def _check_segment_size(ctx, param, value):
    if value < MIN_SEGMENT_SIZE or value & (value - 1):
        raise click.BadParameter(f"must be a power of two >= {MIN_SEGMENT_SIZE}")
    return value


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    try:
        out.write_text(text, encoding="utf-8")
    except OSError as exc:
        _fail(f"cannot write {out}: {exc}", EXIT_IO)


def sieve_options(f):
    f = click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True,
                     help="Worker processes for segment sieving.")(f)
    f = click.option("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE, show_default=True,
                     callback=_check_segment_size, help="Odd slots per sieve segment.")(f)
    return f


def output_option(f):
    return click.option("-o", "--output", "output", type=click.Path(dir_okay=False, path_type=Path),
                        default=None, help="Write the report here instead of stdout.")(f)


def format_option(choices=("csv", "json", "text"), default="csv"):
    return click.option("--format", "fmt", type=click.Choice(choices), default=default, show_default=True)


@click.group()
@click.version_option(version=__version__, prog_name="twinaudit")
def cli():
    """Reproduce and audit the 6n±1 twin-prime estimates.

    Every subcommand shares the same exit contract: 0 success, 1 a checked
    claim failed, 2 usage/configuration error, 3 I/O error.
    """


@cli.command()
@click.option("--n-max", type=click.IntRange(min=1), default=GOLDEN_ROWS, show_default=True)
@format_option()
@output_option
@sieve_options
def table(n_max, fmt, output, segment_size, workers):
    """Emit estimate rows 1..n-max (ATPG, TPR, TPE, TPA, TPE-S)."""
    cfg = RunConfig("table", n_max, fmt, segment_size=segment_size, workers=workers)
    rows = table_rows(cfg.n_max, cfg.segment_size, cfg.workers)
    _emit(render_table(rows, cfg.output_format), output)


@cli.command("verify-table2")
@click.option("--n-max", type=click.IntRange(min=1), default=GOLDEN_ROWS, show_default=True)
@click.option("--fixture", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Tab-separated golden table (defaults to the bundled transcription).")
def verify_table2(n_max, fixture):
    """Compare recomputed rows against the golden table, cell by cell."""
    n = min(n_max, GOLDEN_ROWS)
    try:
        golden = load_golden(fixture)
    except FixtureError as exc:
        _fail(str(exc), EXIT_USAGE)
    mismatches = compare_rows(table_rows(n), golden)
    for m in mismatches:
        click.echo(str(m))
    click.echo(f"checked rows 1..{n}: {len(mismatches)} mismatch(es)")
    sys.exit(EXIT_CLAIM_FAILED if mismatches else EXIT_OK)


def _open_cache(path: Path | None) -> WindowCache | None:
    if path is None:
        return None
    try:
        return WindowCache(path, __version__).load()
    except CacheError as exc:
        click.echo(f"warning: {exc}; ignoring cache and recomputing", err=True)
        return None


def cached_window_counts(n_max: int, cache: WindowCache | None, segment_size: int, workers: int) -> list[int]:
    """Window counts for n = 0..n_max, computing only from the first uncached n."""
    missing = [n for n in range(n_max + 1) if cache is None or n not in cache]
    fresh: dict[int, int] = {}
    if missing:
        start = missing[0]
        fresh = dict(zip(range(start, n_max + 1), window_counts(start, n_max, segment_size, workers)))
    if cache is not None:
        try:
            for n, c in fresh.items():
                cache.record(n, c)
        except CacheError as exc:
            _fail(str(exc), EXIT_CLAIM_FAILED)
        except OSError as exc:
            _fail(f"cannot append to cache {cache.path}: {exc}", EXIT_IO)
    return [fresh[n] if n in fresh else cache.get(n) for n in range(n_max + 1)]


@cli.command()
@click.option("--n-max", type=click.IntRange(min=0), default=GOLDEN_ROWS, show_default=True)
@click.option("--min", "min_threshold", type=click.IntRange(min=0), default=3, show_default=True,
              help="Required twin pairs per window.")
@click.option("--cache", "cache_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Append-only JSONL cache of window counts.")
@format_option()
@output_option
@sieve_options
def windows(n_max, min_threshold, cache_path, fmt, output, segment_size, workers):
    """Count twin pairs in each window [(6n+5)², (6n+11)²) for n = 0..n-max."""
    cfg = RunConfig("windows", n_max, fmt, cache_path, min_threshold, segment_size, workers)
    counts = cached_window_counts(n_max, _open_cache(cfg.cache_path), cfg.segment_size, cfg.workers)
    reports = [make_window_report(n, c, cfg.min_threshold) for n, c in enumerate(counts)]
    _emit(render_windows(reports, cfg.output_format), output)
    failed = [r.n for r in reports if not r.meets_threshold]
    if failed:
        click.echo(f"windows below {cfg.min_threshold} twin pairs: n = {failed}", err=True)
        sys.exit(EXIT_CLAIM_FAILED)


@cli.command()
@click.option("--n-max", type=click.IntRange(min=1), default=GOLDEN_ROWS, show_default=True)
@click.option("--min", "min_threshold", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--cache", "cache_path", type=click.Path(dir_okay=False, path_type=Path), default=None)
@format_option(("json", "text"), "text")
@output_option
@sieve_options
def audit(n_max, min_threshold, cache_path, fmt, output, segment_size, workers):
    """Audit TPE <= TPA, the per-window minimum and the TPA >= TPE >= TPE-S ordering.

    Up to n = 50 these reproduce the published table; beyond that the result
    is an empirical report, signalled through the exit status.
    """
    cfg = RunConfig("audit", n_max, fmt, cache_path, min_threshold, segment_size, workers)
    counts = cached_window_counts(n_max, _open_cache(cfg.cache_path), cfg.segment_size, cfg.workers)
    reports = [make_window_report(n, c, cfg.min_threshold) for n, c in enumerate(counts)]
    result = audit_claims(n_max, cfg.min_threshold, cfg.segment_size, cfg.workers, windows=reports)
    payload = result.to_dict()
    if fmt == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        scope = "reproduction" if n_max <= GOLDEN_ROWS else "empirical report"
        lines = [f"audit n <= {n_max} ({scope})"]
        for key in ("tpe_le_tpa_violations", "window_violations", "ordering_violations"):
            vals = payload[key]
            lines.append(f"  {key}: {'none' if not vals else vals}")
        hist = ", ".join(f"{k}={v}" for k, v in payload["case_histogram"].items())
        lines.append(f"  case_histogram: {hist}")
        lines.append(f"  verdict: {'PASS' if result.clean else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    _emit(text, output)
    sys.exit(EXIT_OK if result.clean else EXIT_CLAIM_FAILED)


def max_oracle_n() -> int:
    return (math.isqrt(ORACLE_LIMIT) - 5) // 6


@cli.command("oracle-compare")
@click.option("--n-max", type=click.IntRange(min=1), default=GOLDEN_ROWS, show_default=True)
@sieve_options
def oracle_compare(n_max, segment_size, workers):
    """Check sieve twin counts against trial division at every (6n+5)²."""
    if range_limit(n_max) > ORACLE_LIMIT:
        raise click.UsageError(
            f"--n-max {n_max} gives limit {range_limit(n_max)} above the oracle bound "
            f"{ORACLE_LIMIT}; use --n-max <= {max_oracle_n()}"
        )
    sieve_counts = tpa_counts(n_max, segment_size, workers)
    bad = 0
    for n, got in enumerate(sieve_counts, start=1):
        want = count_twins_below_oracle(range_limit(n))
        if got != want:
            bad += 1
            click.echo(f"n={n} limit={range_limit(n)}: sieve {got}, oracle {want}")
    click.echo(f"compared {n_max} limit(s) up to {range_limit(n_max)}: {bad} mismatch(es)")
    sys.exit(EXIT_CLAIM_FAILED if bad else EXIT_OK)


@cli.command()
@click.option("--n-max", type=click.IntRange(min=2), default=GOLDEN_ROWS, show_default=True)
@click.option("-o", "--output", "output", type=click.Path(dir_okay=False, path_type=Path),
              default=Path("trend.svg"), show_default=True)
@sieve_options
def plot(n_max, output, segment_size, workers):
    """Render the TPA / TPE / TPE-S trend as SVG, with the plotted rows as CSV beside it."""
    rows = table_rows(n_max, segment_size, workers)
    try:
        svg = save_trend_svg(rows, output)
        sidecar = svg.with_suffix(".csv")
        sidecar.write_text(render_table(rows, "csv"), encoding="utf-8")
    except OSError as exc:
        _fail(f"cannot write {output}: {exc}", EXIT_IO)
    click.echo(f"wrote {svg} and {sidecar}")
