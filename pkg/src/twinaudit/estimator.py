"""Retention factors and the TPR / TPE estimate chain.

Every identity-bearing quantity is an exact :class:`fractions.Fraction`;
floats appear only at the display boundary or in the explicitly approximate
log-space helper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .atp import AtpPair, CaseKind, atpg_count
from .errors import DomainError

ExactRatio = Fraction


def _require_positive(n: int) -> None:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")


def case_factor(pair: AtpPair, kind: CaseKind) -> Fraction:
    """Retention factor for one ATP pair given its case.

    Each prime member ``x`` contributes ``1 - 2/x``; composite members
    contribute nothing.
    """
    keep_a = Fraction(pair.a - 2, pair.a)
    keep_b = Fraction(pair.b - 2, pair.b)
    if kind is CaseKind.CASE_I:
        return keep_a * keep_b
    if kind is CaseKind.CASE_II:
        return keep_a
    if kind is CaseKind.CASE_III:
        return keep_b
    return Fraction(1)


def iter_tpr_ab(n_max: int) -> Iterator[Fraction]:
    """Yield ``prod_{i<=n} (6i-3)/(6i+1)`` for ``n = 1..n_max``."""
    acc = Fraction(1)
    for i in range(1, n_max + 1):
        acc *= Fraction(6 * i - 3, 6 * i + 1)
        yield acc


def iter_tpr_two_factor(n_max: int) -> Iterator[Fraction]:
    """Same sequence as :func:`iter_tpr_ab`, accumulated without telescoping."""
    acc = Fraction(1)
    for i in range(1, n_max + 1):
        acc *= (1 - Fraction(2, 6 * i - 1)) * (1 - Fraction(2, 6 * i + 1))
        yield acc


def tpr_ab(n: int) -> Fraction:
    """Conservative all-twin retention product up to index ``n``.

    >>> tpr_ab(2)
    Fraction(27, 91)
    """
    _require_positive(n)
    for value in iter_tpr_ab(n):
        pass
    return value


def tpr_log_approx(n: int) -> float:
    """Approximate ``tpr_ab(n)`` as ``exp(sum(log factors))``.

    Only for trend exploration at large n; never use it for identity checks.
    """
    _require_positive(n)
    total = math.fsum(
        math.log1p(-2.0 / (6 * i - 1)) + math.log1p(-2.0 / (6 * i + 1))
        for i in range(1, n + 1)
    )
    return math.exp(total)


def tpe_exact(n: int) -> Fraction:
    _require_positive(n)
    return atpg_count(n) * tpr_ab(n)


def tpe(n: int) -> float:
    """Estimated twin pair count below ``(6n+5)**2`` as a float."""
    return float(tpe_exact(n))


def iter_tpe_expanded(n_max: int) -> Iterator[Fraction]:
    """Yield ``3 * prod (36i^3+42i^2-12i-9)/(36i^3-6i^2-8i-1)`` for n = 1..n_max."""
    acc = Fraction(3)
    for i in range(1, n_max + 1):
        num = 36 * i**3 + 42 * i**2 - 12 * i - 9
        den = 36 * i**3 - 6 * i**2 - 8 * i - 1
        acc *= Fraction(num, den)
        yield acc


def tpe_expanded(n: int) -> Fraction:
    _require_positive(n)
    for value in iter_tpe_expanded(n):
        pass
    return value


def tpe_s(n: int) -> int:
    """Simplified lower estimate ``3n + 3``."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return 3 * n + 3


def harmonic_bound_product(n: int) -> Fraction:
    """``3 * prod_{i<=n} (1 + 1/i)``, which telescopes to ``3(n+1)``."""
    acc = Fraction(3)
    for i in range(1, n + 1):
        acc *= 1 + Fraction(1, i)
    return acc


def iter_tpe_fast(n_max: int) -> Iterator[tuple[int, int, int, int]]:
    """Yield ``(n, atpg, tpr_num, tpr_den)`` with an unreduced TPR fraction.

    Skipping the gcd keeps each step to one small-by-big multiplication,
    which is what makes exact checks up to n = 10**4 cheap.
    """
    num, den = 1, 1
    for n in range(1, n_max + 1):
        num *= 6 * n - 3
        den *= 6 * n + 1
        yield n, atpg_count(n), num, den


def lower_bound_violations(n_max: int) -> list[int]:
    """Indices n <= n_max where ``atpg_count(n) * tpr_ab(n) <= 3n + 3``, exactly."""
    return [
        n for n, atpg, num, den in iter_tpe_fast(n_max) if atpg * num <= tpe_s(n) * den
    ]


def round_half_away(x: Fraction) -> int:
    """Nearest integer, ties away from zero."""
    q = math.floor(abs(x) + Fraction(1, 2))
    return q if x >= 0 else -q


def format_percent(x: Fraction, places: int = 2) -> str:
    """Render ``x`` as a percentage with fixed decimals, ties away from zero.

    >>> format_percent(Fraction(3, 7))
    '42.86%'
    """
    scale = 10**places
    q = round_half_away(x * 100 * scale)
    sign = "-" if q < 0 else ""
    whole, frac = divmod(abs(q), scale)
    if places == 0:
        return f"{sign}{whole}%"
    return f"{sign}{whole}.{frac:0{places}d}%"


@dataclass(frozen=True)
class SlopeReport:
    n_max: int
    tpe_s_steps_all_three: bool
    min_tpe_step: Fraction
    max_tpe_step: Fraction
    min_step_at: int

    @property
    def tpe_steps_exceed_three(self) -> bool:
        return self.min_tpe_step > 3


def slope_check(n_max: int) -> SlopeReport:
    """Compare per-step growth of TPE against the constant step 3 of TPE-S."""
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    steps_ok = all(tpe_s(n) - tpe_s(n - 1) == 3 for n in range(1, n_max + 1))
    prev = None
    steps: list[tuple[Fraction, int]] = []
    for n, tpr in enumerate(iter_tpr_ab(n_max), start=1):
        cur = atpg_count(n) * tpr
        if prev is not None:
            steps.append((cur - prev, n))
        prev = cur
    lo = min(steps)
    return SlopeReport(n_max, steps_ok, lo[0], max(steps)[0], lo[1])


@dataclass(frozen=True)
class EstimateRow:
    """One row of the estimate table.

    ``tpe`` is the float image of the exact product ``atpg * tpr``.
    """

    n: int
    range_limit: int
    atpg: int
    tpr: Fraction
    tpe: float
    tpa: int
    tpe_s: int

    @property
    def tpe_exact(self) -> Fraction:
        return self.atpg * self.tpr

    @property
    def tpe_rounded(self) -> int:
        return round_half_away(self.tpe_exact)

    @property
    def tpr_percent(self) -> str:
        return format_percent(self.tpr)
