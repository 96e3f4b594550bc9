"""Trial-division cross-check for the sieve.

Nothing here touches :mod:`twinaudit.sieve`; it is slow on purpose and only
meant to confirm sieve output on modest limits.
"""

from __future__ import annotations

from functools import lru_cache

# Bound on the oracle's largest limit; anything larger takes minutes.
ORACLE_LIMIT = 10**7


def trial_division_is_prime(x: int) -> bool:
    if x < 2:
        return False
    if x % 2 == 0:
        return x == 2
    d = 3
    while d * d <= x:
        if x % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=8)
def _twin_ks_below(limit: int) -> tuple[int, ...]:
    ks = []
    k = 1
    while 6 * k + 1 < limit:
        if trial_division_is_prime(6 * k - 1) and trial_division_is_prime(6 * k + 1):
            ks.append(k)
        k += 1
    return tuple(ks)


def twin_ks_oracle(lo: int, hi: int, ceiling: int | None = None) -> list[int]:
    """Indices k with ``lo <= 6k-1``, ``6k+1 < hi`` and both members prime.

    Passing a shared ``ceiling >= hi`` lets many queries reuse one scan.
    """
    scan = _twin_ks_below(max(hi, ceiling or hi))
    return [k for k in scan if 6 * k - 1 >= lo and 6 * k + 1 < hi]


def count_twins_below_oracle(limit: int) -> int:
    """Count twin pairs ``(6k-1, 6k+1)`` with ``6k+1 < limit`` by trial division.

    >>> count_twins_below_oracle(25)
    3
    """
    return len(_twin_ks_below(limit))
