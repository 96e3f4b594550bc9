"""ATP pairs ``(6n-1, 6n+1)``: construction, case classification and counts."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import DomainError
from .sieve import is_prime as _sieve_is_prime


@dataclass(frozen=True)
class AtpPair:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise DomainError(f"ATP index must be >= 1, got {self.index}")

    @property
    def a(self) -> int:
        return 6 * self.index - 1

    @property
    def b(self) -> int:
        return 6 * self.index + 1

    def as_tuple(self) -> tuple[int, int]:
        return (self.a, self.b)


class CaseKind(enum.IntEnum):
    """Which members of an ATP pair are prime.

    Ordered so that the corresponding retention factors increase with the
    enum value.
    """

    CASE_I = 1  # both prime: a twin prime pair
    CASE_II = 2  # first member prime only
    CASE_III = 3  # second member prime only
    CASE_IV = 4  # neither prime

    @classmethod
    def from_flags(cls, a_prime: bool, b_prime: bool) -> "CaseKind":
        if a_prime:
            return cls.CASE_I if b_prime else cls.CASE_II
        return cls.CASE_III if b_prime else cls.CASE_IV


def atp_pair(n: int) -> AtpPair:
    return AtpPair(n)


def classify(pair: AtpPair, primality: Callable[[int], bool] = _sieve_is_prime) -> CaseKind:
    return CaseKind.from_flags(primality(pair.a), primality(pair.b))


def atpg_count(n: int) -> int:
    """Number of ATP pairs below ``(6n+5)**2``, i.e. ``((6n+5)**2 - 1)/6 - 1``.

    >>> [atpg_count(n) for n in range(5)]
    [3, 19, 47, 87, 139]
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return ((6 * n + 5) ** 2 - 1) // 6 - 1


def atpg_ratio(n: int) -> Fraction:
    """Exact growth ratio ``atpg_count(n) / atpg_count(n-1)``.

    Equal to ``(6n^2 + 10n + 3) / (6n^2 - 2n - 1)``.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return Fraction(6 * n * n + 10 * n + 3, 6 * n * n - 2 * n - 1)


@dataclass(frozen=True)
class StrikePattern:
    """Residues of n (mod p) at which p divides a member of pair n.

    ``p | 6n-1`` exactly when ``n % p == residue_a``; ``p | 6n+1`` exactly
    when ``n % p == residue_b``. Index 0 maps to the pair (-1, 1).
    """

    p: int
    residue_a: int
    residue_b: int

    def strikes(self, n: int) -> bool:
        return n % self.p in (self.residue_a, self.residue_b)

    def struck_in_block(self, start: int) -> list[int]:
        """Struck indices among ``start, ..., start + p - 1``."""
        return sorted(
            start + (r - start) % self.p for r in {self.residue_a, self.residue_b}
        )


def strike_pattern(p: int) -> StrikePattern:
    if p < 5 or not _sieve_is_prime(p):
        raise DomainError(f"strike patterns need a prime p >= 5, got {p}")
    inv6 = pow(6, -1, p)
    return StrikePattern(p, inv6 % p, (-inv6) % p)
