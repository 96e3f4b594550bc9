"""Odd-only, bit-packed segmented sieve of Eratosthenes.

Segments are independent pure computations: any partition of a range can be
sieved in any order (or in parallel) and merged in ascending order with a
byte-identical result.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache, partial
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError, InsufficientBasePrimesError

# Odd slots per segment: 2**20 bits = 128 KiB packed.
DEFAULT_SEGMENT_SIZE = 1 << 20


@lru_cache(maxsize=32)
def _base_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    out = np.flatnonzero(flags).astype(np.int64)
    out.setflags(write=False)
    return out


def primes_up_to(limit: int) -> list[int]:
    """Return every prime ``<= limit`` in ascending order.

    >>> primes_up_to(10)
    [2, 3, 5, 7]
    """
    if limit < 2:
        raise DomainError(f"limit must be >= 2, got {limit}")
    return _base_primes(limit).tolist()


@dataclass(frozen=True, eq=False)
class PrimalityMap:
    """Primality of every integer in ``[lo, hi)``, one bit per odd number.

    Bits are stored little-endian with ``np.packbits``; bit ``i`` describes
    ``first_odd + 2*i``. Even numbers are answered arithmetically.
    """

    lo: int
    hi: int
    bits: np.ndarray = field(repr=False)

    @property
    def first_odd(self) -> int:
        return self.lo | 1

    @property
    def n_slots(self) -> int:
        return max(0, (self.hi - self.first_odd + 1) // 2)

    def odd_mask(self) -> np.ndarray:
        return np.unpackbits(self.bits, count=self.n_slots, bitorder="little").astype(bool)

    def is_prime(self, x: int) -> bool:
        if not self.lo <= x < self.hi:
            raise DomainError(f"{x} outside segment [{self.lo}, {self.hi})")
        if x == 2:
            return True
        if x % 2 == 0:
            return False
        i = (x - self.first_odd) // 2
        return bool((self.bits[i >> 3] >> (i & 7)) & 1)

    def __contains__(self, x: int) -> bool:
        return self.lo <= x < self.hi and self.is_prime(x)

    def primes(self) -> np.ndarray:
        """Ascending array of the primes in the segment."""
        odd = self.first_odd + 2 * np.flatnonzero(self.odd_mask()).astype(np.int64)
        if self.lo <= 2 < self.hi:
            return np.concatenate([np.array([2], dtype=np.int64), odd])
        return odd


def _check_base(hi: int, base: np.ndarray) -> None:
    bound = math.isqrt(hi - 1)
    needed = _base_primes(bound)
    have = int(np.count_nonzero(base <= bound)) if base.size else 0
    if have < needed.size or not np.array_equal(base[: needed.size], needed):
        raise InsufficientBasePrimesError(bound, needed.size - min(have, needed.size))


def _sieve_odd_mask(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    first = lo | 1
    mask = np.ones(max(0, (hi - first + 1) // 2), dtype=bool)
    if first == 1 and mask.size:
        mask[0] = False
    for p in base.tolist():
        if p == 2:
            continue
        sq = p * p
        if sq >= hi:
            break
        start = max(sq, -(-lo // p) * p)
        if start % 2 == 0:
            start += p
        if start < hi:
            mask[(start - first) // 2 :: p] = False
    return mask


def sieve_segment(
    lo: int,
    hi: int,
    base_primes: Sequence[int],
    max_slots: int = DEFAULT_SEGMENT_SIZE,
) -> PrimalityMap:
    """Sieve the half-open range ``[lo, hi)``.

    Args:
        lo: Inclusive lower bound, at least 2.
        hi: Exclusive upper bound, greater than ``lo``.
        base_primes: Ascending primes; must contain every prime up to
            ``isqrt(hi - 1)``. Extra larger primes are ignored.
        max_slots: Upper bound on the number of odd slots in one segment.

    Raises:
        DomainError: If the bounds are invalid or the segment is too long.
        InsufficientBasePrimesError: If ``base_primes`` stops short.
    """
    if lo < 2 or hi <= lo:
        raise DomainError(f"need 2 <= lo < hi, got lo={lo}, hi={hi}")
    base = np.asarray(base_primes, dtype=np.int64)
    _check_base(hi, base)
    slots = max(0, (hi - (lo | 1) + 1) // 2)
    if slots > max_slots:
        raise DomainError(f"segment has {slots} odd slots, limit is {max_slots}")
    mask = _sieve_odd_mask(lo, hi, base)
    return PrimalityMap(lo, hi, np.packbits(mask, bitorder="little"))


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    return sieve_segment(x, x + 1, _base_primes(math.isqrt(x))).is_prime(x)


@dataclass(frozen=True)
class TwinPairIndex:
    """A confirmed twin prime pair ``(6k-1, 6k+1)``."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"pair index must be positive, got {self.k}")

    @property
    def a(self) -> int:
        return 6 * self.k - 1

    @property
    def b(self) -> int:
        return 6 * self.k + 1

    def as_tuple(self) -> tuple[int, int]:
        return (self.a, self.b)


# Pair-index chunking: chunk [k0, k1] covers integers [6*k0-1, 6*k1+2),
# i.e. 3*(k1-k0)+2 odd slots.
def _chunk_bounds(k_lo: int, k_hi: int, segment_size: int) -> list[tuple[int, int]]:
    step = max(1, (segment_size - 2) // 3)
    return [(k, min(k + step, k_hi)) for k in range(k_lo, k_hi, step)]


def _pair_flags(chunk: tuple[int, int], base: np.ndarray, segment_size: int):
    k0, k1 = chunk
    seg = sieve_segment(6 * k0 - 1, 6 * k1 + 1, base, max_slots=segment_size)
    mask = seg.odd_mask()
    # 6k-1 sits at slot 3*(k-k0), 6k+1 one slot later
    ia = np.arange(0, 3 * (k1 - k0), 3)
    return k0, mask[ia], mask[ia + 1]


def iter_pair_flags(
    k_lo: int,
    k_hi: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield primality flags of ATP pair members for indices ``k_lo <= k < k_hi``.

    Each item is ``(k_start, a_is_prime, b_is_prime)`` for one chunk, in
    ascending chunk order regardless of ``workers``.
    """
    if k_lo < 1:
        raise DomainError(f"pair indices start at 1, got {k_lo}")
    if k_hi <= k_lo:
        return
    base = _base_primes(math.isqrt(6 * k_hi))
    chunks = _chunk_bounds(k_lo, k_hi, segment_size)
    work = partial(_pair_flags, base=base, segment_size=segment_size)
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(work, chunks)
    else:
        yield from map(work, chunks)


def pair_index_range(lo: int, hi: int) -> tuple[int, int]:
    """Half-open ``[k_lo, k_hi)`` of indices with ``lo <= 6k-1`` and ``6k+1 < hi``."""
    return (lo + 6) // 6, (hi - 2) // 6 + 1


def twin_indices(
    lo: int,
    hi: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
) -> np.ndarray:
    """Ascending int64 array of twin pair indices ``k`` inside ``[lo, hi)``."""
    if lo < 5:
        raise DomainError(f"range must start at or after 5, got lo={lo}")
    if hi <= lo:
        raise DomainError(f"need lo < hi, got lo={lo}, hi={hi}")
    k_lo, k_hi = pair_index_range(lo, hi)
    parts = [
        k0 + np.flatnonzero(a & b)
        for k0, a, b in iter_pair_flags(k_lo, k_hi, segment_size, workers)
    ]
    if not parts:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(parts).astype(np.int64)


def twin_pairs_in(
    lo: int,
    hi: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
) -> list[TwinPairIndex]:
    """Twin pairs ``(6k-1, 6k+1)`` with both members in ``[lo, hi)``.

    The pair (3, 5) is not of this form and is never reported.

    >>> [p.k for p in twin_pairs_in(5, 121)]
    [1, 2, 3, 5, 7, 10, 12, 17, 18]
    """
    return [TwinPairIndex(int(k)) for k in twin_indices(lo, hi, segment_size, workers)]


def count_twins(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1) -> int:
    return int(twin_indices(lo, hi, segment_size, workers).size)
