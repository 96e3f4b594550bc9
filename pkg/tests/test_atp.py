from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twinaudit.atp import AtpPair, CaseKind, atp_pair, atpg_count, atpg_ratio, classify, strike_pattern
from twinaudit.errors import DomainError
from twinaudit.oracle import trial_division_is_prime
from twinaudit.sieve import primes_up_to, twin_pairs_in


@pytest.mark.parametrize("n, pair", [(1, (5, 7)), (10, (59, 61)), (17, (101, 103))])
def test_atp_pair(n, pair):
    assert atp_pair(n).as_tuple() == pair


def test_atp_pair_rejects_zero():
    with pytest.raises(DomainError):
        atp_pair(0)


@given(st.integers(1, 10**9))
def test_pair_members_avoid_2_and_3(n):
    p = AtpPair(n)
    assert p.b - p.a == 2
    assert all(x % 2 and x % 3 for x in (p.a, p.b))


@pytest.mark.parametrize(
    "n, kind",
    [(1, CaseKind.CASE_I), (4, CaseKind.CASE_II), (6, CaseKind.CASE_III), (20, CaseKind.CASE_IV)],
)
def test_classify(n, kind):
    assert classify(atp_pair(n)) is kind
    assert classify(atp_pair(n), trial_division_is_prime) is kind


def test_case_partition_and_twin_bijection():
    limit = (6 * 12 + 5) ** 2
    ks = range(1, atpg_count(12) + 1)
    kinds = [classify(AtpPair(k), trial_division_is_prime) for k in ks]
    counts = {c: kinds.count(c) for c in CaseKind}
    assert sum(counts.values()) == len(ks)
    case_one = [k for k, c in zip(ks, kinds) if c is CaseKind.CASE_I]
    assert case_one == [p.k for p in twin_pairs_in(5, limit)]


def test_atpg_count_published():
    assert [atpg_count(n) for n in range(5)] == [3, 19, 47, 87, 139]
    assert atpg_count(50) == 15503


def test_atpg_count_negative():
    with pytest.raises(DomainError):
        atpg_count(-1)


@pytest.mark.parametrize("n", [0, 1, 2, 7, 50, 999, 1000])
def test_atpg_count_by_enumeration(n):
    limit = (6 * n + 5) ** 2
    k = 1
    while 6 * (k + 1) + 1 < limit:
        k += 1
    assert atpg_count(n) == k


def test_atpg_ratio_values():
    assert atpg_ratio(1) == Fraction(19, 3)
    assert atpg_ratio(2) == Fraction(47, 19)


@given(st.integers(1, 5000))
def test_atpg_ratio_defining_identity(n):
    assert atpg_ratio(n) == Fraction(atpg_count(n), atpg_count(n - 1))


def test_atpg_product_telescopes():
    acc = Fraction(3)
    for n in range(1, 1001):
        acc *= atpg_ratio(n)
        assert acc == atpg_count(n)


class TestStrikePattern:
    def test_five(self):
        sp = strike_pattern(5)
        assert (sp.residue_a, sp.residue_b) == (1, 4)

    def test_seven(self):
        sp = strike_pattern(7)
        assert (sp.residue_a, sp.residue_b) == (6, 1)
        # 35 = 6*6-1 and 49 = 6*8+1 are struck in the n=1..35 listing
        assert sp.strikes(6) and sp.strikes(8) and not sp.strikes(7)

    @pytest.mark.parametrize("p", [2, 3, 4, 25, 1])
    def test_rejects(self, p):
        with pytest.raises(DomainError):
            strike_pattern(p)

    @pytest.mark.parametrize("p", [5, 7, 11, 13, 101, 9973])
    def test_residues_are_divisibility(self, p):
        sp = strike_pattern(p)
        n = np.arange(0, 3 * p)
        assert np.array_equal((6 * n - 1) % p == 0, n % p == sp.residue_a)
        assert np.array_equal((6 * n + 1) % p == 0, n % p == sp.residue_b)
        assert sp.residue_a != sp.residue_b
        assert (sp.residue_a + sp.residue_b) % p == 0

    @given(st.sampled_from(primes_up_to(2000)[2:]), st.integers(0, 10**6))
    def test_block_has_two_struck(self, p, start):
        sp = strike_pattern(p)
        struck = sp.struck_in_block(start)
        brute = [n for n in range(start, start + p) if (6 * n - 1) % p == 0 or (6 * n + 1) % p == 0]
        assert struck == brute and len(brute) == 2
