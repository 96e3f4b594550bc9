from fractions import Fraction

import pytest

from twinaudit.atp import CaseKind, atpg_count
from twinaudit.errors import DomainError, FixtureError
from twinaudit.oracle import count_twins_below_oracle, twin_ks_oracle
from twinaudit.verifier import (
    INITIAL_TWINS,
    audit_claims,
    case_histogram,
    load_golden,
    range_limit,
    reproduce_table2,
    table_row,
    table_rows,
    tpa_counts,
    window_counts,
    window_report,
    window_reports,
)


@pytest.fixture(scope="module")
def rows50():
    return table_rows(50)


@pytest.mark.parametrize(
    "n, expected",
    [
        (1, (121, 19, "42.86%", 8, 9, 6)),
        (25, (24025, 4003, "6.07%", 243, 401, 78)),
        (50, (93025, 15503, "3.84%", 595, 1147, 153)),
    ],
)
def test_table_row(n, expected):
    row = table_row(n)
    assert (row.range_limit, row.atpg, row.tpr_percent, row.tpe_rounded, row.tpa, row.tpe_s) == expected


def test_row_invariants(rows50):
    for row in rows50:
        assert row.range_limit == (6 * row.n + 5) ** 2
        assert row.tpe == float(row.atpg * row.tpr)
        assert row.tpe_exact > row.tpe_s


def test_tpa_matches_oracle():
    assert tpa_counts(50) == [count_twins_below_oracle(range_limit(n)) for n in range(1, 51)]


class TestGolden:
    def test_fixture_shape(self):
        golden = load_golden()
        assert len(golden) == 50
        assert golden[0] == {"n": "1", "range_limit": "121", "atpg": "19", "tpr": "42.86%",
                             "tpe": "8", "tpa": "9", "tpe_s": "6"}
        assert golden[-1]["tpa"] == "1,147"

    def test_reproduces_all_rows(self, rows50):
        assert reproduce_table2(50, rows=rows50) == []

    def test_single_row(self):
        assert reproduce_table2(1) == []

    def test_corrupted_cell(self, tmp_path):
        text = load_golden_text().replace("3.84%\t595\t1,147\t", "3.84%\t595\t1,148\t")
        bad = tmp_path / "t2.tsv"
        bad.write_text(text)
        mismatches = reproduce_table2(50, fixture=bad)
        assert len(mismatches) == 1
        m = mismatches[0]
        assert (m.n, m.column, m.expected, m.actual) == (50, "tpa", "1,148", "1147")

    def test_missing_fixture(self, tmp_path):
        with pytest.raises(FixtureError):
            load_golden(tmp_path / "nope.tsv")

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            reproduce_table2(51)


def load_golden_text():
    from twinaudit.verifier import default_fixture_path

    return default_fixture_path().read_text()


class TestWindows:
    def test_first_window(self):
        w = window_report(0)
        assert (w.window_lo, w.window_hi, w.twin_count, w.meets_threshold) == (25, 121, 6, True)

    def test_published_differences(self):
        assert window_report(1).twin_count == 18 - 9
        assert window_report(49).twin_count == 1147 - 1108

    def test_against_oracle(self):
        for n, c in enumerate(window_counts(0, 30)):
            assert c == len(twin_ks_oracle(range_limit(n), range_limit(n + 1)))

    def test_tiling(self):
        reports = window_reports(60)
        for a, b in zip(reports, reports[1:]):
            assert a.window_hi == b.window_lo
        tpa = tpa_counts(61)
        for n in range(1, 62):
            assert INITIAL_TWINS + sum(r.twin_count for r in reports[:n]) == tpa[n - 1]

    def test_subrange_consistent(self):
        assert window_counts(10, 20) == window_counts(0, 20)[10:]

    def test_threshold_flag(self):
        assert not window_report(0, min_threshold=7).meets_threshold

    def test_rejects(self):
        with pytest.raises(DomainError):
            window_counts(3, 2)


@pytest.fixture(scope="module")
def audit50():
    return audit_claims(50)


class TestAudit:
    def test_clean(self, audit50):
        assert audit50.clean
        assert audit50.tpe_le_tpa_violations == audit50.window_violations == audit50.ordering_violations == []

    def test_histogram(self, audit50):
        hist = audit50.case_histogram
        assert sum(hist.values()) == atpg_count(50) == 15503
        assert hist[CaseKind.CASE_I] == 1147

    def test_histogram_against_oracle(self):
        from twinaudit.atp import AtpPair, classify
        from twinaudit.oracle import trial_division_is_prime

        limit = range_limit(6)
        brute = dict.fromkeys(CaseKind, 0)
        for k in range(1, atpg_count(6) + 1):
            brute[classify(AtpPair(k), trial_division_is_prime)] += 1
        assert case_histogram(limit) == brute
        assert case_histogram(limit, segment_size=16) == brute

    def test_threshold_violation_reported(self):
        audit = audit_claims(5, min_threshold=10)
        # Table 2 differences: windows 0..5 hold 6, 9, 6, 8, 8, 12 pairs
        assert audit.window_violations == [0, 1, 2, 3, 4]
        assert not audit.clean

    def test_to_dict(self, audit50):
        d = audit50.to_dict()
        assert d["case_histogram"]["CASE_I"] == 1147 and d["clean"] is True

    def test_deterministic(self):
        assert audit_claims(20).to_dict() == audit_claims(20, segment_size=64, workers=2).to_dict()


def test_exact_tpr_in_rows(rows50):
    assert rows50[0].tpr == Fraction(3, 7)
