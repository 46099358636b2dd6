import csv
import io
from fractions import Fraction
from math import comb

import pytest

from refined_invariants.asymptotics import q_poly_interpolated, stabilization_threshold
from refined_invariants.exact import Series
from refined_invariants.genus_series import (
    VARIANTS,
    arbitrate_codegree2,
    binom,
    codegree_closed,
    coefficient_table,
    genus_gf,
    table_to_csv,
)


def comb0(top, k):
    return comb(top, k) if k >= 0 and top >= 0 else 0


def stable_ns(g, i, count=6):
    n0 = stabilization_threshold(g, i) + 1
    return range(n0, n0 + count)


class TestBinom:
    def test_negative_lower_index(self):
        assert binom(5, -1) == 0

    def test_matches_comb(self):
        for top in range(0, 12):
            for k in range(0, 12):
                assert binom(top, k) == comb(top, k)

    def test_hilbert_form_for_negative_top(self):
        assert binom(-1, 2) == 1
        assert binom(-2, 3) == -4


class TestCodegreeClosed:
    def test_examples(self):
        assert codegree_closed(0, 3, 10) == 45
        assert codegree_closed(1, 4, 13) == -26
        for n in range(5, 30):
            assert codegree_closed(1, 3, n) == 0

    @pytest.mark.parametrize("i", [0, 1])
    @pytest.mark.parametrize("g", range(2, 11))
    def test_printed_equals_general(self, i, g):
        for n in stable_ns(g, i):
            assert codegree_closed(i, g, n, "paper") == codegree_closed(i, g, n, "general")

    @pytest.mark.parametrize("g", range(3, 11))
    def test_corrected_codegree2_equals_general(self, g):
        for n in stable_ns(g, 2, 3):
            assert codegree_closed(2, g, n, "corrected") == codegree_closed(2, g, n, "general")

    def test_printed_codegree2_differs_at_genus_three(self):
        # the true coefficient is 0; the printed formula gives -2n
        assert q_poly_interpolated(3, 2).is_zero()
        assert codegree_closed(2, 3, 11, "paper") == -22

    def test_rejects_codegree_three(self):
        with pytest.raises(ValueError):
            codegree_closed(3, 4, 20)

    def test_rejects_unknown_variant(self):
        with pytest.raises(ValueError):
            codegree_closed(1, 4, 20, "nope")


class TestGenusGF:
    def test_codegree0_example(self):
        want = [comb0(5, g - 1) for g in range(7)]
        want[1] = 0
        assert genus_gf(0, 5, 6) == Series(want, 6)

    def test_codegree1_example(self):
        want = [0] * 4 + [-20 * comb(7, k) for k in range(5)]
        assert genus_gf(1, 10, 8) == Series(want, 8)

    @pytest.mark.parametrize("n", [7, 12, 20])
    def test_codegree1_starts_at_u4(self, n):
        s = genus_gf(1, n, 6)
        assert s[2] == 0 and s[3] == 0

    @pytest.mark.parametrize("i", [0, 1])
    @pytest.mark.parametrize("n", [20, 30])
    def test_closed_equals_general(self, i, n):
        assert genus_gf(i, n, 12, "closed") == genus_gf(i, n, 12, "general")

    def test_codegree2_closed_is_the_printed_series(self):
        # the rational expansion mirrors the printed i = 2 formula term by term
        n = 40
        s = genus_gf(2, n, 9, "closed")
        for g in range(2, 10):
            assert s[g] == codegree_closed(2, g, n, "paper")

    def test_codegree2_printed_series_disagrees_with_general(self):
        assert genus_gf(2, 40, 9, "closed") != genus_gf(2, 40, 9, "general")

    def test_rejects_bad_source(self):
        with pytest.raises(ValueError):
            genus_gf(0, 10, 4, "other")


class TestArbitration:
    def test_outcome(self):
        rows = arbitrate_codegree2()
        assert [r.genus for r in rows] == [4, 5, 6]
        for r in rows:
            assert r.validated == ("corrected", "general")
            assert not r.matches("paper")

    def test_discrepancy_genus_four(self):
        (row,) = arbitrate_codegree2((4,))
        # printed minus interpolated at g = 4
        n = 30
        want = codegree_closed(2, 4, n, "paper") - codegree_closed(2, 4, n, "general")
        assert row.discrepancy("paper")(n) == want
        assert not row.discrepancy("paper").is_zero()

    def test_discrepancy_is_stable_in_n(self):
        (row,) = arbitrate_codegree2((5,))
        d = row.discrepancy("paper")
        for n in range(stabilization_threshold(5, 2), 80):
            assert d(n) == codegree_closed(2, 5, n, "paper") - codegree_closed(2, 5, n, "general")

    def test_json(self):
        data = arbitrate_codegree2((4,))[0].to_json()
        assert data["genus"] == 4
        assert set(data["variants"]) == set(VARIANTS)
        assert data["variants"]["general"]["matches"] is True


def test_coefficient_table_csv():
    rows = coefficient_table([4], [13], codegrees=(0, 1))
    text = table_to_csv(rows)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert len(parsed) == 2 * len(VARIANTS)
    row = next(r for r in parsed if r["i"] == "1" and r["variant"] == "paper")
    assert Fraction(int(row["num"]), int(row["den"])) == -26
