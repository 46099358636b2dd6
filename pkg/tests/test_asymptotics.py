import random
from fractions import Fraction
from math import comb

import pytest

from refined_invariants.asymptotics import (
    ArInvariant,
    MultiIndexTerm,
    ar_from_star,
    ar_star_closed,
    bg_bar_star_series,
    hilbert_expand,
    q_poly_interpolated,
    stabilization_check,
    stabilization_threshold,
)
from refined_invariants.exact import NPoly, Series, npoly_interpolate
from refined_invariants.invariants import Polarization, bg_star, compositions, p_bar
from refined_invariants.verify import printed_first_values


def brute_star_series(g, n, imax):
    """Sum over explicit compositions, truncated at x^imax."""
    acc = [0] * (imax + 1)
    for comp in compositions(n, g - 1):
        prod = [1] + [0] * imax
        for a in comp:
            pa = p_bar(a)
            prod = [
                sum(prod[j] * pa[k - j] for j in range(k + 1) if k - j < len(pa))
                for k in range(imax + 1)
            ]
        acc = [x + y for x, y in zip(acc, prod)]
    return Series([Fraction(n * c, g - 1) for c in acc], imax)


class TestFiniteN:
    def test_genus_two(self):
        assert bg_bar_star_series(2, 7, 2) == Series([7, 0, 0], 2)

    def test_genus_three(self):
        assert bg_bar_star_series(3, 12, 1) == Series([66, 0], 1)

    def test_genus_four(self):
        assert bg_bar_star_series(4, 13, 1) == Series([comb(13, 3), -26], 1)

    @pytest.mark.parametrize("g, n", [(3, 9), (4, 10), (5, 11), (6, 9)])
    def test_against_enumeration(self, g, n):
        assert bg_bar_star_series(g, n, 4) == brute_star_series(g, n, 4)

    @pytest.mark.parametrize("g, n", [(3, 6), (4, 8), (5, 7)])
    def test_against_full_star_invariant(self, g, n):
        full = bg_star(g, Polarization.primitive(n)).bar()
        assert bg_bar_star_series(g, n, 5) == Series(full[:6], 5)

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            bg_bar_star_series(5, 3, 1)


class TestInterpolation:
    def test_spec_sample(self):
        pts = [(n, bg_bar_star_series(4, n, 1)[1]) for n in range(25, 29)]
        assert npoly_interpolate(pts, 1) == NPoly([0, -2])

    def test_genus_two(self):
        assert q_poly_interpolated(2, 0) == NPoly.n()

    def test_genus_four(self):
        assert q_poly_interpolated(4, 1) == NPoly([0, -2])
        assert q_poly_interpolated(4, 0) == NPoly([0, Fraction(1, 3), Fraction(-1, 2), Fraction(1, 6)])

    def test_threshold(self):
        assert stabilization_threshold(4, 1) == 10

    def test_retry_from_low_start(self):
        # starting below the threshold still ends at the stable polynomial
        assert q_poly_interpolated(5, 3, n0=5) == ar_star_closed(5, 3)[3]


def _binomial_value(top, m):
    out = Fraction(1)
    for j in range(m):
        out = out * (top - j) / (j + 1)
    return out


class TestHilbert:
    def test_m2_s1(self):
        terms = {t.exponents: t.coeff for t in hilbert_expand(2, 1)}
        assert terms == {(1,): NPoly([Fraction(3, 2), -1]), (2,): NPoly([Fraction(1, 2)])}

    def test_m2_s2(self):
        terms = hilbert_expand(2, 2)
        assert terms == [MultiIndexTerm(2, (1, 1), NPoly([1]))]

    def test_m0(self):
        assert hilbert_expand(0, 1) == []

    def test_m3_s1(self):
        terms = {t.exponents: t.coeff for t in hilbert_expand(3, 1)}
        assert terms[(3,)] == NPoly([Fraction(-1, 6)])
        assert terms[(2,)] == NPoly([-1, Fraction(1, 2)])
        assert terms[(1,)] == NPoly([Fraction(-11, 6), 2, Fraction(-1, 2)])

    @pytest.mark.parametrize("m, s", [(2, 1), (3, 2), (4, 1), (4, 3), (5, 2)])
    def test_full_expansion_evaluates_to_binomial(self, m, s):
        rng = random.Random(m * 10 + s)
        terms = hilbert_expand(m, s, keep_zero=True)
        for _ in range(10):
            n = rng.randint(-5, 40)
            a = [rng.randint(0, 6) for _ in range(s)]
            val = sum(
                t.coeff(n) * _prod(x**e for x, e in zip(a, t.exponents)) for t in terms
            )
            assert val == _binomial_value(n - 1 - sum(a), m)

    def test_trimmed_terms_use_every_variable(self):
        for t in hilbert_expand(6, 3):
            assert all(e >= 1 for e in t.exponents)
            assert sum(t.exponents) <= 6


def _prod(it):
    out = 1
    for x in it:
        out *= x
    return out


class TestClosedForm:
    @pytest.mark.parametrize("g", [2, 3, 4, 5, 6])
    def test_printed_first_values(self, g):
        assert list(ar_star_closed(g, 6).by_codegree) == printed_first_values(g, 6)

    @pytest.mark.parametrize("g", range(2, 7))
    def test_matches_interpolation(self, g):
        ar = ar_star_closed(g, 5)
        for i in range(6):
            assert ar[i] == q_poly_interpolated(g, i)

    @pytest.mark.parametrize("g", range(2, 9))
    def test_degree_bounds(self, g):
        ar = ar_star_closed(g, 4)
        assert ar[0] == NPoly.binomial(g - 1)
        assert all(ar[i].degree <= g - 3 for i in range(1, 5))

    @pytest.mark.parametrize("g, imax", [(4, 3), (5, 3), (6, 2), (7, 2)])
    def test_finite_n_consistency(self, g, imax):
        ar = ar_star_closed(g, imax)
        n = 2 * (g - 1) * imax + 1
        for m in range(n, n + 3):
            assert ar.evaluate(m) == bg_bar_star_series(g, m, imax)

    @pytest.mark.parametrize("g", [4, 5, 6, 7])
    def test_zero_exponent_terms_change_nothing(self, g):
        assert ar_star_closed(g, 5, keep_zero=True) == ar_star_closed(g, 5)

    def test_json_round_trip(self):
        ar = ar_star_closed(6, 3)
        assert ArInvariant.from_json(ar.to_json()) == ar
        assert ar.to_json()["codegree"][1]["i"] == 1

    def test_plain_invariant(self):
        plain = ar_from_star(ar_star_closed(4, 2))
        # AR_4 = 4*3/n * (binomial(n,3) - 2n E_2)
        assert plain[0] == NPoly.binomial(2, shift=-1) * 4
        assert plain[1] == NPoly([-24])


class TestStabilizationCheck:
    def test_primitive_is_vacuous(self):
        assert stabilization_check(3, Polarization.primitive(9), 3).ok

    @pytest.mark.parametrize("g, r, m, imax", [(2, 2, 5, 4), (3, 3, 2, 5)])
    def test_examples(self, g, r, m, imax):
        rep = stabilization_check(g, Polarization(r, m), imax)
        assert rep.threshold_met and rep.equal
        assert rep.compared == tuple(range(imax + 1))

    def test_threshold_not_met(self):
        rep = stabilization_check(2, Polarization(2, 1), 3)
        assert not rep.threshold_met
        assert rep.equal is None
