import pytest

from refined_invariants.arith import divisors
from refined_invariants.exact import Series
from refined_invariants.quasimodular import d_op, eisenstein, g_m_closed, g_m_direct
from refined_invariants.verify import printed_g_examples


def divisor_sum(k, a):
    return sum(d**k for d in range(1, a + 1) if a % d == 0)


def test_e2_low_order():
    assert eisenstein(2, 4).series == Series([0, 1, 3, 4, 7], 4)
    assert [divisor_sum(1, a) for a in range(1, 5)] == [1, 3, 4, 7]


def test_e4_coefficient():
    assert eisenstein(4, 5)[2] == divisor_sum(3, 2) == 9


@pytest.mark.parametrize("two_j", [2, 4, 6, 8])
def test_eisenstein_constant_term(two_j):
    e = eisenstein(two_j, 10)
    assert e[0] == 0
    assert e.weight == two_j


@pytest.mark.parametrize("bad", [0, 3, -2])
def test_eisenstein_rejects_bad_index(bad):
    with pytest.raises(ValueError):
        eisenstein(bad, 5)


def test_d_op():
    assert d_op(Series.one(3)) == Series.zero(3)
    assert d_op(Series([0, 1, 3], 2)) == Series([0, 1, 6], 2)
    assert d_op(eisenstein(2, 4).series)[4] == 4 * divisor_sum(1, 4) == 28


def brute_g(m, order):
    """sum_a a^m (bar(P_a) - 1) from the divisor formula for bar(P_a)."""
    acc = [0] * (order + 1)
    for a in range(1, 2 * order + 1):
        for k in divisors(a):
            w = (a // k) * a**m
            for e, c in ((a - k, w), (a, -2 * w), (a + k, w)):
                if e <= order:
                    acc[e] += c
        acc[0] -= a**m
    return Series(acc, order)


@pytest.mark.parametrize("m", range(0, 6))
def test_direct_against_brute_force(m):
    assert g_m_direct(m, 25).series == brute_g(m, 25)


@pytest.mark.parametrize("m", range(0, 11))
def test_direct_equals_closed(m):
    assert g_m_direct(m, 60).series == g_m_closed(m, 60).series


@pytest.mark.parametrize("m", range(0, 6))
def test_printed_examples(m):
    want = printed_g_examples(40)[m]
    assert g_m_direct(m, 40).series == want
    assert g_m_closed(m, 40).series == want


def test_g0_vanishes_and_g1_is_twice_e2():
    assert g_m_direct(0, 30).series == Series.zero(30)
    assert g_m_direct(1, 30).series == 2 * eisenstein(2, 30).series


@pytest.mark.parametrize("m", [0, 1, 4, 7])
def test_tail_beyond_twice_the_order_vanishes(m):
    assert g_m_direct(m, 20).series == g_m_direct(m, 20, bound=60).series


@pytest.mark.parametrize("m", range(0, 8))
def test_constant_term_zero(m):
    assert g_m_closed(m, 10)[0] == 0
