from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from refined_invariants.arith import divisors, euler_phi, sigma


def trial_divisors(a):
    return [d for d in range(1, a + 1) if a % d == 0]


def brute_phi(k):
    return sum(1 for j in range(1, k + 1) if gcd(j, k) == 1)


@pytest.mark.parametrize("a, want", [(1, [1]), (6, [1, 2, 3, 6]), (12, trial_divisors(12))])
def test_divisors_examples(a, want):
    assert list(divisors(a)) == want


@pytest.mark.parametrize("a", range(1, 300))
def test_divisors_against_trial_division(a):
    prof = divisors(a)
    assert list(prof) == trial_divisors(a)
    assert prof.divisors[0] == 1 and prof.divisors[-1] == a


def test_sigma_examples():
    assert sigma(1, 1) == 1
    assert sigma(1, 4) == sum(trial_divisors(4)) == 7
    assert sigma(3, 2) == sum(d**3 for d in trial_divisors(2)) == 9


def test_phi_examples():
    assert euler_phi(1) == 1
    assert euler_phi(2) == 1
    assert euler_phi(12) == brute_phi(12) == 4


@pytest.mark.parametrize("k", range(1, 200))
def test_phi_brute_force(k):
    assert euler_phi(k) == brute_phi(k)


def test_phi_divisor_sum_identity():
    for a in range(1, 10_001):
        assert sum(euler_phi(d) for d in divisors(a)) == a


@given(st.integers(1, 1000), st.integers(1, 1000), st.integers(0, 5))
def test_sigma_multiplicative(a, b, k):
    if gcd(a, b) == 1:
        assert sigma(k, a * b) == sigma(k, a) * sigma(k, b)


@pytest.mark.parametrize("bad", [0, -3])
def test_rejects_non_positive(bad):
    with pytest.raises(ValueError):
        divisors(bad)
    with pytest.raises(ValueError):
        sigma(1, bad)
    with pytest.raises(ValueError):
        euler_phi(bad)
