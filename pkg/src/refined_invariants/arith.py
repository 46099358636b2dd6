"""Divisors, divisor power sums and Euler's totient."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

__all__ = ["DivisorProfile", "divisors", "sigma", "euler_phi"]


@dataclass(frozen=True)
class DivisorProfile:
    a: int
    divisors: tuple[int, ...]

    def __iter__(self):
        return iter(self.divisors)

    def __len__(self):
        return len(self.divisors)


def _check_positive(a: int, name: str = "a") -> None:
    if not isinstance(a, int) or isinstance(a, bool):
        raise TypeError(f"{name} must be an int")
    if a <= 0:
        raise ValueError(f"{name} must be positive, got {a}")


@lru_cache(maxsize=None)
def _divisor_tuple(a: int) -> tuple[int, ...]:
    small, large = [], []
    for d in range(1, isqrt(a) + 1):
        if a % d == 0:
            small.append(d)
            if d * d != a:
                large.append(a // d)
    return tuple(small + large[::-1])


def divisors(a: int) -> DivisorProfile:
    """All positive divisors of ``a`` in increasing order."""
    _check_positive(a)
    return DivisorProfile(a, _divisor_tuple(a))


def sigma(k: int, a: int) -> int:
    """Sum of the k-th powers of the divisors of ``a``."""
    _check_positive(a)
    if k < 0:
        raise ValueError("k must be non-negative")
    return sum(d**k for d in _divisor_tuple(a))


@lru_cache(maxsize=None)
def _phi(k: int) -> int:
    result, m, p = k, k, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def euler_phi(k: int) -> int:
    _check_positive(k, "k")
    return _phi(k)
