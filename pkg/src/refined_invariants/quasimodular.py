"""Eisenstein series, the derivation ``D = x d/dx`` and the family ``G_m``.

Eisenstein series are normalized with zero constant term:
``E_2j(x) = sum_{a>=1} sigma_{2j-1}(a) x^a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .arith import sigma
from .exact import Series
from .invariants import p_bar

__all__ = ["QMForm", "eisenstein", "d_op", "g_m_direct", "g_m_closed"]


@dataclass(frozen=True)
class QMForm:
    series: Series
    weight: int | None = None

    @property
    def order(self) -> int:
        return self.series.order

    def __getitem__(self, i):
        return self.series[i]


def eisenstein(two_j: int, order: int) -> QMForm:
    if two_j < 2 or two_j % 2:
        raise ValueError(f"Eisenstein index must be even and >= 2, got {two_j}")
    coeffs = [0] + [sigma(two_j - 1, a) for a in range(1, order + 1)]
    return QMForm(Series(coeffs, order), two_j)


def d_op(s: Series, times: int = 1) -> Series:
    """Apply ``x d/dx`` ``times`` times."""
    return Series([c * a**times for a, c in enumerate(s.coeffs)], s.order)


def g_m_direct(m: int, order: int, bound: int | None = None) -> QMForm:
    """``sum_{a>=1} a^m (bar(P_a) - 1)`` modulo ``x^(order+1)``.

    Terms with ``a > 2*order`` vanish at this order, so ``bound`` defaults
    to ``2*order``.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if bound is None:
        bound = 2 * order
    acc = [0] * (order + 1)
    for a in range(1, bound + 1):
        w = a**m
        pa = p_bar(a)
        for j in range(1, min(len(pa), order + 1)):
            acc[j] += w * pa[j]
        # bar(P_a) has constant term 1; the -1 cancels it.
    return QMForm(Series(acc, order))


def g_m_closed(m: int, order: int) -> QMForm:
    """``2 sum_{2 <= 2j <= m+1} C(m+1, 2j) D^(m+1-2j) E_2j``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    total = Series.zero(order)
    for two_j in range(2, m + 2, 2):
        e = eisenstein(two_j, order).series
        total = total + d_op(e, m + 1 - two_j) * (2 * comb(m + 1, two_j))
    return QMForm(total)
