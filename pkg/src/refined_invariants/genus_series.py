"""Fixed-codegree coefficients of ``AR*_g`` as functions of the genus.

For codegrees 0, 1 and 2 there are closed binomial formulas in (g, n); the
generating series over g in a variable u is assembled either from those
formulas or from :func:`~refined_invariants.asymptotics.ar_star_closed`.

Three variants of the codegree-2 formula are available:

``paper``
    the formula as published, kept for comparison;
``corrected``
    the same derivation including the x^2 term of ``bar(P_4)`` and the
    sign of the cross term;
``general``
    the value of the Hilbert-polynomial expansion, evaluated at n.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .asymptotics import ar_star_closed, q_poly_interpolated, stabilization_threshold
from .exact import NPoly, Series, npoly_interpolate

__all__ = [
    "VARIANTS",
    "binom",
    "codegree_closed",
    "genus_gf",
    "ArbitrationRow",
    "arbitrate_codegree2",
    "coefficient_table",
    "table_to_csv",
]

VARIANTS = ("paper", "corrected", "general")


def binom(top, k: int) -> Fraction:
    """``top (top-1) ... (top-k+1) / k!`` with the convention 0 for ``k < 0``.

    This is the Hilbert polynomial in ``top``, so it agrees with the usual
    binomial whenever ``top >= 0``.
    """
    if k < 0:
        return Fraction(0)
    out = Fraction(1)
    for j in range(k):
        out = out * (top - j) / (j + 1)
    return out


@lru_cache(maxsize=None)
def _general_poly(g: int, i: int) -> NPoly:
    return ar_star_closed(g, i)[i]


def codegree_closed(i: int, g: int, n: int, variant: str = "paper") -> Fraction:
    """Closed value of the x^i coefficient of ``AR*_g`` at n, for ``i <= 2``."""
    if i not in (0, 1, 2):
        raise ValueError("closed formulas exist only for codegrees 0, 1, 2")
    if g < 2:
        raise ValueError("genus must be at least 2")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "general":
        return _general_poly(g, i)(n)
    if i == 0:
        return binom(n, g - 1)
    if i == 1:
        return -2 * n * binom(n - 3, g - 4)
    head = binom(n - 2, g - 3) - 6 * binom(n - 3, g - 3) + 3 * binom(n - 4, g - 3)
    if variant == "paper":
        return n * (head - 8 * binom(n - 5, g - 6) - 2 * (n - 5) * binom(n - 6, g - 7))
    return n * (head + 2 * binom(n - 5, g - 3) + 2 * (g - 2) * binom(n - 5, g - 6))


def _binomial_series(alpha: int, order: int) -> list[Fraction]:
    """Coefficients of ``(1+u)**alpha`` up to ``u**order``."""
    return [binom(alpha, k) for k in range(order + 1)]


def _poly_times(poly: dict[int, Fraction], series: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for e, c in poly.items():
        for k, v in enumerate(series):
            if e + k > order:
                break
            out[e + k] += c * v
    return out


def genus_gf(i: int, n: int, umax: int, source: str = "closed") -> Series:
    """``sum_{g=2}^{umax} <AR*_g>_i(n) u^g`` as a series in u of order ``umax``.

    ``source="closed"`` expands the rational generating functions;
    ``source="general"`` assembles the coefficients genus by genus from the
    Hilbert-polynomial expansion.
    """
    if i not in (0, 1, 2):
        raise ValueError("generating series are available for codegrees 0, 1, 2")
    if umax < 0:
        raise ValueError("umax must be non-negative")
    if source == "general":
        coeffs = [Fraction(0)] * (umax + 1)
        for g in range(2, umax + 1):
            coeffs[g] = codegree_closed(i, g, n, "general")
        return Series(coeffs, umax)
    if source != "closed":
        raise ValueError(f"unknown source {source!r}")
    if i == 0:
        out = _poly_times({1: Fraction(1)}, _binomial_series(n, umax), umax)
        if umax >= 1:
            out[1] -= 1
    elif i == 1:
        out = _poly_times({4: Fraction(-2 * n)}, _binomial_series(n - 3, umax), umax)
    else:
        bracket = {
            7: Fraction(-2 * n * n + 3 * n),
            6: Fraction(-10 * n),
            5: Fraction(-9 * n),
            4: Fraction(-8 * n),
            3: Fraction(-2 * n),
        }
        out = _poly_times(bracket, _binomial_series(n - 6, umax), umax)
    return Series(out, umax)


@dataclass(frozen=True)
class ArbitrationRow:
    """Codegree-2 comparison for one genus, as polynomials in n."""

    genus: int
    reference: NPoly
    candidates: dict[str, NPoly]

    def discrepancy(self, variant: str) -> NPoly:
        return self.candidates[variant] - self.reference

    def matches(self, variant: str) -> bool:
        return self.discrepancy(variant).is_zero()

    @property
    def validated(self) -> tuple[str, ...]:
        return tuple(v for v in self.candidates if self.matches(v))

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "interpolated": self.reference.to_text(),
            "variants": {
                v: {
                    "polynomial": p.to_text(),
                    "discrepancy": self.discrepancy(v).to_text(),
                    "matches": self.matches(v),
                }
                for v, p in self.candidates.items()
            },
        }


def arbitrate_codegree2(genera=(4, 5, 6)) -> list[ArbitrationRow]:
    """Fit each codegree-2 variant as a polynomial in n over the stabilized
    range and compare it with the interpolated ``Q_{g,2}``."""
    rows = []
    for g in genera:
        reference = q_poly_interpolated(g, 2)
        n0 = stabilization_threshold(g, 2)
        ns = range(n0, n0 + g + 2)
        candidates = {
            v: npoly_interpolate([(n, codegree_closed(2, g, n, v)) for n in ns], g - 1)
            for v in VARIANTS
        }
        rows.append(ArbitrationRow(g, reference, candidates))
    return rows


def coefficient_table(genera, ns, codegrees=(0, 1, 2), variants=VARIANTS) -> list[dict]:
    rows = []
    for g in genera:
        for n in ns:
            for i in codegrees:
                for v in variants:
                    val = codegree_closed(i, g, n, v)
                    rows.append(
                        {
                            "g": g,
                            "n": n,
                            "i": i,
                            "variant": v,
                            "num": str(val.numerator),
                            "den": str(val.denominator),
                        }
                    )
    return rows


def table_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(
        buf, fieldnames=["g", "n", "i", "variant", "num", "den"], lineterminator="\n"
    )
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
