"""Asymptotic refined invariants ``AR*_g(n, x) = sum_i Q_{g,i}(n) x^i``.

Two independent routes produce ``Q_{g,i}``:

* :func:`q_poly_interpolated` samples the codegree-i coefficient of the
  invariant at large n and fits a polynomial (checked on spare samples);
* :func:`ar_star_closed` expands the composition sum with Hilbert
  polynomials and the quasi-modular forms ``G_m``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

from .exact import NPoly, NotPolynomialError, Series, npoly_interpolate
from .invariants import Polarization, bg_class, bg_primitive, composition_convolution
from .quasimodular import g_m_closed, g_m_direct

__all__ = [
    "ArInvariant",
    "MultiIndexTerm",
    "StabilizationError",
    "StabilizationReport",
    "bg_bar_star_series",
    "stabilization_threshold",
    "q_poly_interpolated",
    "hilbert_expand",
    "ar_star_closed",
    "ar_from_star",
    "stabilization_check",
]

log = logging.getLogger(__name__)


class StabilizationError(RuntimeError):
    """Interpolation kept failing verification after every retry."""


@dataclass(frozen=True)
class ArInvariant:
    genus: int
    imax: int
    by_codegree: tuple[NPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "by_codegree", tuple(self.by_codegree))
        if len(self.by_codegree) != self.imax + 1:
            raise ValueError("need one polynomial per codegree 0..imax")

    def __getitem__(self, i: int) -> NPoly:
        return self.by_codegree[i]

    def evaluate(self, n) -> Series:
        """Series in x obtained by substituting a value for n."""
        return Series([q(n) for q in self.by_codegree], self.imax)

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "imax": self.imax,
            "codegree": [
                {"i": i, "npoly": q.to_json()} for i, q in enumerate(self.by_codegree)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ArInvariant":
        rows = sorted(data["codegree"], key=lambda r: r["i"])
        if [r["i"] for r in rows] != list(range(len(rows))):
            raise ValueError("codegree indices must be 0..imax without gaps")
        return cls(
            int(data["genus"]),
            int(data["imax"]),
            tuple(NPoly.from_json(r["npoly"]) for r in rows),
        )


@dataclass(frozen=True)
class MultiIndexTerm:
    """Coefficient (a polynomial in n) of ``a_1^m_1 ... a_s^m_s``."""

    s: int
    exponents: tuple[int, ...]
    coeff: NPoly


# ---------------------------------------------------------------------------
# finite n
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _star_table(g: int, nmax: int, imax: int) -> tuple:
    raw = composition_convolution(g - 1, nmax, imax + 1)
    out = []
    for n, coeffs in enumerate(raw):
        if coeffs is None or n == 0:
            out.append(None)
        else:
            out.append(Series([Fraction(n * c, g - 1) for c in coeffs], imax))
    return tuple(out)


def bg_bar_star_series(g: int, n: int, imax: int) -> Series:
    """Bar transform of ``BG*_{g,n}`` modulo ``x^(imax+1)``."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    if n < g - 1:
        raise ValueError(f"need n >= g - 1 = {g - 1}, got {n}")
    if imax < 0:
        raise ValueError("imax must be non-negative")
    return _star_table(g, n, imax)[n]


def stabilization_threshold(g: int, i: int) -> int:
    """First sampled n: past ``2(g-1)i`` no composition has every part <= 2i."""
    return 2 * (g - 1) * i + g


def q_poly_interpolated(
    g: int, i: int, n0: int | None = None, retries: int = 3
) -> NPoly:
    """Fit ``Q_{g,i}`` from the codegree-i coefficients at ``n0 .. n0 + g + 1``.

    The fit has degree at most ``g - 1`` (the constant codegree is
    ``binomial(n, g-1)``), and the last two samples are used only for
    checking. On a failed check the starting point doubles.
    """
    if g < 2 or i < 0:
        raise ValueError("need g >= 2 and i >= 0")
    if n0 is None:
        n0 = stabilization_threshold(g, i)
    n0 = max(n0, g - 1)
    last_error: Exception | None = None
    for _ in range(retries + 1):
        ns = range(n0, n0 + g + 2)
        table = _star_table(g, ns[-1], i)
        points = [(n, table[n][i]) for n in ns]
        try:
            return npoly_interpolate(points, g - 1)
        except NotPolynomialError as exc:
            log.info("g=%d i=%d: samples from n0=%d not yet stable (%s)", g, i, n0, exc)
            last_error = exc
            n0 *= 2
    raise StabilizationError(
        f"Q_{{{g},{i}}} did not stabilize after {retries} retries"
    ) from last_error


# ---------------------------------------------------------------------------
# closed form
# ---------------------------------------------------------------------------

# Multivariate polynomials in (n, a_1, ..., a_s) as {exponent tuple: Fraction}.


def _mv_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


@lru_cache(maxsize=None)
def _hilbert_shifted(m: int, s: int) -> tuple:
    """``binomial(n - 1 - a_1 - ... - a_s, m)`` fully expanded."""
    width = s + 1
    zero = (0,) * width
    poly: dict = {zero: Fraction(1)}
    for j in range(m):
        factor = {zero: Fraction(-1 - j)}
        factor[(1,) + (0,) * s] = Fraction(1)
        for v in range(s):
            e = [0] * width
            e[v + 1] = 1
            factor[tuple(e)] = Fraction(-1)
        poly = _mv_mul(poly, factor)
    scale = Fraction(1, _fact(m))
    return tuple(sorted((e, c * scale) for e, c in poly.items()))


def _fact(m: int) -> int:
    out = 1
    for k in range(2, m + 1):
        out *= k
    return out


def hilbert_expand(m: int, s: int, keep_zero: bool = False) -> list[MultiIndexTerm]:
    """Expand ``H_m(n - 1 - a_1 - ... - a_s)`` over monomials in the a's.

    Only monomials where every ``a_j`` appears are kept, since the others
    pair with ``G_0 = 0``; pass ``keep_zero=True`` to keep them all.
    """
    if m < 0 or s < 0:
        raise ValueError("m and s must be non-negative")
    grouped: dict[tuple[int, ...], dict[int, Fraction]] = {}
    for e, c in _hilbert_shifted(m, s):
        a_exps = e[1:]
        if not keep_zero and any(x == 0 for x in a_exps):
            continue
        grouped.setdefault(a_exps, {})[e[0]] = c
    terms = []
    for a_exps in sorted(grouped):
        by_n = grouped[a_exps]
        coeff = NPoly([by_n.get(k, 0) for k in range(max(by_n) + 1)])
        if not coeff.is_zero():
            terms.append(MultiIndexTerm(s, a_exps, coeff))
    return terms


def ar_star_closed(g: int, imax: int, keep_zero: bool = False) -> ArInvariant:
    """``AR*_g`` modulo ``x^(imax+1)`` from the Hilbert-polynomial expansion.

    ``binomial(n, g-1) + n/(g-1) sum_s C(g-1, s) sum coeff(n) prod_j G_{m_j}(x)``
    with ``1 <= s <= (g-2)/2``. ``keep_zero`` runs the untrimmed sum
    (``s`` up to ``g-2`` and monomials with zero exponents, whose ``G_0``
    factor is computed directly) as a cross-check of the trimming.
    """
    if g < 2:
        raise ValueError("genus must be at least 2")
    if imax < 0:
        raise ValueError("imax must be non-negative")
    gm: dict[int, Series] = {}

    def G(m: int) -> Series:
        if m not in gm:
            gm[m] = (g_m_direct(m, imax) if m == 0 else g_m_closed(m, imax)).series
        return gm[m]

    inner = [NPoly() for _ in range(imax + 1)]
    # s = 0: the number of compositions of n - 1 into g - 2 non-negative steps.
    inner[0] = NPoly.binomial(g - 2, shift=-1)
    smax = g - 2 if keep_zero else (g - 2) // 2
    for s in range(1, smax + 1):
        weight = comb(g - 1, s)
        for term in hilbert_expand(g - 2 - s, s, keep_zero=keep_zero):
            prod_series = Series.one(imax)
            for m in term.exponents:
                prod_series = prod_series * G(m)
            for i, c in enumerate(prod_series.coeffs):
                if c:
                    inner[i] = inner[i] + term.coeff * (c * weight)
    scale = NPoly([0, Fraction(1, g - 1)])
    return ArInvariant(g, imax, tuple(scale * q for q in inner))


def ar_from_star(ar: ArInvariant) -> ArInvariant:
    """Invariant without the fixed linear system: multiply by ``g(g-1)/n``."""
    g = ar.genus
    return ArInvariant(
        g, ar.imax, tuple((q * (g * (g - 1))).divide_by_n() for q in ar.by_codegree)
    )


# ---------------------------------------------------------------------------
# multiple covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StabilizationReport:
    genus: int
    polarization: Polarization
    imax: int
    threshold_met: bool
    equal: bool | None
    first_disagreement: int | None
    compared: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.threshold_met and bool(self.equal)


def stabilization_check(
    g: int, B: Polarization, imax: int, method: str = "convolution"
) -> StabilizationReport:
    """Compare codegrees ``0..imax`` of a class and of the primitive class of equal determinant."""
    D = B.det
    if not 2 * imax < D:
        return StabilizationReport(g, B, imax, False, None, None, ())
    full = bg_class(g, B, method)
    prim = bg_primitive(g, D, method)
    first = None
    for i in range(imax + 1):
        if full.codegree(i) != prim.codegree(i):
            first = i
            break
    return StabilizationReport(
        g, B, imax, True, first is None, first, tuple(range(imax + 1))
    )
