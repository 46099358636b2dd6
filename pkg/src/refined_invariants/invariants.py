"""Refined invariants of abelian surfaces.

The basic building block is the symmetric Laurent polynomial

    P_a(q) = sum over k | a of (a/k) (q^k - 2 + q^-k),

and the invariant of a primitive class with determinant n in genus g is
``g`` times the sum of ``P_a1 ... P_a(g-1)`` over compositions of n.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

from .arith import divisors, euler_phi
from .exact import LaurentPoly

__all__ = [
    "Polarization",
    "VertexData",
    "NonIntegralExponentError",
    "p_laurent",
    "p_bar",
    "compositions",
    "composition_convolution",
    "refined_multiplicity",
    "bg_primitive",
    "bg_class",
    "bg_star",
]


class NonIntegralExponentError(ValueError):
    """A refined multiplicity came out with a fractional power of q."""

    def __init__(self, message: str, value: LaurentPoly):
        super().__init__(message)
        self.value = value


@dataclass(frozen=True)
class Polarization:
    """Class of a polarization up to equivalence.

    ``divisibility`` is the gcd of the matrix entries and ``primitive_det``
    the determinant of the primitive class ``B / divisibility``.
    """

    divisibility: int
    primitive_det: int

    def __post_init__(self):
        if self.divisibility < 1 or self.primitive_det < 1:
            raise ValueError("divisibility and primitive determinant must be >= 1")

    @property
    def det(self) -> int:
        return self.divisibility**2 * self.primitive_det

    @property
    def self_intersection(self) -> int:
        return 2 * self.det

    @classmethod
    def primitive(cls, n: int) -> "Polarization":
        return cls(1, n)

    @classmethod
    def from_det(cls, det: int, divisibility: int = 1) -> "Polarization":
        r2 = divisibility * divisibility
        if divisibility < 1 or det < 1 or det % r2:
            raise ValueError(
                f"determinant {det} is not divisibility^2 = {r2} times a positive integer"
            )
        return cls(divisibility, det // r2)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "Polarization":
        (a, b), (c, d) = matrix
        det = a * d - b * c
        if det <= 0:
            raise ValueError("a polarization needs a positive determinant")
        r = gcd(gcd(a, b), gcd(c, d))
        return cls(r, det // (r * r))


@dataclass(frozen=True)
class VertexData:
    """Genus, gcd of edge weights and Mikhalkin multiplicities of a trivalent curve."""

    genus: int
    gcd: int
    vertex_mults: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertex_mults", tuple(self.vertex_mults))
        if self.genus < 2:
            raise ValueError("genus must be at least 2")
        if self.gcd < 1:
            raise ValueError("gcd must be positive")
        if len(self.vertex_mults) != 2 * self.genus - 2:
            raise ValueError(
                f"a trivalent genus-{self.genus} curve has {2 * self.genus - 2} vertices, "
                f"got {len(self.vertex_mults)} multiplicities"
            )
        if any(m < 1 for m in self.vertex_mults):
            raise ValueError("vertex multiplicities must be positive")


@lru_cache(maxsize=None)
def p_laurent(a: int) -> LaurentPoly:
    if a < 1:
        raise ValueError(f"P_a needs a >= 1, got {a}")
    terms: dict[int, int] = {}
    for k in divisors(a):
        w = a // k
        terms[k] = terms.get(k, 0) + w
        terms[-k] = terms.get(-k, 0) + w
        terms[0] = terms.get(0, 0) - 2 * w
    return LaurentPoly(terms)


@lru_cache(maxsize=None)
def p_bar(a: int) -> tuple[int, ...]:
    """Integer coefficients of the bar transform of ``P_a``, length ``2a + 1``."""
    return tuple(int(c) for c in p_laurent(a).bar())


def compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to ``n``."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def _mul_int(a: Sequence[int], b: Sequence[int], length: int | None) -> list[int]:
    size = len(a) + len(b) - 1
    if length is not None:
        size = min(size, length)
    out = [0] * size
    for i, x in enumerate(a):
        if not x or i >= size:
            continue
        for j, y in enumerate(b):
            if i + j >= size:
                break
            out[i + j] += x * y
    return out


def composition_convolution(
    factors: int, nmax: int, xlen: int | None = None
) -> list[list[int] | None]:
    """Coefficients of ``t**m`` in ``(sum_{a>=1} bar(P_a) t**a) ** factors``.

    Entry ``m`` (for ``0 <= m <= nmax``) is the x-coefficient list of that
    polynomial, truncated to ``xlen`` entries when given, or ``None`` when no
    composition of m into ``factors`` parts exists.
    """
    base: list[list[int] | None] = [None]
    for a in range(1, nmax + 1):
        pa = list(p_bar(a))
        base.append(pa[:xlen] if xlen is not None else pa)
    layer: list[list[int] | None] = [[1]] + [None] * nmax
    for _ in range(factors):
        nxt: list[list[int] | None] = [None] * (nmax + 1)
        for m in range(1, nmax + 1):
            acc = None
            for a in range(1, m + 1):
                prev = layer[m - a]
                if prev is None:
                    continue
                prod = _mul_int(base[a], prev, xlen)
                if acc is None:
                    acc = prod
                else:
                    if len(prod) > len(acc):
                        acc.extend([0] * (len(prod) - len(acc)))
                    for j, v in enumerate(prod):
                        acc[j] += v
            nxt[m] = acc
        layer = nxt
    return layer


def refined_multiplicity(v: VertexData, strict: bool = True) -> LaurentPoly:
    """Block-Goettsche type multiplicity of a trivalent curve.

    Sum over k | gcd of ``phi(k) k^(2g-2) prod_V (q^(m_V/2k) - q^(-m_V/2k))``.
    With ``strict`` the result must only involve integer powers of q,
    otherwise :class:`NonIntegralExponentError` is raised.
    """
    total = LaurentPoly()
    for k in divisors(v.gcd):
        term = LaurentPoly.constant(euler_phi(k) * k ** (2 * v.genus - 2))
        for m in v.vertex_mults:
            h = Fraction(m, 2 * k)
            term = term * LaurentPoly({h: 1, -h: -1})
        total = total + term
    if strict and not total.has_integer_exponents():
        raise NonIntegralExponentError(
            "refined multiplicity has non-integer exponents; vertex multiplicities "
            "are inconsistent with the gcd",
            total,
        )
    return total


def _check_genus(g: int) -> None:
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")


def _bg_oracle(g: int, n: int) -> LaurentPoly:
    total = LaurentPoly()
    for comp in compositions(n, g - 1):
        prod = LaurentPoly.constant(1)
        for a in comp:
            prod = prod * p_laurent(a)
        total = total + prod
    return total * g


def _bg_convolution(g: int, n: int) -> LaurentPoly:
    coeffs = composition_convolution(g - 1, n)[n]
    if coeffs is None:
        return LaurentPoly()
    return LaurentPoly.from_bar([g * c for c in coeffs], n)


def bg_primitive(g: int, n: int, method: str = "convolution") -> LaurentPoly:
    """Refined invariant of a primitive class of determinant ``n``.

    ``method="oracle"`` sums over every composition explicitly;
    ``method="convolution"`` extracts a coefficient of a power of the
    generating series in bar coordinates. Returns 0 when ``n < g - 1``.
    """
    _check_genus(g)
    if n < 1:
        raise ValueError("n must be positive")
    if method == "oracle":
        return _bg_oracle(g, n)
    if method == "convolution":
        return _bg_convolution(g, n)
    raise ValueError(f"unknown method {method!r}")


def bg_class(g: int, B: Polarization, method: str = "convolution") -> LaurentPoly:
    """Multiple cover formula: sum over k | r of ``k^(2g-1) BG_{g, D/k^2}(q^k)``."""
    _check_genus(g)
    D = B.det
    total = LaurentPoly()
    for k in divisors(B.divisibility):
        prim = bg_primitive(g, D // (k * k), method)
        total = total + prim.substitute_power(k) * k ** (2 * g - 1)
    return total


def bg_star(g: int, B: Polarization, method: str = "convolution") -> LaurentPoly:
    """Invariant for curves in a fixed linear system: ``D / (g(g-1))`` times ``bg_class``."""
    _check_genus(g)
    return bg_class(g, B, method) * Fraction(B.det, g * (g - 1))
