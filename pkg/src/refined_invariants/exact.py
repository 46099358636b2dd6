"""Exact arithmetic containers: Laurent polynomials, truncated series, and
polynomials in the formal symbol ``n``.

Every coefficient is a :class:`fractions.Fraction`; nothing here ever rounds.
All containers are immutable once built.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rat = Fraction

__all__ = [
    "Rat",
    "LaurentPoly",
    "Series",
    "NPoly",
    "NotPolynomialError",
    "bar_transform",
    "npoly_interpolate",
    "format_rat",
]


class NotPolynomialError(ValueError):
    """Sampled values are not explained by a polynomial of the claimed degree."""


def _as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def _norm_exp(e):
    e = _as_rat(e)
    return e.numerator if e.denominator == 1 else e


def format_rat(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _rat_pair(c: Fraction) -> list[str]:
    return [str(c.numerator), str(c.denominator)]


def _rat_from_pair(pair: Sequence[str]) -> Fraction:
    return Fraction(int(pair[0]), int(pair[1]))


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Finite sum of terms ``c * q**e`` with rational ``c`` and rational ``e``.

    Exponents are normally integers; fractional exponents only show up in
    intermediate products of half-integer powers.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean: dict = {}
        if terms:
            for e, c in terms.items():
                c = _as_rat(c)
                if c:
                    e = _norm_exp(e)
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e, c=1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def from_bar(cls, coeffs: Sequence, degree: int) -> "LaurentPoly":
        """Inverse of :meth:`bar`: the x**j coefficient lands on q**(degree - j)."""
        return cls({degree - j: c for j, c in enumerate(coeffs) if c})

    # inspection -----------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self):
        if not self._terms:
            return None
        return next(reversed(self._terms))

    @property
    def valuation(self):
        if not self._terms:
            return None
        return next(iter(self._terms))

    def coefficient(self, e) -> Fraction:
        return self._terms.get(_norm_exp(e), Fraction(0))

    def codegree(self, i: int) -> Fraction:
        """Coefficient of ``q**(deg - i)``."""
        if not self._terms:
            raise ValueError("codegree is undefined for the zero polynomial")
        return self.coefficient(self.degree - i)

    def is_symmetric(self) -> bool:
        return all(self._terms.get(-e) == c for e, c in self._terms.items())

    def has_integer_exponents(self) -> bool:
        return all(isinstance(e, int) for e in self._terms)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _as_rat(other)
            return LaurentPoly({e: c * v for e, v in self._terms.items()})
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def substitute_power(self, k: int) -> "LaurentPoly":
        """``p(q) -> p(q**k)``."""
        if k < 1:
            raise ValueError("substitution exponent must be positive")
        return LaurentPoly({e * k: c for e, c in self._terms.items()})

    def __call__(self, q0) -> Fraction:
        q0 = _as_rat(q0)
        if q0 == 0:
            raise ValueError("cannot evaluate a Laurent polynomial at q = 0")
        total = Fraction(0)
        for e, c in self._terms.items():
            if not isinstance(e, int):
                raise ValueError("evaluation needs integer exponents")
            total += c * q0**e
        return total

    evaluate = __call__

    def bar(self) -> list[Fraction]:
        """Coefficients of ``x**deg * p(1/x)``, index j holds the codegree-j value."""
        if not self._terms:
            raise ValueError("bar transform of the zero polynomial is undefined")
        if not self.has_integer_exponents():
            raise ValueError("bar transform needs integer exponents")
        d, v = self.degree, self.valuation
        out = [Fraction(0)] * (d - v + 1)
        for e, c in self._terms.items():
            out[d - e] = c
        return out

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # rendering ------------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"

    def to_text(self, var: str = "q") -> str:
        return _render_terms(
            sorted(self._terms.items(), reverse=True), var, latex=False
        )

    def to_latex(self, var: str = "q") -> str:
        return _render_terms(
            sorted(self._terms.items(), reverse=True), var, latex=True
        )

    def to_json(self) -> dict:
        return {
            "degree": _exp_to_json(self.degree) if self._terms else None,
            "terms": [
                {
                    "exp": _exp_to_json(e),
                    "num": str(c.numerator),
                    "den": str(c.denominator),
                }
                for e, c in self._terms.items()
            ],
            "symmetric": self.is_symmetric(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        p = cls(
            {
                _exp_from_json(t["exp"]): Fraction(int(t["num"]), int(t["den"]))
                for t in data["terms"]
            }
        )
        if data.get("degree") is not None and _exp_from_json(data["degree"]) != p.degree:
            raise ValueError("degree field disagrees with terms")
        return p


def _exp_to_json(e):
    return e if isinstance(e, int) else f"{e.numerator}/{e.denominator}"


def _exp_from_json(e):
    return _norm_exp(Fraction(e)) if isinstance(e, str) else int(e)


def _render_terms(items, var: str, latex: bool) -> str:
    if not items:
        return "0"
    pieces = []
    for e, c in items:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = _render_coeff(a, latex)
        else:
            if isinstance(e, int):
                es = str(e)
            else:
                es = (
                    f"\\frac{{{e.numerator}}}{{{e.denominator}}}"
                    if latex
                    else f"({e.numerator}/{e.denominator})"
                )
            if e == 1:
                mono = var
            elif latex:
                mono = f"{var}^{{{es}}}"
            else:
                mono = f"{var}^{es}"
            if a == 1:
                body = mono
            elif latex or a.denominator == 1:
                body = _render_coeff(a, latex) + mono
            else:
                body = f"({_render_coeff(a, latex)}){mono}"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _render_coeff(a: Fraction, latex: bool) -> str:
    if a.denominator == 1:
        return str(a.numerator)
    if latex:
        return f"\\frac{{{a.numerator}}}{{{a.denominator}}}"
    return f"{a.numerator}/{a.denominator}"


def bar_transform(p: LaurentPoly) -> LaurentPoly:
    """Bar transform as a polynomial in ``x`` (stored with non-negative exponents)."""
    return LaurentPoly({j: c for j, c in enumerate(p.bar()) if c})


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------


class Series:
    """Power series in ``x`` known modulo ``x**(order + 1)``.

    Binary operations truncate to the smaller order; nothing beyond ``order``
    is ever assumed.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_as_rat(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = cs[: order + 1]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls([1], order)

    def __getitem__(self, i: int) -> Fraction:
        if i < 0 or i > self.order:
            raise IndexError(f"coefficient x^{i} is beyond the truncation order {self.order}")
        return self.coeffs[i]

    def __len__(self):
        return self.order + 1

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return Series(self.coeffs, order)

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return Series([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            c = _as_rat(other)
            return Series([c * v for v in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = Fraction(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc += a[i] * b[k - i]
            out.append(acc)
        return Series(out, n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = Series.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Series):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"Series({self.to_text()})"

    def to_text(self, var: str = "x") -> str:
        items = [(i, c) for i, c in enumerate(self.coeffs) if c]
        body = _render_terms(items, var, latex=False)
        return f"{body} + O({var}^{self.order + 1})"

    def to_latex(self, var: str = "x") -> str:
        items = [(i, c) for i, c in enumerate(self.coeffs) if c]
        return _render_terms(items, var, latex=True) + f" + O({var}^{{{self.order + 1}}})"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [_rat_pair(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Series":
        return cls([_rat_from_pair(p) for p in data["coeffs"]], int(data["order"]))


# ---------------------------------------------------------------------------
# Polynomials in n
# ---------------------------------------------------------------------------


class NPoly:
    """Polynomial in the formal symbol ``n``; ``coeffs[k]`` multiplies ``n**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "NPoly":
        return cls([c])

    @classmethod
    def n(cls) -> "NPoly":
        return cls([0, 1])

    @classmethod
    def binomial(cls, k: int, shift: int = 0) -> "NPoly":
        """``binomial(n + shift, k)`` as a polynomial in n; zero when ``k < 0``."""
        if k < 0:
            return cls()
        p = cls([1])
        for j in range(k):
            p = p * cls([shift - j, 1])
        return p * Fraction(1, _factorial(k))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, n) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def _coerce(self, other) -> "NPoly":
        return other if isinstance(other, NPoly) else NPoly.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return NPoly(self[k] + other[k] for k in range(m))

    __radd__ = __add__

    def __neg__(self):
        return NPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, NPoly):
            c = _as_rat(other)
            return NPoly(c * v for v in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return NPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return NPoly(out)

    __rmul__ = __mul__

    def divide_by_n(self) -> "NPoly":
        if self[0]:
            raise ValueError("polynomial is not divisible by n")
        return NPoly(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, NPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == NPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"NPoly({self.to_text()})"

    def to_text(self, var: str = "n") -> str:
        items = [(k, c) for k, c in enumerate(self.coeffs) if c]
        return _render_terms(list(reversed(items)), var, latex=False)

    def to_latex(self, var: str = "n") -> str:
        items = [(k, c) for k, c in enumerate(self.coeffs) if c]
        return _render_terms(list(reversed(items)), var, latex=True)

    def to_json(self) -> list:
        return [_rat_pair(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "NPoly":
        return cls(_rat_from_pair(p) for p in data)


def _factorial(k: int) -> int:
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


def npoly_interpolate(points: Sequence[tuple[int, object]], degree_bound: int) -> NPoly:
    """Polynomial of degree <= ``degree_bound`` through the first
    ``degree_bound + 1`` points, checked exactly on the rest.

    Raises :class:`NotPolynomialError` when a checking point disagrees.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    if len(points) < degree_bound + 2:
        raise ValueError("need at least degree_bound + 2 points (one is kept for checking)")
    xs = [int(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("sample abscissae must be distinct")
    ys = [_as_rat(y) for _, y in points]
    k = degree_bound + 1
    # Newton divided differences on the fitting points.
    coef = list(ys[:k])
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = NPoly.constant(coef[k - 1])
    for i in range(k - 2, -1, -1):
        poly = poly * NPoly([-xs[i], 1]) + coef[i]
    for x, y in zip(xs, ys):
        if poly(x) != y:
            raise NotPolynomialError(
                f"value at n={x} is {format_rat(y)}, but the degree-{degree_bound} "
                f"fit predicts {format_rat(poly(x))}"
            )
    return poly
