"""Verification suites: every closed formula checked against an independent
computation. Used by the ``verify`` subcommand and by the acceptance tests.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arith import divisors, euler_phi, sigma
from .asymptotics import (
    ar_star_closed,
    bg_bar_star_series,
    q_poly_interpolated,
    stabilization_check,
    stabilization_threshold,
)
from .cache import DiskCache, cache_key
from .exact import LaurentPoly, NPoly, Series, bar_transform
from .genus_series import arbitrate_codegree2, codegree_closed, genus_gf
from .invariants import Polarization, bg_primitive, p_laurent
from .quasimodular import d_op, eisenstein, g_m_closed, g_m_direct

PASS, FAIL, INFO = "pass", "fail", "info"


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    outcome: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "outcome": self.outcome, "detail": self.detail}


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.outcome != FAIL for c in self.checks)

    def sorted(self) -> "Report":
        return Report(self.suite, sorted(self.checks, key=lambda c: c.id))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.id)],
        }

    def to_text(self) -> str:
        lines = [
            f"[{c.outcome.upper():4}] {c.id} ({c.anchor}){': ' + c.detail if c.detail else ''}"
            for c in sorted(self.checks, key=lambda c: c.id)
        ]
        lines.append(f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _check(cid: str, anchor: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    ok, detail = fn()
    return Check(cid, anchor, PASS if ok else FAIL, detail)


# ---------------------------------------------------------------------------
# individual identities
# ---------------------------------------------------------------------------

PRINTED_BARS = {
    1: [1, -2, 1],
    2: [1, 2, -6, 2, 1],
    3: [1, 0, 3, -8, 3, 0, 1],
}


def building_blocks() -> tuple[bool, str]:
    bad = [a for a, want in PRINTED_BARS.items() if p_laurent(a).bar() != want]
    return not bad, f"mismatch for a in {bad}" if bad else "bar(P_1), bar(P_2), bar(P_3)"


def printed_g_examples(order: int) -> dict[int, Series]:
    """The explicitly printed Eisenstein expressions for ``G_0 .. G_5``."""
    E2 = eisenstein(2, order).series
    E4 = eisenstein(4, order).series
    E6 = eisenstein(6, order).series
    return {
        0: Series.zero(order),
        1: 2 * E2,
        2: 6 * d_op(E2),
        3: 12 * d_op(E2, 2) + 2 * E4,
        4: 20 * d_op(E2, 3) + 10 * d_op(E4),
        5: 30 * d_op(E2, 4) + 30 * d_op(E4, 2) + 2 * E6,
    }


def gm_printed(order: int = 60) -> tuple[bool, str]:
    bad = [
        m
        for m, s in printed_g_examples(order).items()
        if g_m_direct(m, order).series != s or g_m_closed(m, order).series != s
    ]
    return not bad, f"G_m mismatch for m in {bad}" if bad else f"G_0..G_5 at order {order}"


def gm_direct_vs_closed(max_m: int = 10, order: int = 60) -> tuple[bool, str]:
    bad = [m for m in range(max_m + 1) if g_m_direct(m, order).series != g_m_closed(m, order).series]
    return not bad, f"mismatch for m in {bad}" if bad else f"m <= {max_m}, order {order}"


def _ar_from_series(g: int, imax: int, parts: dict[int, Series]) -> list[NPoly]:
    """Build codegree polynomials from ``{power of n: series in x}``; the
    constant codegree gets ``binomial(n, g-1)``."""
    out = []
    for i in range(imax + 1):
        deg = max(parts) if parts else 0
        q = NPoly([parts[k][i] if k in parts else 0 for k in range(deg + 1)])
        if i == 0:
            q = NPoly.binomial(g - 1)
        out.append(q)
    return out


def printed_first_values(g: int, imax: int) -> list[NPoly]:
    """Expected ``Q_{g,i}`` from the printed expressions for g = 2..6."""
    G = {m: g_m_closed(m, imax).series for m in range(1, 4)}
    E2 = eisenstein(2, imax).series
    if g in (2, 3):
        parts = {}
    elif g == 4:
        parts = {1: -2 * E2}
    elif g == 5:
        parts = {1: Fraction(3, 2) * G[1] + Fraction(1, 2) * G[2], 2: -1 * G[1]}
    elif g == 6:
        return printed_g6_unsimplified(imax)
    else:
        raise ValueError("printed values exist for g = 2..6 only")
    return _ar_from_series(g, imax, parts)


def printed_g6_unsimplified(imax: int) -> list[NPoly]:
    """``n/5 [5(-G3/6 + (3n-6)/6 G2 - (3n^2-12n+11)/6 G1) + 10 G1^2]`` plus
    ``binomial(n, 5)``, expanded in n without any simplification by hand."""
    G = {m: g_m_closed(m, imax).series for m in range(1, 4)}
    out = []
    for i in range(imax + 1):
        g1, g2, g3, g11 = G[1][i], G[2][i], G[3][i], (G[1] * G[1])[i]
        bracket = (
            NPoly([-g3, 0]) * Fraction(1, 6)
            + NPoly([-6 * g2, 3 * g2]) * Fraction(1, 6)
            - NPoly([11 * g1, -12 * g1, 3 * g1]) * Fraction(1, 6)
        ) * 5 + NPoly([10 * g11])
        q = NPoly([0, Fraction(1, 5)]) * bracket
        out.append(NPoly.binomial(5) if i == 0 else q)
    return out


def printed_g6_simplified(imax: int) -> list[NPoly]:
    """The fully simplified printed ``AR*_6``:
    ``(2G1^2 - G2 - G3/6 - 11/6 G1) n + (G2/2 - 2G1) n^2 - G1/2 n^3``."""
    G = {m: g_m_closed(m, imax).series for m in range(1, 4)}
    parts = {
        1: 2 * G[1] * G[1] - G[2] - Fraction(1, 6) * G[3] - Fraction(11, 6) * G[1],
        2: Fraction(1, 2) * G[2] - 2 * G[1],
        3: Fraction(-1, 2) * G[1],
    }
    return _ar_from_series(6, imax, parts)


def g6_simplified_discrepancy(imax: int) -> tuple[bool, str]:
    got = ar_star_closed(6, imax)
    want = printed_g6_simplified(imax)
    bad = {i: (want[i] - got[i]).to_text() for i in range(imax + 1) if got[i] != want[i]}
    if not bad:
        return True, "simplified AR*_6 matches"
    return False, "printed-minus-computed by codegree: " + ", ".join(f"i={i}: {d}" for i, d in bad.items())


def first_values(g: int, imax: int) -> tuple[bool, str]:
    got = list(ar_star_closed(g, imax).by_codegree)
    want = printed_first_values(g, imax)
    bad = [i for i in range(imax + 1) if got[i] != want[i]]
    return not bad, f"differs at codegrees {bad}" if bad else f"imax={imax}"


def bg_oracle_equivalence(max_genus: int, max_n: int) -> tuple[bool, str]:
    bad = []
    count = 0
    for g in range(2, max_genus + 1):
        for n in range(g - 1, max_n + 1):
            count += 1
            if bg_primitive(g, n, "oracle") != bg_primitive(g, n, "convolution"):
                bad.append((g, n))
    return not bad, f"mismatch at {bad}" if bad else f"{count} (g, n) pairs"


def bg_structure(g: int, n: int) -> list[str]:
    """Problems with ``BG_{g,n}``; empty when all structural invariants hold."""
    p = bg_primitive(g, n)
    problems = []
    if not p.is_symmetric():
        problems.append("not symmetric")
    if not p.has_integer_coefficients():
        problems.append("non-integer coefficient")
    if p.degree != n:
        problems.append(f"degree {p.degree} != {n}")
    # divide the bar transform by (x - 1) repeatedly
    coeffs = p.bar()
    for _ in range(2 * (g - 1)):
        coeffs, rem = _divide_by_x_minus_1(coeffs)
        if rem:
            problems.append("bar transform not divisible by (x-1)^(2(g-1))")
            break
    return problems


def _divide_by_x_minus_1(coeffs: list) -> tuple[list, Fraction]:
    # synthetic division, coefficients in increasing powers of x
    high = list(reversed(coeffs))
    out = [high[0]]
    for c in high[1:]:
        out.append(c + out[-1])
    rem = out.pop()
    return list(reversed(out)), rem


def bg_structure_range(max_genus: int, max_n: int) -> tuple[bool, str]:
    bad = {}
    for g in range(2, max_genus + 1):
        for n in range(g - 1, max_n + 1):
            problems = bg_structure(g, n)
            if problems:
                bad[(g, n)] = problems
    return not bad, str(bad) if bad else "symmetric, integral, degree n, (x-1)^(2g-2) | bar"


def closed_vs_interpolated(
    max_genus: int, max_trunc: int, cache: DiskCache | None = None
) -> tuple[bool, str]:
    cache = cache or DiskCache()
    bad = []
    for g in range(2, max_genus + 1):
        closed = ar_star_closed(g, max_trunc)
        for i in range(max_trunc + 1):
            interp = cached_interpolation(g, i, cache)
            if closed[i] != interp:
                bad.append((g, i))
    return not bad, f"mismatch at {bad}" if bad else f"g <= {max_genus}, i <= {max_trunc}"


def cached_interpolation(g: int, i: int, cache: DiskCache) -> NPoly:
    key = cache_key("qpoly", g, i, "interp", n=stabilization_threshold(g, i))
    return cache.get_or_compute(
        key, lambda: q_poly_interpolated(g, i), NPoly.to_json, NPoly.from_json
    )


def degree_bounds(g: int, imax: int, cache: DiskCache | None = None) -> tuple[bool, str]:
    cache = cache or DiskCache()
    closed = ar_star_closed(g, imax)
    problems = []
    for i in range(imax + 1):
        for label, q in (("closed", closed[i]), ("interp", cached_interpolation(g, i, cache))):
            if i == 0 and q != NPoly.binomial(g - 1):
                problems.append(f"{label} Q_0 != binomial(n, g-1)")
            if i >= 1 and q.degree > g - 3:
                problems.append(f"{label} Q_{i} has degree {q.degree}")
    return not problems, "; ".join(problems) or f"imax={imax}"


def finite_n_consistency(g: int, imax: int) -> tuple[bool, str]:
    ar = ar_star_closed(g, imax)
    n0 = 2 * (g - 1) * imax + 1
    bad = [n for n in range(max(n0, g - 1), n0 + 4) if ar.evaluate(n) != bg_bar_star_series(g, n, imax)]
    return not bad, f"disagrees at n in {bad}" if bad else f"n = {n0}..{n0 + 3}"


MULTIPLE_COVER_CASES = ((2, 2, 5), (3, 2, 4), (3, 3, 2))


def multiple_cover(g: int, r: int, m: int) -> tuple[bool, str]:
    B = Polarization(r, m)
    imax = (B.det - 1) // 2
    rep = stabilization_check(g, B, imax)
    if rep.ok:
        return True, f"D={B.det}, codegrees 0..{imax}"
    return False, f"first disagreement at codegree {rep.first_disagreement}"


def codegree_formula(i: int, max_genus: int = 10, span: int = 12) -> tuple[bool, str]:
    bad = []
    for g in range(2, max_genus + 1):
        n0 = stabilization_threshold(g, i) + 1
        for n in range(n0, n0 + span):
            if codegree_closed(i, g, n, "paper") != codegree_closed(i, g, n, "general"):
                bad.append((g, n))
    return not bad, f"mismatch at {bad[:5]}" if bad else f"g <= {max_genus}"


def genus_series(i: int, ns=(20, 30), umax: int = 12) -> tuple[bool, str]:
    bad = [n for n in ns if genus_gf(i, n, umax, "closed") != genus_gf(i, n, umax, "general")]
    return not bad, f"mismatch at n in {bad}" if bad else f"n in {tuple(ns)}, u^{umax}"


def bar_multiplicative_random(seed: int, trials: int = 25) -> tuple[bool, str]:
    rng = random.Random(seed)
    for _ in range(trials):
        a, b = _random_laurent(rng), _random_laurent(rng)
        if bar_transform(a * b) != bar_transform(a) * bar_transform(b):
            return False, f"bar(ab) != bar(a)bar(b) for a={a.to_text()}, b={b.to_text()}"
    return True, f"{trials} random pairs, seed {seed}"


def _random_laurent(rng: random.Random) -> LaurentPoly:
    while True:
        lo = rng.randint(-4, 2)
        p = LaurentPoly({e: rng.randint(-5, 5) for e in range(lo, lo + rng.randint(0, 5))})
        if not p.is_zero():
            return p


def arith_identities(limit: int = 2000) -> tuple[bool, str]:
    for a in range(1, limit + 1):
        if sum(euler_phi(d) for d in divisors(a)) != a:
            return False, f"sum of phi over divisors of {a}"
    if sigma(1, 4) != 7 or sigma(3, 2) != 9 or euler_phi(12) != 4:
        return False, "spot values"
    return True, f"a <= {limit}"


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def paper_suite(max_genus: int = 6, max_trunc: int = 6) -> Report:
    rep = Report("paper")
    rep.checks.append(_check("paper.building-blocks", "bar transforms of P_1..P_3", building_blocks))
    rep.checks.append(_check("paper.gm-examples", "Eisenstein expressions of G_0..G_5", gm_printed))
    for g in range(2, min(max_genus, 6) + 1):
        rep.checks.append(
            _check(
                f"paper.first-values.g{g}",
                f"printed AR*_{g}",
                lambda g=g: first_values(g, max_trunc),
            )
        )
    for i in (0, 1):
        rep.checks.append(
            _check(f"paper.codegree-closed.i{i}", f"closed codegree-{i} formula", lambda i=i: codegree_formula(i))
        )
        rep.checks.append(
            _check(f"paper.genus-gf.i{i}", f"generating series in u, codegree {i}", lambda i=i: genus_series(i))
        )
    if max_genus >= 6:
        ok, detail = g6_simplified_discrepancy(max_trunc)
        rep.checks.append(Check("paper.first-values.g6-simplified", "printed AR*_6, simplified line", INFO, detail))
    rows = arbitrate_codegree2(tuple(g for g in (4, 5, 6) if g <= max(max_genus, 4)))
    detail = "; ".join(
        f"g={r.genus}: validated={','.join(r.validated) or 'none'}, "
        f"printed-minus-interpolated={r.discrepancy('paper').to_text()}"
        for r in rows
    )
    rep.checks.append(Check("paper.codegree2-arbitration", "closed codegree-2 formula", INFO, detail))
    return rep


def oracle_suite(
    max_genus: int = 5,
    max_trunc: int = 6,
    max_n: int = 14,
    seed: int = 0,
    cache: DiskCache | None = None,
) -> Report:
    cache = cache or DiskCache()
    rep = Report("oracle")
    bg_genus = min(max_genus, 5)
    rep.checks.append(
        _check(
            "oracle.bg-convolution-vs-enumeration",
            "composition enumeration",
            lambda: bg_oracle_equivalence(bg_genus, max_n),
        )
    )
    rep.checks.append(
        _check("oracle.bg-structure", "symmetry, integrality, degree", lambda: bg_structure_range(bg_genus, max_n))
    )
    rep.checks.append(_check("oracle.gm-direct-vs-closed", "G_m Eisenstein formula", gm_direct_vs_closed))
    rep.checks.append(
        _check(
            "oracle.closed-vs-interpolated",
            "stabilized codegree polynomials",
            lambda: closed_vs_interpolated(max_genus, max_trunc, cache),
        )
    )
    for g in range(2, max_genus + 1):
        rep.checks.append(
            _check(f"oracle.degree-bounds.g{g}", "degree bound in n", lambda g=g: degree_bounds(g, max_trunc, cache))
        )
        rep.checks.append(
            _check(
                f"oracle.finite-n.g{g}",
                "closed form at finite n",
                lambda g=g: finite_n_consistency(g, min(max_trunc, 4)),
            )
        )
    for g, r, m in MULTIPLE_COVER_CASES:
        rep.checks.append(
            _check(
                f"oracle.multiple-cover.g{g}-r{r}-m{m}",
                "multiple cover stabilization",
                lambda g=g, r=r, m=m: multiple_cover(g, r, m),
            )
        )
    rep.checks.append(
        _check("oracle.bar-multiplicative", "bar transform is multiplicative", lambda: bar_multiplicative_random(seed))
    )
    rep.checks.append(_check("oracle.arith", "divisor identities", arith_identities))
    return rep


def run_suite(
    suite: str,
    max_genus: int = 6,
    max_trunc: int = 6,
    max_n: int = 14,
    seed: int = 0,
    cache: DiskCache | None = None,
) -> Report:
    if suite == "paper":
        return paper_suite(max_genus, max_trunc).sorted()
    if suite == "oracle":
        return oracle_suite(max_genus, max_trunc, max_n, seed, cache).sorted()
    if suite == "all":
        a = paper_suite(max_genus, max_trunc)
        b = oracle_suite(max_genus, max_trunc, max_n, seed, cache)
        return Report("all", a.checks + b.checks).sorted()
    raise ValueError(f"unknown suite {suite!r}")
