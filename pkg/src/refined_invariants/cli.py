"""Command line entry point: ``refined-invariants <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from .asymptotics import (
    ArInvariant,
    StabilizationError,
    ar_from_star,
    ar_star_closed,
)
from .cache import DiskCache, cache_key
from .exact import LaurentPoly, Series
from .genus_series import genus_gf
from .invariants import Polarization, bg_class, bg_primitive, bg_star
from .quasimodular import g_m_closed, g_m_direct
from .verify import cached_interpolation, run_suite

FORMATS = ("text", "json", "latex", "csv")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _series_csv(s: Series, var: str) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["power", "num", "den"])
    for k, c in enumerate(s.coeffs):
        w.writerow([k, c.numerator, c.denominator])
    return buf.getvalue().rstrip("\n")


def render_laurent(p: LaurentPoly, fmt: str) -> str:
    if fmt == "json":
        return _dump(p.to_json())
    if fmt == "latex":
        return p.to_latex()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exp", "num", "den"])
        for e, c in p.items():
            w.writerow([e, c.numerator, c.denominator])
        return buf.getvalue().rstrip("\n")
    return p.to_text()


def render_series(s: Series, fmt: str, var: str = "x") -> str:
    if fmt == "json":
        return _dump(s.to_json())
    if fmt == "latex":
        return s.to_latex(var)
    if fmt == "csv":
        return _series_csv(s, var)
    return s.to_text(var)


def render_ar(ar: ArInvariant, fmt: str, name: str = "Q") -> str:
    if fmt == "json":
        return _dump(ar.to_json())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["genus", "i", "power", "num", "den"])
        for i, q in enumerate(ar.by_codegree):
            for k, c in enumerate(q.coeffs):
                w.writerow([ar.genus, i, k, c.numerator, c.denominator])
        return buf.getvalue().rstrip("\n")
    lines = []
    for i, q in enumerate(ar.by_codegree):
        if fmt == "latex":
            lines.append(f"{name}_{{{ar.genus},{i}}}(n) = {q.to_latex()}")
        else:
            lines.append(f"{name}_{{{ar.genus},{i}}}(n) = {q.to_text()}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_bg(args, parser) -> int:
    if args.n is not None and (args.det is not None or args.divisibility is not None):
        parser.error("--n and --det/--divisibility are mutually exclusive")
    if args.n is None and args.det is None:
        parser.error("give either --n or --det [--divisibility]")
    if args.genus < 2:
        parser.error("--genus must be at least 2")
    if args.n is not None:
        if args.n < 1:
            parser.error("--n must be positive")
        B = Polarization.primitive(args.n)
    else:
        try:
            B = Polarization.from_det(args.det, args.divisibility or 1)
        except ValueError as exc:
            parser.error(str(exc))
    obj = "bgstar" if args.star else "bg"
    key = cache_key(obj, args.genus, "all", args.method, n=B.det, r=B.divisibility)
    cache = DiskCache.from_env(args.cache_dir)

    def compute():
        if args.star:
            return bg_star(args.genus, B, args.method)
        if B.divisibility == 1:
            return bg_primitive(args.genus, B.det, args.method)
        return bg_class(args.genus, B, args.method)

    p = cache.get_or_compute(key, compute, LaurentPoly.to_json, LaurentPoly.from_json)
    print(render_laurent(p, args.format))
    return 0


def cmd_ar(args, parser) -> int:
    if args.genus < 2:
        parser.error("--genus must be at least 2")
    if args.xmax < 0:
        parser.error("--xmax must be non-negative")
    cache = DiskCache.from_env(args.cache_dir)
    key = cache_key("ar", args.genus, args.xmax, "closed")
    ar = cache.get_or_compute(
        key,
        lambda: ar_star_closed(args.genus, args.xmax),
        ArInvariant.to_json,
        ArInvariant.from_json,
    )
    shown = ar_from_star(ar) if args.plain else ar
    print(render_ar(shown, args.format, "R" if args.plain else "Q"))
    if not args.check:
        return 0
    try:
        interp = [cached_interpolation(args.genus, i, cache) for i in range(args.xmax + 1)]
    except StabilizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    bad = [i for i, q in enumerate(interp) if q != ar[i]]
    msg = (
        "check: closed form agrees with interpolation for all codegrees"
        if not bad
        else f"check: closed form DISAGREES with interpolation at codegrees {bad}"
    )
    print(msg, file=sys.stderr if args.format in ("json", "csv") else sys.stdout)
    return 1 if bad else 0


def cmd_gm(args, parser) -> int:
    if args.m < 0 or args.order < 0:
        parser.error("--m and --order must be non-negative")
    if args.method == "direct":
        print(render_series(g_m_direct(args.m, args.order).series, args.format))
        return 0
    if args.method == "closed":
        print(render_series(g_m_closed(args.m, args.order).series, args.format))
        return 0
    d = g_m_direct(args.m, args.order).series
    c = g_m_closed(args.m, args.order).series
    if args.format == "json":
        print(_dump({"direct": d.to_json(), "closed": c.to_json(), "equal": d == c}))
    else:
        print(render_series(d, args.format))
        print(f"direct == closed: {d == c}")
    return 0 if d == c else 1


def cmd_series_in_genus(args, parser) -> int:
    if args.codegree not in (0, 1, 2):
        parser.error("--codegree must be 0, 1 or 2")
    if args.umax < 0:
        parser.error("--umax must be non-negative")
    s = genus_gf(args.codegree, args.n, args.umax, args.source)
    print(render_series(s, args.format, var="u"))
    return 0


def cmd_verify(args, parser) -> int:
    cache = DiskCache.from_env(args.cache_dir)
    report = run_suite(
        args.suite,
        max_genus=args.max_genus,
        max_trunc=args.max_trunc,
        max_n=args.max_n,
        seed=args.seed,
        cache=cache,
    )
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "anchor", "outcome", "detail"])
        for c in report.sorted().checks:
            w.writerow([c.id, c.anchor, c.outcome, c.detail])
        print(buf.getvalue().rstrip("\n"))
    else:
        print(report.to_text())
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--cache-dir", default=None, help="defaults to $REFINED_CACHE_DIR")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="refined-invariants",
        description="Refined invariants of abelian surfaces and their asymptotics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bg", parents=[common], help="refined invariant BG_{g,B}(q)")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--n", type=int, help="determinant of a primitive class")
    p.add_argument("--det", type=int, help="determinant D of the class")
    p.add_argument("--divisibility", type=int, help="gcd of the class entries (default 1)")
    p.add_argument("--method", choices=("convolution", "oracle"), default="convolution")
    p.add_argument("--star", action="store_true", help="fixed linear system normalization")
    p.set_defaults(func=cmd_bg)

    p = sub.add_parser("ar", parents=[common], help="asymptotic invariant AR*_g")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--check", action="store_true", help="cross-check against interpolation")
    p.add_argument("--plain", action="store_true", help="show AR_g instead of AR*_g")
    p.set_defaults(func=cmd_ar)

    p = sub.add_parser("gm", parents=[common], help="the series G_m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--method", choices=("direct", "closed", "both"), default="both")
    p.set_defaults(func=cmd_gm)

    p = sub.add_parser("series-in-genus", parents=[common], help="generating series over the genus")
    p.add_argument("--codegree", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--umax", type=int, required=True)
    p.add_argument("--source", choices=("closed", "general"), default="closed")
    p.set_defaults(func=cmd_series_in_genus)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=("paper", "oracle", "all"), default="all")
    p.add_argument("--max-genus", type=int, default=6)
    p.add_argument("--max-trunc", type=int, default=6)
    p.add_argument("--max-n", type=int, default=14)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
