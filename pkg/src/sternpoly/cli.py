"""Command-line front end.

Every computation and verification sweep is a subcommand emitting
machine-readable output: JSON lines by default, CSV for density and
census tables, DOT for the automaton graph.  Output bytes are a pure
function of the configuration, whatever the worker count.

Exit codes: 0 all checks passed, 1 a verification found a violation,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import automaton, degrees, reciprocal, roots, suite
from .core import degree, eval_exact, stern_poly
from .report import jsonable

__all__ = ["main", "main_script", "build_parser"]

# let argparse accept bare negative fractions such as -1/2 as values
_NEGATIVE_TOKEN = re.compile(r"^-\d+(/\d+)?$")


class UsageError(Exception):
    pass


def _point(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _add_parser(subparsers, name: str, **kwargs):
    parser = subparsers.add_parser(name, **kwargs)
    parser._negative_number_matcher = _NEGATIVE_TOKEN
    return parser


def _output_flags(parser, formats=("json",)):
    parser.add_argument("--format", choices=formats, default=formats[0])
    parser.add_argument("--out", default=None, help="write output to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sternpoly",
        description="Exact computation and verification for Stern polynomials.",
    )
    parser._negative_number_matcher = _NEGATIVE_TOKEN
    sub = parser.add_subparsers(dest="command", required=True)

    p = _add_parser(sub, "poly", help="coefficients of B_n")
    p.add_argument("n", type=int)
    _output_flags(p)

    p = _add_parser(sub, "eval", help="exact value B_n(q)")
    p.add_argument("n", type=int)
    p.add_argument("q", type=_point)
    _output_flags(p)

    p = _add_parser(sub, "degree", help="degree of B_n")
    p.add_argument("n", type=int)
    _output_flags(p)

    p = _add_parser(sub, "roots", help="root-set scans and densities")
    rsub = p.add_subparsers(dest="roots_command", required=True)
    q = _add_parser(rsub, "scan", help="classify all rational roots up to --max")
    q.add_argument("--max", type=int, required=True)
    _output_flags(q)
    q = _add_parser(rsub, "members", help="members of one root set")
    q.add_argument("-a", "--point", type=_point, required=True)
    q.add_argument("--max", type=int, required=True)
    _output_flags(q)
    q = _add_parser(rsub, "density", help="exact zero densities at powers of two")
    q.add_argument("-a", "--point", type=_point, required=True)
    q.add_argument("--imax", type=int, required=True)
    _output_flags(q, ("json", "csv"))

    p = _add_parser(sub, "verify", help="verification sweeps")
    vsub = p.add_subparsers(dest="verify_command", required=True)
    q = _add_parser(vsub, "ineq1", help="odd values dominate half the neighbour max")
    q.add_argument("--kmin", type=int, default=4)
    q.add_argument("--kmax", type=int, default=10)
    q.add_argument("--max", type=int, default=10**5)
    _output_flags(q)
    q = _add_parser(vsub, "closure", help="zero-set closure at -1/2 or -1/3")
    q.add_argument("-a", "--point", type=_point, required=True)
    q.add_argument("--max", type=int, required=True)
    _output_flags(q)
    q = _add_parser(vsub, "scaling", help="shifted-index scaling identity")
    q.add_argument("-a", "--point", type=_point, required=True)
    q.add_argument("--max", type=int, required=True)
    q.add_argument("--kmax", type=int, default=12)
    _output_flags(q)
    q = _add_parser(vsub, "degrees-pair", help="equal-degree pair characterization")
    q.add_argument("--max", type=int, required=True)
    _output_flags(q)
    q = _add_parser(vsub, "degrees-triple", help="equal-degree triple characterization")
    q.add_argument("--max", type=int, required=True)
    _output_flags(q)
    q = _add_parser(vsub, "no-quad", help="no four consecutive equal degrees")
    q.add_argument("--max", type=int, required=True)
    _output_flags(q)
    q = _add_parser(vsub, "theorem6", help="reciprocal index families")
    q.add_argument("--nmax", type=int, default=3)
    q.add_argument("--kmax", type=int, default=80)
    _output_flags(q)
    q = _add_parser(vsub, "all", help="run the whole verification suite")
    q.add_argument("--profile", choices=sorted(suite.PROFILES), default="desk")
    q.add_argument("--jobs", type=int, default=1)
    _output_flags(q)

    p = _add_parser(sub, "automaton", help="pair-state machine over F_p x F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--target", type=_point, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--analyze", action="store_true")
    mode.add_argument("--density", type=int, metavar="IMAX")
    mode.add_argument("--cesaro", type=int, metavar="T")
    mode.add_argument(
        "--period-search",
        nargs=3,
        type=int,
        metavar=("PREPERIOD", "PERIOD", "PREFIX"),
    )
    mode.add_argument("--emit", choices=("dot",))
    p.add_argument("--tol", type=float, default=1e-3)
    _output_flags(p, ("json", "csv", "dot"))

    p = _add_parser(sub, "reciprocal", help="palindromic polynomials")
    csub = p.add_subparsers(dest="reciprocal_command", required=True)
    q = _add_parser(csub, "check", help="palindrome test for one index")
    q.add_argument("n", type=int)
    _output_flags(q)
    q = _add_parser(csub, "census", help="count reciprocal indices up to --max")
    q.add_argument("--max", type=int, required=True)
    q.add_argument("--growth", action="store_true", help="one row per power of two")
    _output_flags(q, ("json", "csv"))

    return parser


def _dump(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"))


def _report_lines(reports) -> tuple[list[str], bool]:
    failed = any(not r.passed for r in reports)
    return [_dump(r.to_dict()) for r in reports], failed


def _csv_lines(header: str, rows) -> list[str]:
    return [header] + [",".join(str(v) for v in row) for row in rows]


def _run_automaton(args) -> tuple[list[str], bool]:
    dfao = automaton.build_dfao(args.p, args.target)
    if args.emit == "dot":
        return automaton.export_dot(dfao).splitlines(), False
    if args.density is not None:
        densities = automaton.density_counts_dfao(dfao, args.density)
        if args.format == "csv":
            rows = [
                (i, d.numerator, d.denominator) for i, d in enumerate(densities)
            ]
            return _csv_lines("i,numerator,denominator", rows), False
        lines = [
            _dump({"i": i, "density": d}) for i, d in enumerate(densities)
        ]
        return lines, False
    if args.cesaro is not None:
        report = automaton.cesaro_check(dfao, args.cesaro, args.tol)
        return _report_lines([report])
    if args.period_search is not None:
        pre, per, prefix = args.period_search
        report = automaton.periodicity_search(dfao, pre, per, prefix)
        return _report_lines([report])
    analysis = automaton.analyze(dfao)
    line = _dump(
        {
            "p": dfao.p,
            "t": dfao.t,
            "target": dfao.target,
            "reachable_count": analysis.reachable_count,
            "strongly_connected": analysis.strongly_connected,
            "regular_2in_2out": analysis.regular_2in_2out,
            "zero_output_count": analysis.zero_output_count,
            "ord_t": analysis.ord_t,
            "zero_bound_ok": analysis.zero_bound_ok,
            "ord_bound_ok": analysis.ord_bound_ok,
        }
    )
    ok = (
        analysis.strongly_connected
        and analysis.regular_2in_2out
        and analysis.zero_bound_ok
        and analysis.ord_bound_ok
    )
    return [line], not ok


def _dispatch(args) -> tuple[list[str], bool]:
    if args.command == "poly":
        poly = stern_poly(args.n)
        payload = {
            "n": args.n,
            "coeffs": list(poly.coeffs),
            "degree": poly.degree if poly.coeffs else None,
        }
        return [_dump(payload)], False
    if args.command == "eval":
        value = eval_exact(args.n, args.q)
        return [_dump({"n": args.n, "point": args.q, "value": value})], False
    if args.command == "degree":
        return [_dump({"n": args.n, "degree": degree(args.n)})], False
    if args.command == "roots":
        if args.roots_command == "scan":
            return _report_lines([roots.rational_root_scan(args.max)])
        if args.roots_command == "members":
            members = roots.r_members(args.point, args.max)
            line = _dump({"point": args.point, "max": args.max, "members": members})
            return [line], False
        densities = roots.density_at_powers(args.point, args.imax)
        if args.format == "csv":
            rows = [(i, d.numerator, d.denominator) for i, d in enumerate(densities)]
            return _csv_lines("i,numerator,denominator", rows), False
        return [
            _dump({"i": i, "density": d}) for i, d in enumerate(densities)
        ], False
    if args.command == "verify":
        return _dispatch_verify(args)
    if args.command == "automaton":
        return _run_automaton(args)
    if args.command == "reciprocal":
        if args.reciprocal_command == "check":
            flag = reciprocal.is_reciprocal(args.n)
            return [_dump({"n": args.n, "reciprocal": flag})], False
        census = reciprocal.rec_census(args.max)
        if args.growth:
            mask = reciprocal.reciprocal_mask(args.max)
            rows = []
            k = 1
            while (1 << k) <= args.max:
                bound = 1 << k
                _, _, indices = reciprocal.family_pairs(bound)
                rows.append((k, bound, int(mask[1: bound + 1].sum()), len(indices)))
                k += 1
            if args.format == "csv":
                return _csv_lines("k,bound,total,family_count", rows), False
            return [
                _dump(
                    {"k": k, "bound": b, "total": t, "family_count": f}
                )
                for k, b, t, f in rows
            ], False
        payload = {
            "bound": census.bound,
            "total": census.total,
            "family_count": census.family_count,
            "u_pairs": len(census.u_pairs),
            "v_pairs": len(census.v_pairs),
        }
        return [_dump(payload)], census.total < census.family_count
    raise UsageError(f"unknown command {args.command!r}")


def _dispatch_verify(args) -> tuple[list[str], bool]:
    cmd = args.verify_command
    if cmd == "ineq1":
        reports = [
            roots.verify_halfmax_inequality(k, args.max)
            for k in range(args.kmin, args.kmax + 1)
        ]
        return _report_lines(reports)
    if cmd == "closure":
        return _report_lines([roots.verify_closure(args.point, args.max)])
    if cmd == "scaling":
        return _report_lines(
            [roots.verify_scaling(args.point, args.max, args.kmax)]
        )
    if cmd == "degrees-pair":
        return _report_lines([degrees.verify_pair(args.max)])
    if cmd == "degrees-triple":
        return _report_lines([degrees.verify_triple(args.max)])
    if cmd == "no-quad":
        return _report_lines([degrees.verify_no_quad(args.max)])
    if cmd == "theorem6":
        return _report_lines(
            [reciprocal.verify_reciprocal_families(args.nmax, args.kmax)]
        )
    reports = suite.run_suite(args.profile, args.jobs)
    return _report_lines(reports)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        lines, failed = _dispatch(args)
    except (UsageError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = "\n".join(lines) + "\n"
    out_path = getattr(args, "out", None)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if failed else 0


def main_script() -> None:
    raise SystemExit(main())
