"""Command line interface: ``qfuzzy check | normalize | derive | report | list``.

Exit codes: 0 when every claim passes, 1 when any claim fails, 2 on usage,
parse or specialization errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .freealg import format_element
from .loader import LoadError, emit_algebra, load_algebra, load_rmatrix
from .parser import ParseError, parse_element
from .report import ENGINE_VERSION, CheckReport, render_text
from .scalars import PoleError
from .suites import SuiteOptions, UnknownSuite, run_all, run_suite, suite_names

__all__ = ["main", "build_parser"]

CONSTRUCTIONS = ("qfuzzy", "braided-sphere", "eq9", "frt", "reflection")


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _assignment(text: str) -> tuple[str, str]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    k, v = text.split("=", 1)
    return k.strip(), v.strip()


def _params(pairs) -> dict:
    from .parser import evaluate

    out: dict = {}
    for k, v in pairs or []:
        out[k] = evaluate(v, None, out)
    return out


def _suite_options(args) -> SuiteOptions:
    return SuiteOptions(
        q_at=args.q_at,
        max_degree=args.max_degree,
        seed=args.seed,
        params=_params(args.set),
        rmatrix=getattr(args, "rmatrix", None),
    )


def _add_suite_flags(p: argparse.ArgumentParser):
    p.add_argument("--q-at", type=_fraction, default=None, metavar="R", help="specialize q to a rational square, e.g. 9/4")
    p.add_argument("--max-degree", type=int, default=None, help="degree bound for confluence and sampling checks")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--set", type=_assignment, action="append", metavar="NAME=VALUE", help="suite parameter such as t=2")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qfuzzy", description="Exact checks for quantum fuzzy spheres and their calculi.")
    ap.add_argument("--version", action="version", version=f"qfuzzy {ENGINE_VERSION}")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run a suite (or 'all') and print its report")
    c.add_argument("suite")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--rmatrix", default=None, help=".rmat file for the R-matrix suites")
    _add_suite_flags(c)

    n = sub.add_parser("normalize", help="print the normal form of an expression")
    n.add_argument("--algebra", required=True, help="shipped algebra name or .alg file")
    n.add_argument("--expr", required=True)
    n.add_argument("--set", type=_assignment, action="append", metavar="NAME=VALUE", help="override a presentation parameter")

    d = sub.add_parser("derive", help="emit a derived presentation as .alg YAML")
    d.add_argument("--construction", choices=CONSTRUCTIONS, required=True)
    d.add_argument("--rmatrix", default="standard", help="shipped R-matrix name or .rmat file")
    d.add_argument("--normalization", choices=("hecke", "quantum-group"), default="quantum-group", help="R normalization for eq9")
    d.add_argument("--determinant", action="store_true", help="add the quantum determinant relation (frt)")

    r = sub.add_parser("report", help="run every suite and write a combined report")
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.add_argument("--figures", default=None, metavar="DIR", help="also render figures into DIR")
    r.add_argument("--output", default=None, help="write the report to a file instead of stdout")
    r.add_argument("--no-timing", action="store_true", help="omit elapsed times (byte-stable output)")
    _add_suite_flags(r)

    sub.add_parser("list", help="list registered suites")
    return ap


def _render(reports: list[CheckReport], fmt: str, timing: bool = True) -> str:
    if fmt == "json":
        payload = reports[0].to_dict(timing) if len(reports) == 1 else {
            "version": ENGINE_VERSION,
            "ok": all(r.ok for r in reports),
            "suites": [r.to_dict(timing) for r in reports],
        }
        return json.dumps(payload, ensure_ascii=False, indent=2)
    return "\n".join(render_text(r.to_dict(timing)) for r in reports)


def _cmd_check(args) -> int:
    opts = _suite_options(args)
    if args.suite == "all":
        reports = run_all(opts)
    else:
        try:
            reports = [run_suite(args.suite, opts)]
        except UnknownSuite:
            raise UsageError(f"unknown suite {args.suite!r}; try 'qfuzzy list'")
    print(_render(reports, args.format))
    return 0 if all(r.ok for r in reports) else 1


def _cmd_normalize(args) -> int:
    alg = load_algebra(args.algebra, **_params(args.set))
    print(format_element(parse_element(args.expr, alg)))
    return 0


def _derive(args):
    from . import dga
    from . import rmatrix as rm

    if args.construction == "eq9":
        return dga.omega_bqsu2_from_eq9(args.normalization)
    R = load_rmatrix(args.rmatrix)
    if args.construction == "qfuzzy":
        return rm.braided_sphere_relations(load_rmatrix("standard"), name="qfuzzy")[1]
    if args.construction == "braided-sphere":
        return rm.braided_sphere_relations(R)[1]
    if args.construction == "frt":
        return rm.frt_relations(R, with_determinant=args.determinant)
    return rm.reflection_relations(R)


def _cmd_derive(args) -> int:
    sys.stdout.write(emit_algebra(_derive(args)))
    return 0


def _cmd_report(args) -> int:
    reports = run_all(_suite_options(args))
    text = _render(reports, args.format, timing=not args.no_timing)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    if args.figures:
        from .plotting import write_figures

        for path in write_figures(args.figures, reports):
            print(f"wrote {path}", file=sys.stderr)
    return 0 if all(r.ok for r in reports) else 1


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    handlers = {"check": _cmd_check, "normalize": _cmd_normalize, "derive": _cmd_derive, "report": _cmd_report}
    try:
        if args.command == "list":
            for name in suite_names():
                print(name)
            return 0
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except PoleError as exc:
        print(f"pole under specialization: {exc}", file=sys.stderr)
        return 2
    except (UsageError, LoadError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
