"""Command-line entry point: ``scobcheck <command> ...``.

Presentations are given inline (``"< a, b | a^2, b^3 >"``), as ``@path``
to read a file, or as ``-`` for stdin.

Exit codes: 0 success, 1 a claim failed, 2 usage or parse error,
3 an enumeration exceeded its limits where a finite answer was required.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import __version__
from .abelian import abelian_invariants, surgery_h1
from .builders import FramedLinkDiagram, mapping_torus, surgery_group, twist_spun_trefoil
from .claims import exit_code, record_expectations, report_json, report_text, run_claims
from .cosets import STRATEGIES, CosetTable, EnumerationLimits, enumerate_cosets
from .errors import (AutomorphismUnverified, InvalidParameter, MalformedDiagram, MissingFraming,
                     NotAnAutomorphism, PresentationSyntaxError, UnknownGenerator)
from .parsing import parse_map, parse_presentation, parse_relation
from .presentations import Presentation, add_relators, render_presentation, simplify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMITS = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_presentation(arg: str) -> Presentation:
    if arg == "-":
        text = sys.stdin.read()
    elif arg.startswith("@"):
        text = Path(arg[1:]).read_text(encoding="utf-8")
    else:
        text = arg
    return parse_presentation(text.strip())


def _limits(args) -> EnumerationLimits:
    """Defaults (env var inside EnumerationLimits), then ``--config``, then flags."""
    conf = {}
    if getattr(args, "config", None):
        try:
            conf = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read config {args.config}: {e}") from e
        unknown = set(conf) - {"max_cosets", "max_definitions", "strategy"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    if getattr(args, "max_cosets", None) is not None:
        conf["max_cosets"] = args.max_cosets
    if getattr(args, "strategy", None) is not None:
        conf["strategy"] = args.strategy
    try:
        return EnumerationLimits(**conf)
    except (TypeError, ValueError) as e:
        raise UsageError(str(e)) from e


def _add_limit_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-cosets", type=int, help="coset table size limit")
    p.add_argument("--strategy", choices=STRATEGIES, help="enumeration strategy (default hlt)")
    p.add_argument("--config", help="JSON file with max_cosets / max_definitions / strategy")


def _print_order(p: Presentation, limits: EnumerationLimits, csv: str | None = None) -> int:
    table = enumerate_cosets(p, (), limits)
    if not isinstance(table, CosetTable):
        print(f"unknown ({table.reason}; {table.live_cosets} live cosets, peak {table.cosets_defined_peak})")
        return EXIT_LIMITS
    print(table.n_cosets)
    if csv:
        Path(csv).write_text(table.to_csv(), encoding="utf-8")
    return EXIT_OK


# -- commands ------------------------------------------------------------------------


def cmd_parse(args) -> int:
    p = _read_presentation(args.presentation)
    if args.simplify:
        p = simplify(p)
    print(render_presentation(p))
    return EXIT_OK


def cmd_order(args) -> int:
    return _print_order(_read_presentation(args.presentation), _limits(args), args.csv)


def cmd_abelianize(args) -> int:
    inv = abelian_invariants(_read_presentation(args.presentation))
    print(json.dumps(inv.as_dict()) if args.json else inv)
    return EXIT_OK


def cmd_quotient(args) -> int:
    p = _read_presentation(args.presentation)
    extra = [parse_relation(r, p.generators) for r in args.relator]
    q = add_relators(p, extra)
    if args.show:
        print(render_presentation(q))
    return _print_order(q, _limits(args))


def cmd_mapping_torus(args) -> int:
    p = _read_presentation(args.presentation)
    aut = parse_map(args.aut, p.generators)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", AutomorphismUnverified)
        m = mapping_torus(p, aut, stable=args.stable, limits=_limits(args))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print(render_presentation(m))
    return EXIT_OK


def cmd_twist_spun(args) -> int:
    g = twist_spun_trefoil(args.n)
    print(render_presentation(g))
    print(f"abelianization: {abelian_invariants(g)}")
    if args.quotient is not None:
        print(f"order of G{args.n} / <<t^{args.quotient}>>: ", end="")
        return _print_order(add_relators(g, [parse_relation(f"t^{args.quotient}", g.generators)]),
                            _limits(args))
    return EXIT_OK


def cmd_surgery(args) -> int:
    d = FramedLinkDiagram.load(args.diagram)
    p = surgery_group(d)
    lk = d.linking_matrix()
    print(render_presentation(simplify(p) if args.simplify else p))
    print(f"linking matrix: {lk.tolist()}")
    print(f"H1: {surgery_h1(lk)}")
    print("order: ", end="")
    return _print_order(p, _limits(args))


def cmd_verify_paper(args) -> int:
    limits = _limits(args)
    if args.record_expectations:
        rec = record_expectations(limits=limits)
        print(f"recorded {', '.join(sorted(rec))}")
        return EXIT_OK
    selection = [s.strip() for s in args.claims.split(",") if s.strip()] if args.claims else None
    try:
        reports = run_claims(selection, limits)
    except KeyError as e:
        raise UsageError(e.args[0]) from e
    render = report_json if args.format == "json" else report_text
    out = render(reports, timing=not args.no_timing)
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return exit_code(reports)


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="scobcheck", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and re-render a presentation")
    p.add_argument("presentation")
    p.add_argument("--simplify", action="store_true", help="apply Tietze simplification first")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("order", help="group order by coset enumeration")
    p.add_argument("presentation")
    p.add_argument("--csv", help="write the coset table (1-based) to this file")
    _add_limit_flags(p)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("abelianize", help="abelian invariants via Smith normal form")
    p.add_argument("presentation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("quotient", help="order after adding relators")
    p.add_argument("presentation")
    p.add_argument("--relator", action="append", required=True, help="word or relation; repeatable")
    p.add_argument("--show", action="store_true", help="print the quotient presentation")
    _add_limit_flags(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("mapping-torus", help="presentation of fiber x| Z")
    p.add_argument("presentation")
    p.add_argument("--aut", action="append", required=True, metavar="G=WORD",
                   help="image of one fiber generator; repeat for each")
    p.add_argument("--stable", help="name of the stable letter (default s)")
    _add_limit_flags(p)
    p.set_defaults(func=cmd_mapping_torus)

    p = sub.add_parser("twist-spun", help="group of the n-twist-spun trefoil")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--quotient", type=int, metavar="M", help="also report the order of G_n / <<t^M>>")
    _add_limit_flags(p)
    p.set_defaults(func=cmd_twist_spun)

    p = sub.add_parser("surgery", help="fundamental group of integral surgery on a framed link")
    p.add_argument("--diagram", required=True, help="diagram JSON file")
    p.add_argument("--simplify", action="store_true")
    _add_limit_flags(p)
    p.set_defaults(func=cmd_surgery)

    p = sub.add_parser("verify-paper", help="run the claim registry")
    p.add_argument("--claims", help="comma-separated claim ids (default: all)")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--no-timing", action="store_true", help="zero the ms fields for byte-stable output")
    p.add_argument("--record-expectations", action="store_true",
                   help="recompute recorded claims under both strategies and rewrite the expectations file")
    _add_limit_flags(p)
    p.set_defaults(func=cmd_verify_paper)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PresentationSyntaxError, UnknownGenerator, UsageError, InvalidParameter, MalformedDiagram,
            MissingFraming, NotAnAutomorphism, OSError, json.JSONDecodeError) as e:
        print(f"scobcheck: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
