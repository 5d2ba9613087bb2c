"""Command-line interface.

Exit codes: 0 success, 1 negative domain answers (no amalgam, no
amalgamation property, consequence fails, no interpolant), 2 input errors.
All JSON output is versioned with "schema": "blcalc/1" and sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys

from .amalgam import (
    UnsupportedShapeError,
    amalgamate_constructive,
    find_amalgam_bruteforce,
    make_span,
    one_sided_amalgam,
)
from .classes import ModeMismatchError, VarietyInput, canonical, generated_by
from .classify import (
    classify_ap_bh,
    classify_ap_bl,
    classify_ap_mv,
    classify_ap_wh,
    emit_poset,
    interval_by_name,
)
from .core import RawChain, chain_op, check_axioms
from .decompose import decompose, flatten
from .dsl import (
    DSLError,
    parse_chain,
    parse_class_expr,
    parse_element,
    pretty_chain,
    pretty_element,
)
from .formulas import (
    ClosureLimitError,
    FormulaError,
    NotLocallyFiniteError,
    consequence,
    dip_report,
    find_interpolant,
    parse_formula,
    pretty_formula,
)

SCHEMA = "blcalc/1"


def _emit(payload: dict) -> None:
    payload["schema"] = SCHEMA
    print(json.dumps(payload, indent=2, sort_keys=True))


def _read_table(path: str) -> RawChain:
    if path == "-":
        data = json.load(sys.stdin)
    else:
        with open(path) as fh:
            data = json.load(fh)
    return RawChain.from_json(data)


def _variety_input(args) -> VarietyInput:
    if getattr(args, "gens", None):
        chains = [parse_chain(t.strip()) for t in args.gens.split(",")]
        return generated_by(*chains)
    if getattr(args, "cls", None):
        return canonical(parse_class_expr(args.cls))
    raise DSLError("provide --gens or --class", 0)


def cmd_chain(args) -> int:
    if args.subcommand == "check":
        report = check_axioms(_read_table(args.table))
        _emit({"report": report.to_json()})
        return 0
    if args.subcommand == "decompose":
        table = _read_table(args.table)
        dec = decompose(table)
        _emit({"decomposition": dec.to_json(), "chain": pretty_chain(dec.chain)})
        return 0
    if args.subcommand == "flatten":
        c = parse_chain(args.chain)
        _emit({"table": flatten(c).to_json()})
        return 0
    if args.subcommand == "eval":
        c = parse_chain(args.chain)
        x = parse_element(c, args.x)
        y = parse_element(c, args.y)
        result = chain_op(c, args.op, x, y)
        _emit({"result": pretty_element(result)})
        return 0
    raise DSLError(f"unknown chain subcommand {args.subcommand!r}", 0)


def cmd_amalgam(args) -> int:
    apex = parse_chain(args.apex)
    left = parse_chain(args.left)
    right = parse_chain(args.right)
    universe = parse_class_expr(args.universe)
    span = make_span(
        apex,
        left,
        right,
        left_index=args.left_embedding,
        right_index=args.right_embedding,
        scale_cap=args.scale_cap,
    )
    bounds = {
        "max_index": args.max_index,
        "max_k": args.max_k,
        "scale_cap": args.scale_cap,
    }
    if args.mode == "search":
        am = find_amalgam_bruteforce(
            span,
            universe,
            max_index=args.max_index,
            max_k=args.max_k,
            scale_cap=args.scale_cap,
        )
        if am is None:
            _emit({"result": "none-within-bounds", "bounds": bounds})
            return 1
        _emit({"amalgam": am.to_json()})
        return 0
    if args.mode == "construct":
        try:
            am = amalgamate_constructive(span, universe)
        except UnsupportedShapeError as exc:
            _emit({"result": "unsupported", "reason": str(exc)})
            return 1
        _emit({"amalgam": am.to_json()})
        return 0
    if args.mode == "one-sided":
        try:
            am = one_sided_amalgam(
                span,
                universe,
                max_index=args.max_index,
                max_k=args.max_k,
                scale_cap=args.scale_cap,
            )
        except (UnsupportedShapeError, ValueError) as exc:
            _emit({"result": "none-within-bounds", "reason": str(exc), "bounds": bounds})
            return 1
        _emit({"amalgam": am.to_json()})
        return 0
    raise DSLError(f"unknown amalgam mode {args.mode!r}", 0)


def cmd_classify(args) -> int:
    v = _variety_input(args)
    dispatch = {
        "mv": classify_ap_mv,
        "wh": classify_ap_wh,
        "bh": classify_ap_bh,
        "bl": classify_ap_bl,
    }
    verdict = dispatch[args.mode](v)
    _emit({"verdict": verdict.to_json()})
    return 0 if verdict.ap else 1


def cmd_poset(args) -> int:
    p = interval_by_name(args.interval)
    print(emit_poset(p, args.format), end="")
    return 0


def cmd_logic(args) -> int:
    if args.subcommand == "dip":
        report = dip_report(_variety_input(args))
        _emit({"report": report})
        return 0 if report["deductive_interpolation"] else 1
    premise = parse_formula(args.premise)
    conclusion = parse_formula(args.conclusion)
    gens = [parse_chain(t.strip()) for t in args.gens.split(",")]
    if args.subcommand == "consequence":
        res = consequence(premise, conclusion, gens)
        payload = {"holds": res.holds}
        if res.countermodel is not None:
            gi, val = res.countermodel
            payload["countermodel"] = {
                "generator": pretty_chain(gens[gi]),
                "valuation": {k: pretty_element(v) for k, v in sorted(val.items())},
            }
        _emit(payload)
        return 0 if res.holds else 1
    if args.subcommand == "interpolate":
        chi = find_interpolant(premise, conclusion, gens, limit=args.limit)
        if chi is None:
            _emit({"interpolant": None, "certified": True})
            return 1
        _emit({"interpolant": pretty_formula(chi)})
        return 0
    raise DSLError(f"unknown logic subcommand {args.subcommand!r}", 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blcalc",
        description="Exact algebra of totally ordered basic hoops and "
        "BL-algebras: decomposition, amalgamation, classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_chain = sub.add_parser("chain", help="chain evaluation and table tools")
    chain_sub = p_chain.add_subparsers(dest="subcommand", required=True)
    p = chain_sub.add_parser("eval", help="apply an operation in a chain")
    p.add_argument("chain")
    p.add_argument("--op", required=True, choices=["mul", "imp", "meet", "join"])
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p = chain_sub.add_parser("check", help="axiom report for a table")
    p.add_argument("--table", required=True, help="RawChain JSON file or -")
    p = chain_sub.add_parser("decompose", help="ordinal-sum decomposition")
    p.add_argument("--table", required=True, help="RawChain JSON file or -")
    p = chain_sub.add_parser("flatten", help="tabulate a fully finite chain")
    p.add_argument("chain")

    p_am = sub.add_parser("amalgam", help="amalgam search and construction")
    p_am.add_argument("mode", choices=["search", "construct", "one-sided"])
    p_am.add_argument("--apex", required=True)
    p_am.add_argument("--left", required=True)
    p_am.add_argument("--right", required=True)
    p_am.add_argument("--universe", required=True)
    p_am.add_argument("--left-embedding", type=int, default=0)
    p_am.add_argument("--right-embedding", type=int, default=0)
    p_am.add_argument("--max-index", type=int, default=3)
    p_am.add_argument("--max-k", type=int, default=7)
    p_am.add_argument("--scale-cap", type=int, default=4)

    p_cl = sub.add_parser("classify", help="amalgamation-property verdicts")
    p_cl.add_argument("mode", choices=["mv", "wh", "bh", "bl"])
    p_cl.add_argument("--gens", help="comma-separated chain expressions")
    p_cl.add_argument("--class", dest="cls", help="class expression")

    p_po = sub.add_parser("poset", help="interval posets")
    p_po.add_argument("--interval", required=True, help="e.g. I(W1,Z)")
    p_po.add_argument("--format", required=True, choices=["dot", "json"])

    p_lo = sub.add_parser("logic", help="consequence and interpolation")
    logic_sub = p_lo.add_subparsers(dest="subcommand", required=True)
    p = logic_sub.add_parser("consequence")
    p.add_argument("--premise", required=True)
    p.add_argument("--conclusion", required=True)
    p.add_argument("--gens", required=True)
    p = logic_sub.add_parser("interpolate")
    p.add_argument("--premise", required=True)
    p.add_argument("--conclusion", required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--limit", type=int, default=100_000)
    p = logic_sub.add_parser("dip")
    p.add_argument("--gens")
    p.add_argument("--class", dest="cls")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    dispatch = {
        "chain": cmd_chain,
        "amalgam": cmd_amalgam,
        "classify": cmd_classify,
        "poset": cmd_poset,
        "logic": cmd_logic,
    }
    try:
        return dispatch[args.command](args)
    except (
        DSLError,
        FormulaError,
        ModeMismatchError,
        NotLocallyFiniteError,
        ClosureLimitError,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
