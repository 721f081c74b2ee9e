"""Command-line front end: compile, solve, fold, verify-gadgets, render, serve.

Exit codes: 0 for success and positive answers, 1 for proven negatives
(no sequence within budget, an illegal trace), 2 for usage, format, or
resource errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import io as formats
from .cnf import CnfError, normalize_formula
from .folding import FoldMode, FoldState, Instance, apply_fold, check_legal
from .layout import H_C_SHORT, H_C_TALL, LayoutParams, compile_formula
from .search import Outcome, SearchBudget, ReplayError, replay, solve as run_solve
from .verify import all_oracles

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _mode(name: str) -> FoldMode:
    return FoldMode.RESTRICTED if name == "restricted" else FoldMode.UNRESTRICTED


def cmd_compile(args) -> int:
    try:
        cnf = formats.parse_dimacs(_read_text(args.cnf))
        norm = normalize_formula(cnf)
        params = LayoutParams(w_g=args.w_g, h_c_units=H_C_SHORT if args.short_clause else H_C_TALL)
        lay = compile_formula(norm, params)
    except (formats.FormatError, CnfError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    doc = formats.write_instance(lay.instance, lay)
    _write_text(args.out, formats.dumps(doc))
    print(
        f"compiled: {norm.num_vars} vars, {len(norm.clauses)} clauses -> {len(lay.instance)} segments",
        file=sys.stderr,
    )
    return EXIT_OK


def _load_instance(path: str) -> Instance:
    return formats.read_instance(formats.loads(_read_text(path)))


def cmd_solve(args) -> int:
    try:
        inst = _load_instance(args.instance)
        budget = args.budget if args.budget is not None else len(inst)
        search_budget = SearchBudget(budget, args.node_cap, args.time_cap)
    except (formats.FormatError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    mode = _mode(args.mode)
    res = run_solve(inst, mode, search_budget)
    if res.outcome is Outcome.SOLVED:
        doc = formats.write_trace(res.moves, mode)
        _write_text(args.trace_out, formats.dumps(doc))
        print(f"solved in {len(res.moves)} folds ({res.stats.nodes} nodes)", file=sys.stderr)
        return EXIT_OK
    if res.outcome is Outcome.UNSOLVABLE_WITHIN_BUDGET:
        print(f"no sequence within {budget} folds ({res.stats.nodes} nodes)", file=sys.stderr)
        return EXIT_NEGATIVE
    print("search budget exhausted before an answer", file=sys.stderr)
    return EXIT_ERROR


def cmd_fold(args) -> int:
    try:
        inst = _load_instance(args.instance)
        moves, mode = formats.read_trace(formats.loads(_read_text(args.trace)))
    except (formats.FormatError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    try:
        state = replay(inst, moves, mode)
    except ReplayError as e:
        print(f"trace rejected: {e}", file=sys.stderr)
        return EXIT_NEGATIVE
    print(
        f"replayed {len(state.history)} folds; {len(state.segments)} segments remain"
        f"{' (solved)' if not state.segments else ''}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_verify_gadgets(args) -> int:
    reports = all_oracles(fast=args.fast)
    ok = True
    for r in reports:
        print(r.line())
        ok = ok and r.passed
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_render(args) -> int:
    try:
        doc = formats.loads(_read_text(args.instance))
        inst = formats.read_instance(doc)
    except (formats.FormatError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    zones = []
    if args.zones and "layout" in doc:
        from .layout import ZoneRect

        for kind, clause, *nums in doc["layout"]["zones"]:
            xlo = Fraction(nums[0], nums[1])
            xhi = Fraction(nums[2], nums[3])
            ylo = Fraction(nums[4], nums[5])
            yhi = Fraction(nums[6], nums[7])
            zones.append(ZoneRect(xlo, xhi, ylo, yhi, kind, clause))
    svg = formats.render_svg(inst, zones, dict(inst.roles), show_zones=args.zones)
    _write_text(args.out, svg)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="segfold", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="compile a DIMACS CNF file into a segment instance")
    c.add_argument("cnf", help="DIMACS file ('-' for stdin)")
    c.add_argument("--w-g", type=int, default=400, dest="w_g", help="grid unit (default 400)")
    c.add_argument("--short-clause", action="store_true", help="use the short clause-gadget height")
    c.add_argument("--out", default=None, help="instance JSON output path (default stdout)")
    c.set_defaults(func=cmd_compile)

    s = sub.add_parser("solve", help="search for a fold sequence")
    s.add_argument("instance", help="instance JSON")
    s.add_argument("--mode", choices=("restricted", "unrestricted"), default="restricted")
    s.add_argument("--budget", type=int, default=None, help="fold budget (default |S|)")
    s.add_argument("--node-cap", type=int, default=2_000_000)
    s.add_argument("--time-cap", type=float, default=3600.0, help="seconds")
    s.add_argument("--trace-out", default=None, help="trace JSON output path (default stdout)")
    s.set_defaults(func=cmd_solve)

    f = sub.add_parser("fold", help="replay a trace against an instance")
    f.add_argument("instance")
    f.add_argument("trace")
    f.set_defaults(func=cmd_fold)

    v = sub.add_parser("verify-gadgets", help="run the gadget-lemma enumeration oracles")
    v.add_argument("--fast", action="store_true", help="skip the long enumeration oracles")
    v.set_defaults(func=cmd_verify_gadgets)

    r = sub.add_parser("render", help="render an instance to SVG")
    r.add_argument("instance")
    r.add_argument("--zones", action="store_true", help="draw good/bad zone rectangles")
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_render)

    sv = sub.add_parser("serve", help="start the HTTP session service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8787)
    sv.set_defaults(func=cmd_serve)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    return args.func(args)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
