"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 build error,
4 precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import builtin_catalog, build_entry
from .classifiers import classify_ring
from .decomposition import verify_boolean_yaqub
from .errors import (
    AxiomViolation,
    CapExceeded,
    NotIdempotent,
    ParseError,
    PreconditionFailed,
    PreconditionNotSDT,
    RingError,
)
from .invariants import SET_KEYS, structural_sets
from .parser import GRAMMAR, parse_ring_expr, build
from .ring import DEFAULT_VALIDATION_CAP, make_corner
from .search import PROBLEMS, run_search
from .suite import CHECK_IDS, SuiteConfig, run_catalog_suite, run_suite
from .tableio import describe_encoding, export_tables, load_table_ring

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_BUILD, EXIT_PRECONDITION = 0, 1, 2, 3, 4
SEARCH_DEFAULT_ORDER = 4096

EXPR_HELP = "ring expression; grammar:\n" + GRAMMAR


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(args, payload, text: str | None = None) -> None:
    if getattr(args, "json", False) or text is None:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _build(args, expr: str):
    try:
        ast = parse_ring_expr(expr)
    except ParseError as exc:
        raise CommandError(EXIT_PARSE, f"parse error: {exc}")
    try:
        R = build(ast, max_order=getattr(args, "max_order", None))
    except RingError as exc:
        raise CommandError(EXIT_BUILD, f"build error: {exc}")
    corner = getattr(args, "corner", None)
    if corner is not None:
        if not 0 <= corner < R.order:
            raise CommandError(EXIT_PRECONDITION, f"corner index {corner} out of range")
        try:
            R = make_corner(R, corner)
        except NotIdempotent as exc:
            raise CommandError(EXIT_PRECONDITION, str(exc))
    return R


def _load_tables(args, paths):
    rings = []
    for path in paths or ():
        try:
            rings.append(load_table_ring(path, cap=getattr(args, "cap", DEFAULT_VALIDATION_CAP)))
        except (OSError, ValueError, AxiomViolation, CapExceeded) as exc:
            raise CommandError(EXIT_BUILD, f"cannot load {path}: {exc}")
    return rings


def _catalog_rings(args):
    limit = getattr(args, "max_order", None)
    rings = []
    for entry in builtin_catalog():
        try:
            rings.append(build_entry(entry, limit))
        except RingError:
            continue  # over the requested order bound
    return rings


def cmd_classify(args) -> int:
    R = _build(args, args.expr)
    report = classify_ring(R, npotent_ns=args.npotent or (), witnesses=args.witnesses)
    payload = report.to_json(with_witnesses=args.witnesses)
    lines = [f"{R.name} (order {R.order})"]
    lines += [f"  {k}: {str(v).lower()}" for k, v in report.flags.items()]
    lines += [f"  {k}: {v}" for k, v in report.char_data.items()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_sets(args) -> int:
    R = _build(args, args.expr)
    if args.set == "all":
        payload = structural_sets(R)
    else:
        payload = structural_sets(R, [args.set])[args.set]
    print(json.dumps(payload))
    return EXIT_OK


def _suite_ids(spec: str):
    if spec == "all":
        return CHECK_IDS
    ids = tuple(s.strip() for s in spec.split(",") if s.strip())
    unknown = [i for i in ids if i not in CHECK_IDS]
    if unknown:
        raise CommandError(EXIT_PRECONDITION, f"unknown check ids: {', '.join(unknown)}")
    return ids


def _suite_text(results) -> str:
    lines = []
    for res in results:
        for r in res.results:
            extra = f" ({r.reason})" if r.reason else ""
            lines.append(f"{res.ring}: {r.check_id} {r.status}{extra}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    ids = _suite_ids(args.suite)
    cfg = SuiteConfig(seed=args.seed)
    extra = _load_tables(args, args.table)
    if args.catalog:
        result = run_catalog_suite(_catalog_rings(args) + extra, ids, cfg)
        text = _suite_text(result.rings)
        if result.uncovered:
            text += "\nnever passed: " + ", ".join(result.uncovered)
        _emit(args, result.to_json(), text)
        return EXIT_OK if result.ok else EXIT_VERIFY
    if args.expr is None and not extra:
        raise CommandError(EXIT_PRECONDITION, "give a ring expression, --table, or --catalog")
    rings = ([_build(args, args.expr)] if args.expr is not None else []) + extra
    cfg.partners = tuple(_catalog_rings(args))
    results = [run_suite(R, ids, cfg) for R in rings]
    payload = results[0].to_json() if len(results) == 1 else [r.to_json() for r in results]
    _emit(args, payload, _suite_text(results))
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


def cmd_decompose(args) -> int:
    R = _build(args, args.expr)
    try:
        report = verify_boolean_yaqub(R)
    except PreconditionNotSDT as exc:
        raise CommandError(EXIT_PRECONDITION, str(exc))
    payload = report.to_json()
    text = (f"{R.name}: R/J order {payload['quotient_order']}; "
            f"R1 order {payload['r1']['order']} boolean={str(payload['r1']['boolean']).lower()}; "
            f"R2 order {payload['r2']['order']} yaqub={str(payload['r2']['yaqub']).lower()}; "
            f"verdict={str(payload['verdict']).lower()}")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_search(args) -> int:
    bound = args.max_order if args.max_order is not None else SEARCH_DEFAULT_ORDER
    rings = _catalog_rings(args) + _load_tables(args, args.table)
    print(json.dumps(run_search(args.problem, rings, bound), indent=2))
    return EXIT_OK


def cmd_export(args) -> int:
    R = _build(args, args.expr)
    if args.what == "encoding":
        payload = describe_encoding(R)
    else:
        try:
            payload = export_tables(R)
        except PreconditionFailed as exc:
            raise CommandError(EXIT_PRECONDITION, str(exc))
    text = json.dumps(payload)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def d(value):
        return argparse.SUPPRESS if suppress else value
    parser.add_argument("--json", action="store_true", default=d(False), help="emit JSON")
    parser.add_argument("--max-order", type=int, default=d(None),
                        help="order cap for constructed rings (search: scan bound)")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for sampled checks")
    parser.add_argument("--cap", type=int, default=d(DEFAULT_VALIDATION_CAP),
                        help="validation cap for table rings loaded from files")


def make_parser() -> argparse.ArgumentParser:
    fmt = argparse.RawDescriptionHelpFormatter
    parser = argparse.ArgumentParser(
        prog="sdtring", formatter_class=fmt,
        description="Finite-ring classifier for SDT and related ring classes.\n\n"
                    "Ring expressions:\n" + GRAMMAR)
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], formatter_class=fmt,
                       help="classify a ring", epilog=EXPR_HELP)
    p.add_argument("expr")
    p.add_argument("--witnesses", action="store_true", help="include SDT witnesses")
    p.add_argument("--corner", type=int, help="use the corner ring at this idempotent index")
    p.add_argument("--npotent", type=int, nargs="*", help="also test strongly Delta n-potent")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("sets", parents=[common], formatter_class=fmt,
                       help="structural subsets", epilog=EXPR_HELP)
    p.add_argument("expr")
    p.add_argument("--set", default="all", choices=SET_KEYS + ("all",))
    p.add_argument("--corner", type=int)
    p.set_defaults(fn=cmd_sets)

    p = sub.add_parser("verify", parents=[common], formatter_class=fmt,
                       help="run the verification suite", epilog=EXPR_HELP)
    p.add_argument("expr", nargs="?")
    p.add_argument("--catalog", action="store_true", help="run on the built-in catalog")
    p.add_argument("--suite", default="all", help="'all' or comma-separated check ids")
    p.add_argument("--table", action="append", help="table-ring JSON file (repeatable)")
    p.add_argument("--corner", type=int)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("decompose", parents=[common], formatter_class=fmt,
                       help="R/J as Boolean x Yaqub", epilog=EXPR_HELP)
    p.add_argument("expr")
    p.add_argument("--corner", type=int)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("search", parents=[common], help="sweep the catalog for open questions")
    p.add_argument("--problem", required=True, choices=PROBLEMS)
    p.add_argument("--table", action="append", help="extra table-ring JSON file (repeatable)")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("export", parents=[common], formatter_class=fmt,
                       help="dump tables or the encoding", epilog=EXPR_HELP)
    p.add_argument("expr")
    p.add_argument("--what", default="tables", choices=("tables", "encoding"))
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    p.add_argument("--corner", type=int)
    p.set_defaults(fn=cmd_export)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CommandError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
