"""Command-line interface: ``cyclicmds construct | check | search | verify | field-info``.

Exit status: 0 when every verdict is true, 1 when a property or assertion
fails, 2 on usage, parse or I/O errors.  JSON goes to standard output,
progress to standard error.  ``CYCLICMDS_OUTPUT=json`` makes JSON the
default output format.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__
from .errors import CyclicMDSError
from .gf2m import AES_FIELD, GF2m, find_factor
from .matrix import Matrix
from .props import CHECKS, DEFAULT_BUDGET, branch_numbers
from .report import PropertyReport
from .search import (
    DEFAULT_CEILING,
    CampaignSpec,
    Shape,
    run_campaign,
    verify_nonexistence_2d,
    verify_reference_examples,
)
from .structured import circulant, cyclic, g_circulant, left_circulant, parse_cycle
from . import suites

SUITES = ("paper-examples", "nonexistence-2d", "lemmas", "equivalence")
PROPERTIES = tuple(CHECKS) + ("branch",)


class UsageError(Exception):
    pass


def dump(obj) -> str:
    return json.dumps(obj, indent=2)


def parse_row(field: GF2m, text: str) -> list[int]:
    return [field.parse_literal(tok) for tok in text.split(",")]


def parse_list(text: str, allowed=None) -> list[str]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if allowed is not None:
        for item in items:
            if item not in allowed:
                raise UsageError(f"unknown item {item!r}; choose from {', '.join(allowed)}")
    return items


def _field(args, required=True) -> GF2m | None:
    if args.field is None:
        if required:
            raise UsageError("--field is required, e.g. --field 'gf(2^8)/0x11b'")
        return None
    return GF2m.parse(args.field)


def _add_output(p):
    p.add_argument("--output", choices=("human", "json"),
                   default=os.environ.get("CYCLICMDS_OUTPUT", "human"))


def _add_shape_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--circulant", metavar="ROW", help="circulant with this first row")
    g.add_argument("--left-circulant", metavar="ROW", help="left-circulant with this first row")
    g.add_argument("--g-circulant", metavar="G", type=int, help="g-circulant; first row from --row")
    g.add_argument("--cyclic", metavar="CYCLE", help="cyclic matrix for a cycle like '(0 2 4 3 5 1)'; first row from --row")
    p.add_argument("--row", help="comma-separated first row: hex (0x1b) or polynomial (1+a^2) literals")


def build_matrix(args, field: GF2m) -> Matrix:
    if args.circulant is not None:
        return circulant(field, parse_row(field, args.circulant))
    if args.left_circulant is not None:
        return left_circulant(field, parse_row(field, args.left_circulant))
    if args.g_circulant is not None or args.cyclic is not None:
        if args.row is None:
            raise UsageError("--row is required with --g-circulant and --cyclic")
        row = parse_row(field, args.row)
        if args.g_circulant is not None:
            return g_circulant(field, args.g_circulant, row)
        return cyclic(field, parse_cycle(args.cyclic, len(row)), row)
    raise UsageError("choose a shape: --circulant, --left-circulant, --g-circulant or --cyclic")


def cmd_construct(args) -> int:
    mat = build_matrix(args, _field(args))
    if args.output == "json":
        print(dump(mat.to_json()))
    else:
        print(mat.format_table(poly=args.poly))
    return 0


def _load_matrix(args) -> Matrix:
    if args.matrix is not None:
        text = sys.stdin.read() if args.matrix == "-" else Path(args.matrix).read_text()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.matrix}: not valid JSON ({exc})") from None
        return Matrix.from_json(obj)
    return build_matrix(args, _field(args))


def _branch_report(mat: Matrix, budget: int) -> PropertyReport:
    bn = branch_numbers(mat, budget)
    best = bn.differential == bn.linear == mat.k + 1
    return PropertyReport("branch", best, {"differential": bn.differential, "linear": bn.linear,
                                           "exhaustive": bn.exhaustive})


def cmd_check(args) -> int:
    mat = _load_matrix(args)
    reports = []
    for name in parse_list(args.properties, PROPERTIES):
        start = time.perf_counter()
        rep = _branch_report(mat, args.budget) if name == "branch" else CHECKS[name](mat)
        if args.timing:
            rep.elapsed_ms = int((time.perf_counter() - start) * 1000)
        reports.append(rep)
    if args.output == "json":
        print(dump([r.to_json() for r in reports]))
    else:
        for r in reports:
            detail = "" if r.witness is None else f"  {json.dumps(r.witness)}"
            print(f"{r.property}: {str(r.verdict).lower()}{detail}")
    return 0 if all(reports) else 1


def cmd_search(args) -> int:
    field = _field(args)
    if args.random and (args.seed is None or args.trials is None):
        raise UsageError("--random needs --seed and --trials")
    spec = CampaignSpec(
        field=field,
        k=args.k,
        shape=Shape.parse(args.shape, args.k),
        predicates=tuple(parse_list(args.require, tuple(CHECKS))),
        mode="random" if args.random else "exhaustive",
        seed=args.seed,
        trials=args.trials,
        limit=args.limit,
        ceiling=args.ceiling,
    )
    result = run_campaign(spec, workers=args.workers)
    summary = (f"{result.hit_count} hits / {result.candidates_scanned} scanned / "
               f"{'exhausted' if result.exhausted else 'not exhausted'}")
    if args.output == "json":
        print(dump(result.to_json()))
        print(summary, file=sys.stderr)
    else:
        for hit in result.hits:
            print(", ".join(field.format_element(c) for c in hit.row))
        print(summary)
    return 0


def _print_reports(reports, output: str, extra: dict | None = None) -> int:
    ok = all(reports)
    if output == "json":
        body = {"verdict": ok, "assertions": [r.to_json() for r in reports]}
        if extra:
            body.update(extra)
        print(dump(body))
    else:
        for r in reports:
            print(f"{'PASS' if r.verdict else 'FAIL'}  {r.property}")
        if extra and "certificate" in extra:
            print(f"certificate: {extra['certificate']}")
    if not ok:
        first = next(r for r in reports if not r.verdict)
        print(f"first failing assertion: {first.property}", file=sys.stderr)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    if args.suite == "paper-examples":
        if args.field is not None and GF2m.parse(args.field) != AES_FIELD:
            raise UsageError("paper-examples is pinned to gf(2^8)/0x11b")
        return _print_reports(verify_reference_examples(), args.output)
    if args.suite == "lemmas":
        field = _field(args, required=False) or AES_FIELD
        reports = suites.run_lemmas(field, args.trials, args.seed)
        reports += suites.gcd_obstruction_suite(GF2m(4, 0b10011), args.trials, args.seed)
        return _print_reports(reports, args.output)
    if args.suite == "equivalence":
        reports = suites.run_equivalence(_field(args, required=False), args.trials, args.seed)
        return _print_reports(reports, args.output)
    # nonexistence-2d
    field = _field(args)
    if args.d is None:
        raise UsageError("nonexistence-2d needs --d")
    gs = [int(g) for g in parse_list(args.g)] if args.g else None
    cert = verify_nonexistence_2d(field, args.d, gs, ceiling=args.ceiling, workers=args.workers)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"nonexistence-2d_gf2-{field.m}_{field.modulus:#x}_d{args.d}.json"
    path.write_text(dump(cert) + "\n")
    reports = [
        PropertyReport(f"no orthogonal MDS g-circulant, g={c['g']}, k={cert['k']}",
                       c["exhausted"] and not c["hits"] and all(o["holds"] for o in c["obstructions"]),
                       {"scanned": c["candidates_scanned"], "orthogonal": c["orthogonal_count"],
                        "hits": len(c["hits"])})
        for c in cert["campaigns"]
    ]
    return _print_reports(reports, args.output, {"certificate": str(path)})


def cmd_field_info(args) -> int:
    field = _field(args)
    info = {
        "field": str(field),
        "m": field.m,
        "modulus": f"{field.modulus:#x}",
        "modulus_poly": "+".join(
            ("1" if i == 0 else "x" if i == 1 else f"x^{i}")
            for i in range(field.m, -1, -1) if field.modulus >> i & 1
        ),
        "order": field.order,
        "irreducible": find_factor(field.modulus) is None,
    }
    if args.output == "json":
        print(dump(info))
    else:
        for key, value in info.items():
            print(f"{key}: {value}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclicmds", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    # -v is accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS,
                        help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build and print a structured matrix")
    p.add_argument("--field", help="gf(2^m)/0x<modulus>")
    _add_shape_flags(p)
    p.add_argument("--poly", action="store_true", help="print entries in polynomial notation")
    _add_output(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", parents=[common], help="check properties of a matrix")
    p.add_argument("--field")
    _add_shape_flags(p)
    p.add_argument("--matrix", help="matrix JSON file ('-' for stdin) instead of shape flags")
    p.add_argument("--properties", "-p", default="mds",
                   help=f"comma-separated subset of {','.join(PROPERTIES)}")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="vector budget for branch numbers")
    p.add_argument("--timing", action="store_true", help="add elapsed_ms to each report")
    _add_output(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", parents=[common], help="scan first rows for orthogonal/involutory/MDS matrices")
    p.add_argument("--field")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--shape", default="circulant",
                   help="circulant | left-circulant | g-circulant:<g> | cyclic:(<cycle>)")
    p.add_argument("--require", default="orthogonal,mds", help="comma-separated predicates")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="scan every first row (default)")
    mode.add_argument("--random", action="store_true", help="sample --trials rows from --seed")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--limit", type=int, help="record at most this many hits")
    p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    p.add_argument("--workers", type=int, default=1)
    _add_output(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--field")
    p.add_argument("--d", type=int)
    p.add_argument("--g", help="comma-separated g values (default: every odd g < 2^d)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="./certificates/", help="certificate directory")
    p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    p.add_argument("--workers", type=int, default=1)
    _add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("field-info", parents=[common], help="describe a field")
    p.add_argument("--field")
    _add_output(p)
    p.set_defaults(func=cmd_field_info)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(message)s")
    try:
        return args.func(args)
    except KeyError as exc:
        print(f"cyclicmds {args.command}: error: missing key {exc}", file=sys.stderr)
    except (CyclicMDSError, UsageError, OSError, TypeError) as exc:
        print(f"cyclicmds {args.command}: error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
