"""Command line interface: find, verify, table, emit, audit.

Exit codes: 0 success, 1 bad input or a failed check, 2 no constants
within the width budget, 3 exhaustive budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import report
from .audit import ROWS, iff_cell, run_sweep, tightness_cell
from .bounds import Capability, DivisionSpec, Scheme, Source, admits, legacy_interval, optimal_interval
from .errors import CapabilityError, DomainError, SearchExhausted
from .finder import (
    MMode,
    MagicConstants,
    Prefer,
    SearchConstraints,
    choose_scheme,
    find_constants,
    smallest_any_m,
    smallest_pow2_m,
)
from .oracle import DEFAULT_BUDGET, Kind, legacy_gap_report, verify_pair
from .snippets import Dialect, Operation, SnippetRequest, needs_remainder, render, rounding_offset

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NO_SOLUTION = 2
EXIT_BUDGET = 3

SCHEMES = {"shift": Scheme.MULTIPLY_SHIFT, "add": Scheme.MULTIPLY_ADD_SHIFT}
CAPABILITIES = {"quotient": Capability.QUOTIENT, "remainder": Capability.QUOTIENT_AND_REMAINDER}
LEGACY = {
    "gm": Source.GRANLUND_MONTGOMERY,
    "granlund-montgomery": Source.GRANLUND_MONTGOMERY,
    "robison": Source.ROBISON,
    "lemire2019": Source.LEMIRE2019,
}
# Which table row each legacy bound competes with.
LEGACY_FOR_ROW = {
    "quotient": Source.GRANLUND_MONTGOMERY,
    "quotient, multiply-add": Source.ROBISON,
    "quotient+remainder": Source.LEMIRE2019,
    "divisibility": Source.LEMIRE2019,
}


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_FAIL) -> None:
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAIL, f"{self.prog}: error: {message}\n")


def budget() -> int:
    raw = os.environ.get("DIVMAGIC_BUDGET")
    if not raw:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"DIVMAGIC_BUDGET must be an integer, got {raw!r}")


def _spec(args) -> DivisionSpec:
    if args.d is not None and args.d <= 0:
        raise CliError("divisor must be positive")
    if (args.N is None) == (args.bits is None):
        raise CliError("give exactly one of --N and --bits")
    n = args.N if args.N is not None else (1 << args.bits) - 1
    if args.bits is not None and args.bits <= 0:
        raise CliError("--bits must be positive")
    if n < args.d:
        raise CliError(
            f"N={n} is smaller than d={args.d}; the optimal bounds require N >= d"
        )
    return DivisionSpec(args.d, n)


def _add_spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, required=True, help="constant divisor")
    p.add_argument("--N", type=int, help="largest numerator")
    p.add_argument("--bits", type=int, help="numerator width w, sets N = 2**w - 1")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")


def _iv_text(iv) -> str:
    raw, red = iv.describe(), iv.describe(reduce=True)
    return raw if raw == red else f"{raw} = {red}"


def _pair(mc: MagicConstants | None) -> str:
    if mc is None:
        return "none"
    return f"c={mc.c} m={mc.m}"


def cmd_find(args) -> int:
    spec = _spec(args)
    capability = CAPABILITIES[args.capability]
    constraints = SearchConstraints(MMode(args.m), args.max_bits, Prefer(args.prefer))
    try:
        if args.scheme == "best":
            mc = choose_scheme(spec, capability, constraints)
        else:
            mc = find_constants(spec, SCHEMES[args.scheme], capability, constraints)
    except SearchExhausted as e:
        raise CliError(str(e), EXIT_NO_SOLUTION)
    iv = mc.interval
    if args.format == "json":
        print(report.dumps(report.envelope("find", spec, [report.constants_to_json(mc)])))
    elif args.format == "csv":
        lo, hi = iv.lower.reduced(), iv.upper.reduced()
        print(report.to_csv(
            ["d", "N", "scheme", "capability", "c", "m", "shift", "lower_num", "lower_den",
             "upper_num", "upper_den", "product_bits"],
            [[spec.d, spec.N, mc.scheme.value, mc.capability.value, mc.c, mc.m,
              "" if mc.shift is None else mc.shift, lo.num, lo.den, hi.num, hi.den, mc.product_bits]],
        ), end="")
    else:
        shift = f" (shift {mc.shift})" if mc.shift is not None else ""
        print(f"d={spec.d} N={spec.N} {mc.capability.value} via {mc.scheme.value}")
        print(f"  c = {mc.c}")
        print(f"  m = {mc.m}{shift}")
        print(f"  c/m in {_iv_text(iv)}")
        print(f"  widest product c*N + c needs {mc.product_bits} bits")
    return EXIT_OK


def _verify_kinds(kind: str) -> tuple[Kind, ...]:
    if kind == "quotient":
        return (Kind.QUOTIENT,)
    if kind == "remainder":
        return (Kind.QUOTIENT, Kind.REMAINDER, Kind.DIVISIBILITY)
    return (Kind.DIVISIBILITY,)


def cmd_verify(args) -> int:
    spec = _spec(args)
    if args.m <= 0:
        raise CliError("m must be positive")
    if args.c < 0:
        raise CliError("c must be non-negative")
    limit = budget()
    if spec.N + 1 > limit:
        raise CliError(
            f"N={spec.N} needs {spec.N + 1} checks, over the budget of {limit}; "
            "raise DIVMAGIC_BUDGET or verify a sampled range instead",
            EXIT_BUDGET,
        )
    scheme = SCHEMES[args.scheme]
    rep = verify_pair(args.c, args.m, spec.d, spec.N, scheme, _verify_kinds(args.kind), limit)
    if args.format == "json":
        body = report.verification_to_json(rep)
        body.update(c=str(args.c), m=str(args.m), scheme=scheme.value, kind=args.kind)
        print(report.dumps(report.envelope("verify", spec, [body])))
    elif args.format == "csv":
        cx = rep.counterexample
        print(report.to_csv(
            ["d", "N", "c", "m", "scheme", "kind", "passed", "checked", "n", "expected", "actual", "failed_kind"],
            [[spec.d, spec.N, args.c, args.m, scheme.value, args.kind, rep.passed, rep.checked_count,
              *(("", "", "", "") if cx is None else (cx.n, cx.expected, cx.actual, cx.kind.value))]],
        ), end="")
    else:
        if rep.passed:
            print(f"pass: c={args.c} m={args.m} {args.kind} correct for all {rep.checked_count} numerators in [0, {spec.N}]")
        else:
            cx = rep.counterexample
            print(f"fail at n={cx.n}: {cx.kind.value} expected {cx.expected}, got {cx.actual}")
        for note in rep.notes:
            print(f"note: {note}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _search(iv, spec, mode):
    try:
        if mode is MMode.POWER_OF_TWO:
            return smallest_pow2_m(iv, spec, SearchConstraints(mode))
        return smallest_any_m(iv, spec, SearchConstraints(mode))
    except SearchExhausted:
        return None


def table_rows(spec: DivisionSpec) -> list[dict]:
    rows = []
    for row in ROWS:
        iv = optimal_interval(spec, row.scheme, row.capability)
        pow2 = _search(iv, spec, MMode.POWER_OF_TWO)
        anym = _search(iv, spec, MMode.ANY_INTEGER)
        legacy = None
        source = LEGACY_FOR_ROW.get(row.name)
        if source is not None:
            old = legacy_interval(spec, source)
            legacy = {
                "source": source,
                "interval": old,
                "pow2_admitted": None if pow2 is None else admits(old, pow2.c, pow2.m),
                "any_admitted": None if anym is None else admits(old, anym.c, anym.m),
            }
        rows.append({"row": row, "interval": iv, "pow2": pow2, "any": anym, "legacy": legacy})
    return rows


def _legacy_text(entry) -> str:
    leg = entry["legacy"]
    if leg is None:
        return "no earlier bound"
    verdict = lambda ok: "admits" if ok else "rejects"
    parts = [f"{leg['source'].value} {leg['interval'].describe(reduce=True)}"]
    if entry["pow2"] is not None:
        parts.append(f"{verdict(leg['pow2_admitted'])} {entry['pow2'].c}/{entry['pow2'].m}")
    if entry["any"] is not None:
        parts.append(f"{verdict(leg['any_admitted'])} {entry['any'].c}/{entry['any'].m}")
    return "; ".join(parts)


def cmd_table(args) -> int:
    spec = _spec(args)
    rows = table_rows(spec)
    if args.format == "json":
        results = []
        for e in rows:
            leg = e["legacy"]
            results.append({
                "row": e["row"].name,
                "interval": report.interval_to_json(e["interval"]),
                "pow2": None if e["pow2"] is None else report.constants_to_json(e["pow2"]),
                "any": None if e["any"] is None else report.constants_to_json(e["any"]),
                "legacy": None if leg is None else {
                    "interval": report.interval_to_json(leg["interval"]),
                    "pow2_admitted": leg["pow2_admitted"],
                    "any_admitted": leg["any_admitted"],
                },
            })
        print(report.dumps(report.envelope("table", spec, results)))
        return EXIT_OK
    header = ["row", "condition", "pow2", "any_m", "legacy"]
    lines = [[e["row"].name, e["interval"].describe(reduce=True), _pair(e["pow2"]), _pair(e["any"]), _legacy_text(e)]
             for e in rows]
    if args.format == "csv":
        print(report.to_csv(header, lines), end="")
        return EXIT_OK
    print(f"d={spec.d} N={spec.N}")
    widths = [max(len(str(x)) for x in col) for col in zip(header, *lines)]
    for line in [header] + lines:
        print("  ".join(str(x).ljust(w) for x, w in zip(line, widths)).rstrip())
    return EXIT_OK


def cmd_emit(args) -> int:
    op = Operation(args.op)
    dialect = Dialect(args.dialect)
    spec = _spec(args)
    # Rounding divides n + d//2, so the constants must cover that much more.
    cover = DivisionSpec(spec.d, spec.N + rounding_offset(op, spec.d))
    scheme = SCHEMES[args.scheme]
    if args.capability is None:
        capability = Capability.QUOTIENT_AND_REMAINDER if needs_remainder(op, spec.d) else Capability.QUOTIENT
    else:
        capability = CAPABILITIES[args.capability]
    if (args.c is None) != (args.m is None):
        raise CliError("give both --c and --m, or neither")
    try:
        if args.c is None:
            mc = find_constants(cover, scheme, capability, SearchConstraints(MMode(args.mode)))
        else:
            mc = MagicConstants(args.c, args.m, scheme, capability, cover)
            if not mc.is_admitted():
                raise CliError(f"c={args.c} m={args.m} is outside {mc.interval}")
        text = render(SnippetRequest(mc, op, dialect))
    except SearchExhausted as e:
        raise CliError(str(e), EXIT_NO_SOLUTION)
    except (CapabilityError, DomainError) as e:
        raise CliError(str(e))
    sys.stdout.write(text)
    return EXIT_OK


def _parse_range(text: str) -> range:
    if ".." in text:
        a, b = text.split("..", 1)
        return range(int(a), int(b) + 1)
    return range(int(text), int(text) + 1)


def _fixed_bounds(values):
    return lambda d: values


def cmd_audit(args) -> int:
    ds = _parse_range(args.d)
    if ds.start <= 0:
        raise CliError("divisor must be positive")
    n_rule = None
    if args.N:
        values = [int(x) for x in args.N.split(",")]
        n_rule = _fixed_bounds(values)
    if args.legacy:
        return _audit_legacy(args, ds, n_rule)
    kwargs = {} if n_rule is None else {"n_rule": n_rule}
    cells = run_sweep(iff_cell, ds, jobs=args.jobs, m_max=args.m_max, **kwargs)
    violations = [v for cell in cells for v in cell.violations]
    inconclusive = []
    if not args.no_tightness:
        for reps in run_sweep(tightness_cell, ds, jobs=args.jobs, **kwargs):
            for rep in reps:
                inconclusive += [(rep.interval, e) for e in rep.inconclusive]
    pairs = sum(c.pairs for c in cells)
    zero_edge = sum(c.zero_edge for c in cells)
    ok = not violations and not inconclusive
    if args.format == "json":
        print(report.dumps(report.envelope("audit", None, [{
            "cells": str(len(cells)),
            "pairs_per_row": str(pairs),
            "violations": [
                {"d": str(v.d), "N": str(v.N), "m": str(v.m), "c": str(v.c), "row": v.row, "detail": v.detail}
                for v in violations
            ],
            "inconclusive_endpoints": str(len(inconclusive)),
            "zero_edge_pairs": str(zero_edge),
            "passed": ok,
        }])))
    elif args.format == "csv":
        print(report.to_csv(["d", "N", "m", "c", "row", "detail"],
                            [[v.d, v.N, v.m, v.c, v.row, v.detail] for v in violations]), end="")
    else:
        print(f"cells: {len(cells)}  pairs per row: {pairs}  m <= {args.m_max}")
        print(f"violations: {len(violations)}")
        for v in violations[:50]:
            print(f"  d={v.d} N={v.N} c={v.c} m={v.m} {v.row}: {v.detail}")
        if not args.no_tightness:
            print(f"inconclusive tightness endpoints: {len(inconclusive)}")
        print(f"multiply-add divisibility pairs hitting the n=0 edge (expected, handled): {zero_edge}")
    return EXIT_OK if ok else EXIT_FAIL


def _audit_legacy(args, ds, n_rule) -> int:
    source = LEGACY[args.legacy]
    from .audit import _cells, default_numerator_bounds

    results = []
    for d, n in _cells(ds, n_rule or default_numerator_bounds):
        (gap,) = legacy_gap_report(DivisionSpec(d, n), min(args.m_max, 4096), (source,))
        results.append((DivisionSpec(d, n), gap))
    ok = all(g.all_verified for _, g in results)
    if args.format == "json":
        print(report.dumps(report.envelope("audit", None, [{
            "spec": report.spec_to_json(spec),
            "source": gap.source.value,
            "optimal": report.interval_to_json(gap.optimal),
            "legacy": report.interval_to_json(gap.legacy),
            "admitted_by_optimal_only": [{"c": str(c), "m": str(m)} for c, m in gap.admitted_by_optimal_only],
            "all_verified": gap.all_verified,
        } for spec, gap in results])))
    elif args.format == "csv":
        print(report.to_csv(["d", "N", "source", "c", "m"],
                            [[s.d, s.N, g.source.value, c, m] for s, g in results
                             for c, m in g.admitted_by_optimal_only]), end="")
    else:
        for spec, gap in results:
            pairs = ", ".join(f"({c}, {m})" for c, m in gap.admitted_by_optimal_only) or "none"
            print(f"d={spec.d} N={spec.N} optimal {gap.optimal.describe(reduce=True)} "
                  f"vs {gap.source.value} {gap.legacy.describe(reduce=True)}")
            print(f"  admitted only by the optimal bound (m <= {args.m_max}): {pairs}")
            print(f"  all verified exhaustively: {'yes' if gap.all_verified else 'NO'}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="divmagic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("find", help="compute optimal constants")
    _add_spec_args(p)
    p.add_argument("--scheme", choices=("shift", "add", "best"), default="shift")
    p.add_argument("--capability", choices=tuple(CAPABILITIES), default="quotient")
    p.add_argument("--m", choices=("pow2", "any"), default="pow2")
    p.add_argument("--prefer", choices=("m", "c"), default="m")
    p.add_argument("--max-bits", type=int, default=None, help="width budget for c*N + c")
    _add_format(p)
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("verify", help="exhaustively check a pair (c, m)")
    _add_spec_args(p)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--scheme", choices=tuple(SCHEMES), default="shift")
    p.add_argument("--kind", choices=("quotient", "remainder", "divisibility"), default="quotient")
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="all six conditions for one (d, N)")
    _add_spec_args(p)
    _add_format(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("emit", help="print a C or pseudo-code snippet")
    _add_spec_args(p)
    p.add_argument("--op", choices=[o.value for o in Operation], default="quotient")
    p.add_argument("--dialect", choices=[x.value for x in Dialect], default="c")
    p.add_argument("--scheme", choices=tuple(SCHEMES), default="shift")
    p.add_argument("--capability", choices=tuple(CAPABILITIES), default=None)
    p.add_argument("--mode", choices=("pow2", "any"), default="pow2")
    p.add_argument("--c", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("audit", help="brute-force sweep of every bound")
    p.add_argument("--d", default="2..32", help="divisor range a..b")
    p.add_argument("--N", default=None, help="comma-separated N values (default d, d+1, 2d+1, 3d-1)")
    p.add_argument("--m-max", type=int, default=512)
    p.add_argument("--legacy", choices=tuple(LEGACY), default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-tightness", action="store_true")
    _add_format(p)
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_FAIL
    try:
        return args.func(args)
    except CliError as e:
        print(f"divmagic: {e}", file=sys.stderr)
        return e.code
    except DomainError as e:
        print(f"divmagic: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
