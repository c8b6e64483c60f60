"""Command line entry point.

Exit codes: 0 exact value found / verification passed, 1 usage or parse
error, 2 only an interval is known, 3 the set is not dominating.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import bounds, construct, solver
from .core import CycleProduct, InputError, is_dominating, read_set, write_set

EXIT_OK, EXIT_USAGE, EXIT_INTERVAL, EXIT_NOT_DOMINATING = 0, 1, 2, 3

TABLE_HEADER = ["m", "n", "m_mod3", "n_mod3", "case", "lower", "upper", "exact", "method", "ms"]


class UsageError(Exception):
    pass


def _instance(m: int, n: int) -> CycleProduct:
    try:
        return CycleProduct(m, n)
    except InputError as exc:
        raise UsageError(str(exc)) from None


def _budget(args) -> solver.SolverBudget:
    try:
        return solver.SolverBudget(
            max_profile_bits=args.budget_bits,
            max_bruteforce_cells=args.bruteforce_cells,
            time_limit=args.time_limit,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected a..b") from None
    if a < 2 or b < a:
        raise UsageError(f"bad range {text!r}: need 2 <= a <= b")
    return range(a, b + 1)


def _parse_word(text: str) -> list[int]:
    tokens = text.replace(",", " ").split()
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise UsageError(f"bad word {text!r}, expected letters +1 / -2") from None


def cmd_compute(args, out) -> int:
    inst = _instance(args.m, args.n)
    res = bounds.gamma(inst, _budget(args))
    tag = bounds.classify(inst)
    print(f"instance m={inst.m} n={inst.n} k1={inst.k1} k2={inst.k2}", file=out)
    print(f"case {tag.subcase} (m mod 3 = {tag.m_residue}, n mod 3 = {tag.n_residue})", file=out)
    print(f"lower {res.lower}", file=out)
    print(f"upper {res.upper}", file=out)
    if res.exact is not None:
        print(f"exact {res.exact} ({res.method})", file=out)
    else:
        print(f"interval [{res.lower}, {res.upper}] ({res.method})", file=out)
    if args.certificate:
        if res.certificate is None:
            print("no certificate available", file=out)
        else:
            Path(args.certificate).write_text(write_set(res.certificate))
            print(f"certificate written to {args.certificate}", file=out)
    return EXIT_OK if res.exact is not None else EXIT_INTERVAL


def cmd_verify(args, out) -> int:
    try:
        text = Path(args.path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc}") from None
    try:
        W = read_set(text)
    except InputError as exc:
        raise UsageError(f"{args.path}: {exc}") from None
    verdict = is_dominating(W)
    if verdict:
        print(f"dominating, size {len(W)}", file=out)
        return EXIT_OK
    k, i = verdict.witness
    print(f"not dominating, size {len(W)}; undominated vertex ({k}, {i})", file=out)
    return EXIT_NOT_DOMINATING


def cmd_construct(args, out) -> int:
    inst = _instance(args.m, args.n)
    try:
        if args.word is not None:
            W, desc = construct.build_from_word(inst, _parse_word(args.word))
            if not desc.closes():
                print("warning: word does not close, set may not dominate", file=sys.stderr)
        else:
            W = construct.minimum_dominating_set(inst)
    except InputError as exc:
        raise UsageError(str(exc)) from None
    if W is None:
        raise UsageError(f"no construction known for m={inst.m}, n={inst.n}")
    text = write_set(W)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK if is_dominating(W) else EXIT_NOT_DOMINATING


def cmd_bounds(args, out) -> int:
    inst = _instance(args.m, args.n)
    known = bounds.known_gamma(inst)
    print(f"lower {bounds.lower_bound(inst)}", file=out)
    print(f"upper {bounds.generic_upper_bound(inst)}", file=out)
    print(f"case {bounds.classify(inst).subcase}", file=out)
    if known is not None:
        print(f"known {known[0]} ({known[1]})", file=out)
    else:
        print("known none", file=out)
    return EXIT_OK


def _table_row(inst: CycleProduct, budget: solver.SolverBudget, timing: bool) -> list:
    t0 = time.perf_counter()
    res = bounds.gamma(inst, budget)
    ms = (time.perf_counter() - t0) * 1000
    tag = bounds.classify(inst)
    return [
        inst.m, inst.n, inst.m % 3, inst.n % 3, tag.subcase,
        res.lower, res.upper, "" if res.exact is None else res.exact, res.method.value,
        f"{ms:.1f}" if timing else "",
    ]


def cmd_table(args, out) -> int:
    if args.format != "csv":
        raise UsageError(f"unsupported format {args.format!r}")
    budget = _budget(args)
    cells = [_instance(m, n) for m in _parse_range(args.m_range) for n in _parse_range(args.n_range)]
    with ThreadPoolExecutor(max(1, args.jobs)) as pool:
        rows = list(pool.map(lambda inst: _table_row(inst, budget, args.timing), cells))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_HEADER)
    writer.writerows(rows)
    out.write(buf.getvalue())
    return EXIT_OK


def conjecture_rows(k_max: int, budget: solver.SolverBudget | None = None, use_dp: bool = True) -> list[dict]:
    """Compare k(n+1) against the C4 formula on C_{3k} x C_4 for k = 2..k_max."""
    rows = []
    for k in range(2, k_max + 1):
        m, n = 3 * k, 4
        row = {"k": k, "m": m, "n": n, "conjectured": k * (n + 1), "actual": bounds.theorem4_value(m), "dp": None}
        if use_dp:
            try:
                row["dp"] = solver.gamma_dp(CycleProduct(m, n), budget)
            except solver.BudgetError:
                pass
        row["counterexample"] = row["conjectured"] != row["actual"]
        rows.append(row)
    return rows


def cmd_conjecture(args, out) -> int:
    if args.k_max < 2:
        raise UsageError("--k-max must be >= 2")
    rows = conjecture_rows(args.k_max, _budget(args), use_dp=not args.no_dp)
    first = None
    for r in rows:
        dp = "-" if r["dp"] is None else r["dp"]
        verdict = "COUNTEREXAMPLE" if r["counterexample"] else "agree"
        print(f"k={r['k']} m={r['m']} n={r['n']} conjectured={r['conjectured']} actual={r['actual']} dp={dp} {verdict}", file=out)
        if r["dp"] is not None and r["dp"] != r["actual"]:
            print(f"error: dp value {r['dp']} disagrees with formula {r['actual']}", file=out)
            return EXIT_NOT_DOMINATING
        if r["counterexample"] and first is None:
            first = r
    if first is None:
        print(f"no counterexample for k <= {args.k_max}", file=out)
    else:
        print(f"first counterexample: k={first['k']} (conjectured {first['conjectured']}, actual {first['actual']})", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cycledom", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("--budget-bits", type=int, default=14, help="max profile width for the transfer-matrix solver")
        p.add_argument("--bruteforce-cells", type=int, default=20, help="max m*n for exhaustive search")
        p.add_argument("--time-limit", type=float, default=None, help="solver time limit in seconds")

    p = sub.add_parser("compute", help="domination number or best interval")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--certificate", metavar="PATH", help="write a domset v1 certificate")
    solver_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="check a domset v1 file")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="emit a minimum dominating set (m or n = 2 mod 3)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--word", help="step word, e.g. '1,1,-2'; requires m = 2 mod 3")
    p.add_argument("-o", "--output", metavar="PATH")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bounds", help="lower/upper bounds and case tag")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="CSV sweep over ranges of m and n")
    p.add_argument("--m-range", required=True, metavar="A..B")
    p.add_argument("--n-range", required=True, metavar="C..D")
    p.add_argument("--format", default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="fill the ms column (output no longer byte-stable)")
    solver_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("conjecture", help="check k(n+1) on C_{3k} x C_4")
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--no-dp", action="store_true")
    solver_flags(p)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
