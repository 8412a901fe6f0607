"""Command-line surface: orders, check, klein, scan, verify.

All reports are JSON on stdout with sorted keys, so identical arguments,
seed, and budgets give byte-identical output.  Exit codes: 0 success,
1 hypothesis violation, 2 budget exhaustion (partial results emitted),
3 verification-suite failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Optional, Sequence

from . import ambient
from .ambient import WeightedFamily, mm_hypothesis
from .arith import as_prime_power, gcd_all
from .checks import CHECK_NAMES, run_checks
from .cycles import CYCLE_BUDGET, simple_cycles
from .errors import BudgetExceeded, HypothesisViolated, WpsautoError
from .orders import (
    ORACLE_CLASS_BUDGET,
    OrderVerdict,
    _cycle_qualifies,
    _family_tables,
    _verdict_for,
    admissible_orders,
    bound_coprime,
    bound_divides_d,
    chain_digraph,
    chain_from_cycle,
    necessary_condition,
    signature_from_chain,
)
from .quasismooth import random_member, singular_point_search
from .report import base_report, bounds_section, dumps, family_flags, klein_section, verdict_json

EXIT_OK = 0
EXIT_HYPOTHESIS = 1
EXIT_BUDGET = 2
EXIT_VERIFY = 3
EXIT_USAGE = 64

FALSIFIER_PRIMES = (101, 499, 997)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        raise _UsageError(message)


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise _UsageError(f"bad weight list {text!r}: {exc}") from exc


def _parse_degree_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    value = int(text)
    return value, value


def _default_max_order(fam: WeightedFamily, explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    if all(fam.degree % w == 0 for w in fam.weights):
        return int(bound_divides_d(fam).bound)
    if all(math.gcd(w, fam.degree) == 1 for w in fam.weights) and fam.degree > max(fam.weights):
        return max(fam.degree, math.ceil(bound_coprime(fam).bound))
    raise _UsageError(
        "no intrinsic bound applies to this family; pass --max-order explicitly"
    )


def _exit_code_for(verdicts: Sequence[OrderVerdict]) -> int:
    if any(v.status == "hypothesis-violated" for v in verdicts):
        return EXIT_HYPOTHESIS
    if any(v.status == "unresolved" for v in verdicts):
        return EXIT_BUDGET
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="wpsauto", description=__doc__)
    parser.add_argument(
        "--seed",
        type=int,
        default=int(os.environ.get("WPSAUTO_SEED", "0")),
        help="seed for all randomized steps (default: WPSAUTO_SEED or 0)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def family_args(p: _Parser) -> None:
        p.add_argument("--weights", required=True, help="comma-separated positive integers")
        p.add_argument("--degree", required=True, type=int)

    def budget_args(p: _Parser) -> None:
        p.add_argument("--oracle-budget", type=int, default=ORACLE_CLASS_BUDGET)
        p.add_argument("--cycle-budget", type=int, default=CYCLE_BUDGET)
        p.add_argument(
            "--monomial-budget",
            type=int,
            default=None,
            help="cap on enumerated monomials per family (process-wide)",
        )

    p_orders = sub.add_parser("orders", help="sweep all prime powers up to a bound")
    family_args(p_orders)
    budget_args(p_orders)
    p_orders.add_argument("--max-order", type=int, default=None)
    p_orders.add_argument("--timings", action="store_true", help="include wall-clock timings")

    p_check = sub.add_parser("check", help="deep report for a single order")
    family_args(p_check)
    budget_args(p_check)
    p_check.add_argument("--order", required=True, type=int)
    p_check.add_argument("--explain", action="store_true", help="off-chain constraint analysis")
    p_check.add_argument("--all", action="store_true", help="list every qualifying chain")
    p_check.add_argument("--falsifier-budget", type=int, default=20_000)

    p_klein = sub.add_parser("klein", help="cyclic hypersurface analysis")
    family_args(p_klein)

    p_scan = sub.add_parser("scan", help="batch sweep over families, JSON lines out")
    p_scan.add_argument("--dim", required=True, type=int, help="hypersurface dimension n")
    p_scan.add_argument("--max-weight", required=True, type=int)
    p_scan.add_argument("--max-degree", type=int, default=None)
    p_scan.add_argument("--degree", type=str, default=None, help="LO..HI or a single value")
    p_scan.add_argument("--max-order", type=int, default=None)
    p_scan.add_argument("--divides-d", action="store_true", help="only families with all a_i | d")
    p_scan.add_argument("--coprime", action="store_true", help="only families with gcd(a_i, d) = 1")
    p_scan.add_argument("--out", type=str, default=None)
    p_scan.add_argument("--resume", action="store_true")
    p_scan.add_argument("--workers", type=int, default=1)
    budget_args(p_scan)

    p_verify = sub.add_parser("verify", help="run the built-in verification suite")
    p_verify.add_argument("--list", action="store_true", dest="list_checks")
    p_verify.add_argument("--inject-failure", type=str, default=None, metavar="NAME")

    return parser


def _cmd_orders(args) -> int:
    fam = WeightedFamily(_parse_weights(args.weights), args.degree)
    started = time.monotonic()
    max_order = _default_max_order(fam, args.max_order)
    results = admissible_orders(fam, max_order, args.oracle_budget, args.cycle_budget)
    report = base_report(fam, args.seed)
    report["max_order"] = max_order
    report["bounds"] = bounds_section(fam)
    report["klein"] = klein_section(fam)
    report["verdicts"] = [verdict_json(v) for _, v in results]
    if args.timings:
        report["timings"] = {"total_s": round(time.monotonic() - started, 3)}
    print(dumps(report))
    return _exit_code_for([v for _, v in results])


def _explain_offchain(fam: WeightedFamily, q: int, chain) -> dict:
    """Anchor-monomial congruences for variables the chain leaves free.

    With the chain signature normalized (first entry 1, invariance target 0),
    each pure-power or near-power monomial of an off-chain variable imposes a
    linear congruence on its residue; the per-monomial solution sets expose
    contradictions directly.
    """
    sig = signature_from_chain(fam, chain, q).sigma
    tables = _family_tables(fam)
    on_chain = set(chain.indices)
    entries = []
    for v in range(fam.nvars):
        if v in on_chain:
            continue
        anchors = []
        for row, var in zip(tables.anchor_rows, tables.anchor_vars):
            if var != v:
                continue
            mono = tables.system.monomials[int(row)]
            other_off = [
                u
                for u, e in enumerate(mono)
                if e > 0 and u != v and sig[u] is None
            ]
            if other_off:
                anchors.append(
                    {"monomial": list(mono), "solutions": None, "couples": other_off}
                )
                continue
            const = sum(sig[u] * e for u, e in enumerate(mono) if e > 0 and u != v)
            k = mono[v]
            sols = [s for s in range(q) if (k * s + const) % q == 0]
            anchors.append({"monomial": list(mono), "solutions": sols, "couples": []})
        entries.append({"variable": v, "anchors": anchors})
    return {"offchain": entries}


def _cmd_check(args) -> int:
    fam = WeightedFamily(_parse_weights(args.weights), args.degree)
    pp = as_prime_power(args.order)
    mm_ok = mm_hypothesis(fam)
    divides = mm_ok and all(fam.degree % w == 0 for w in fam.weights)
    div_bound = bound_divides_d(fam).bound if divides else None
    coprime = mm_ok and all(math.gcd(w, fam.degree) == 1 for w in fam.weights)
    cop_bound = (
        Fraction(bound_coprime(fam).bound)
        if coprime and fam.degree > max(fam.weights)
        else None
    )
    verdict = _verdict_for(
        fam, pp, divides, div_bound, cop_bound, args.oracle_budget, args.cycle_budget
    )
    report = base_report(fam, args.seed)
    report["bounds"] = bounds_section(fam)
    report["verdicts"] = [verdict_json(verdict)]
    if args.explain or args.all:
        try:
            chain = necessary_condition(fam, pp, args.cycle_budget)
        except (HypothesisViolated, BudgetExceeded):
            chain = None
        if chain is not None and args.explain:
            report["explain"] = _explain_offchain(fam, pp.q, chain)
        if args.all:
            report["all_chains"] = _all_qualifying_chains(fam, pp, args.cycle_budget)
    if verdict.status == "certified":
        member = random_member(verdict.witness_system, args.seed)
        summary = []
        for prime in FALSIFIER_PRIMES:
            result = singular_point_search(member, prime, args.falsifier_budget, args.seed)
            summary.append(
                {
                    "prime": prime,
                    "witness": list(result.witness) if result.witness else None,
                    "tested": result.tested,
                    "mode": result.mode,
                }
            )
        report["falsifier"] = summary
    print(dumps(report))
    return _exit_code_for([verdict])


def _all_qualifying_chains(fam: WeightedFamily, pp, budget: int) -> list[dict]:
    try:
        adj = chain_digraph(fam, pp)
    except HypothesisViolated:
        return []
    out = []
    for cyc in simple_cycles({i: sorted(t) for i, t in adj.items()}, 2, fam.nvars, budget):
        chain = chain_from_cycle(fam, cyc)
        if _cycle_qualifies(chain, pp.q):
            out.append({"indices": list(chain.indices), "exponents": list(chain.exponents)})
    return out


def _cmd_klein(args) -> int:
    fam = WeightedFamily(_parse_weights(args.weights), args.degree)
    report = base_report(fam, args.seed)
    report["klein"] = klein_section(fam)
    print(dumps(report))
    return EXIT_OK


def _scan_families(args) -> list[WeightedFamily]:
    nvars = args.dim + 2
    if args.degree is not None:
        lo, hi = _parse_degree_range(args.degree)
    elif args.max_degree is not None:
        lo, hi = 1, args.max_degree
    else:
        raise _UsageError("scan needs --max-degree or --degree")
    fams = []
    for weights in combinations_with_replacement(range(1, args.max_weight + 1), nvars):
        if gcd_all(weights) != 1:
            continue
        for degree in range(lo, hi + 1):
            if args.divides_d and any(degree % w != 0 for w in weights):
                continue
            if args.coprime and any(math.gcd(w, degree) != 1 for w in weights):
                continue
            fams.append(WeightedFamily(weights, degree))
    fams.sort(key=lambda f: (f.n, f.weights, f.degree))
    return fams


def _scan_record(payload) -> str:
    fam, seed, max_order, oracle_budget, cycle_budget = payload
    report = base_report(fam, seed)
    report["flags"] = family_flags(fam)
    report["bounds"] = bounds_section(fam)
    report["klein"] = klein_section(fam)
    try:
        effective_max = max_order if max_order is not None else _default_max_order(fam, None)
        results = admissible_orders(fam, effective_max, oracle_budget, cycle_budget)
        report["max_order"] = effective_max
        report["verdicts"] = [verdict_json(v) for _, v in results]
    except (WpsautoError, _UsageError) as exc:
        report["error"] = str(exc)
        report["verdicts"] = []
    return dumps(report)


def _family_key(fam: WeightedFamily) -> list:
    return [fam.n, list(fam.weights), fam.degree]


def _cmd_scan(args) -> int:
    fams = _scan_families(args)
    payloads = [
        (fam, args.seed, args.max_order, args.oracle_budget, args.cycle_budget)
        for fam in fams
    ]
    out_path = Path(args.out) if args.out else None
    cursor_path = out_path.with_suffix(out_path.suffix + ".cursor") if out_path else None

    done_key = None
    kept_lines: list[str] = []
    if out_path and args.resume and cursor_path and cursor_path.exists():
        done_key = json.loads(cursor_path.read_text())["key"]
        if out_path.exists():
            for line in out_path.read_text().splitlines():
                try:
                    record = json.loads(line)
                except json.JSONDecodeError:
                    break  # torn tail line from an interrupted run
                key = [len(record["weights"]) - 2, record["weights"], record["degree"]]
                kept_lines.append(line)
                if key == done_key:
                    break

    def keys_not_done(payload):
        if done_key is None:
            return True
        return _family_key(payload[0]) > done_key

    pending = [p for p in payloads if keys_not_done(p)]

    def emit(handle, line: str, fam: WeightedFamily) -> None:
        handle.write(line + "\n")
        handle.flush()
        if cursor_path is not None:
            tmp = Path(str(cursor_path) + ".tmp")
            tmp.write_text(json.dumps({"key": _family_key(fam)}))
            tmp.replace(cursor_path)

    budget_hit = False

    def consume(handle, lines) -> None:
        nonlocal budget_hit
        for payload, line in zip(pending, lines):
            if '"unresolved"' in line:
                budget_hit = True
            emit(handle, line, payload[0])

    if out_path is None:
        for payload in pending:
            line = _scan_record(payload)
            if '"unresolved"' in line:
                budget_hit = True
            sys.stdout.write(line + "\n")
        return EXIT_BUDGET if budget_hit else EXIT_OK

    mode = "w"
    if args.resume and kept_lines:
        tmp_out = out_path.with_suffix(out_path.suffix + ".tmp")
        tmp_out.write_text("".join(line + "\n" for line in kept_lines))
        tmp_out.replace(out_path)
        mode = "a"

    with out_path.open(mode) as handle:
        if args.workers > 1:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                consume(handle, pool.map(_scan_record, pending, chunksize=4))
        else:
            consume(handle, map(_scan_record, pending))
    return EXIT_BUDGET if budget_hit else EXIT_OK


def _cmd_verify(args) -> int:
    if args.list_checks:
        for name in CHECK_NAMES:
            print(name)
        return EXIT_OK
    if args.inject_failure is not None and args.inject_failure not in CHECK_NAMES:
        raise _UsageError(f"unknown check {args.inject_failure!r}")
    results = run_checks(args.inject_failure)
    failed = 0
    for res in results:
        if res.passed:
            print(f"PASS {res.name}")
        else:
            failed += 1
            print(f"FAIL {res.name}")
            print(f"  expected: {res.expected}")
            print(f"  actual:   {res.actual}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "monomial_budget", None):
            ambient.MONOMIAL_BUDGET = args.monomial_budget
        handlers = {
            "orders": _cmd_orders,
            "check": _cmd_check,
            "klein": _cmd_klein,
            "scan": _cmd_scan,
            "verify": _cmd_verify,
        }
        return handlers[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (WpsautoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
