"""Command-line front end.

Exit codes: 0 when every executed case passes, 1 on any failure or
non-convergence, 2 on usage errors, unknown ids or bad parameters.

Examples
--------
    multisection list
    multisection verify --id E9.h1a --format json
    multisection verify --id E1.sinh-product --param x=0.5 --param q=2
    multisection verify-all --filter D,E9
    multisection sweep --id A2.q-case --param q=-1,0,0.5,1,2
    multisection census --base 2 --limit 16 --set D
    multisection structural --base 3 --limit 10000
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import Optional, Sequence

from . import catalog
from . import index_algebra as ia
from .engine import DEFAULT_POLICY, TruncationPolicy

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _add_common(p, *, case=False, tol=False, caps=False, fmt=True):
    if case:
        p.add_argument("--id", required=True, help="identity case id, e.g. E9.h1a")
        p.add_argument("--param", action="append", default=[], metavar="K=V",
                       help="parameter override; repeatable")
    if tol:
        p.add_argument("--tol", type=float, help="relative tolerance (overrides the case default)")
    if caps:
        p.add_argument("--max-j", type=int, dest="max_j", help="cap on the level index j")
        p.add_argument("--max-n", type=int, dest="max_n", help="cap on the inner index n")
    if fmt:
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", help="write the report to this file instead of stdout")
        p.add_argument("--timing", action="store_true",
                       help="include wall times (output is then not reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multisection",
                     description="Verify multisection identities over b-adic valuation classes.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("list", help="list registered identity cases")
    p.add_argument("--filter", help="family prefixes, comma separated (e.g. D,E9)")
    p.add_argument("--include-controls", action="store_true")
    _add_common(p)

    p = sub.add_parser("verify", help="verify one case")
    _add_common(p, case=True, tol=True, caps=True)

    p = sub.add_parser("verify-all", help="verify every case (or a filtered family)")
    p.add_argument("--filter", help="family prefixes, comma separated (e.g. D,E9)")
    p.add_argument("--include-controls", action="store_true",
                   help="also run the negative controls (which are expected to fail)")
    p.add_argument("--workers", type=int, default=1)
    _add_common(p, tol=True, caps=True)

    p = sub.add_parser("sweep", help="verify one case over a parameter grid")
    p.add_argument("--id", required=True)
    p.add_argument("--param", action="append", default=[], metavar="K=V1,V2,...",
                   help="grid axis; repeatable; the grid is the Cartesian product")
    _add_common(p, tol=True, caps=True)

    p = sub.add_parser("census", help="multiplicities of the index multisets C_b, D_b, E_b")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--set", choices=("C", "D", "E"), dest="which",
                   help="print this multiset; without it, check C_b = N and D_b = E_b")
    _add_common(p)

    p = sub.add_parser("structural", help="exact structural check of the catalog weight schemes")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--limit", type=int, default=10_000)
    p.add_argument("--scheme", action="append", default=[],
                   help="scheme name (repeatable); default: all")
    _add_common(p)
    return parser


# -- helpers ------------------------------------------------------------------------

def _parse_params(items: Sequence[str], multi: bool = False) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects K=V, got {item!r}")
        if key in out:
            raise UsageError(f"parameter {key!r} given twice")
        out[key] = [v for v in value.split(",")] if multi else value
        if multi and not all(out[key]):
            raise UsageError(f"empty value in --param {item!r}")
    return out


def _policy(args) -> TruncationPolicy:
    policy = DEFAULT_POLICY
    try:
        if getattr(args, "max_j", None) is not None:
            policy = replace(policy, j_max_cap=args.max_j)
        if getattr(args, "max_n", None) is not None:
            policy = replace(policy, n_max_cap=args.max_n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return policy


def _emit(text: str, args) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(reports, args) -> str:
    if args.format == "json":
        return catalog.reports_to_json(reports, args.timing) + "\n"
    if args.format == "csv":
        return catalog.reports_to_csv(reports, args.timing)
    return catalog.reports_to_text(reports, args.timing)


def _status(reports) -> int:
    rows = reports.cases if isinstance(reports, catalog.SuiteReport) else reports
    return EXIT_PASS if rows and all(r.passed for r in rows) else EXIT_FAIL


# -- commands -------------------------------------------------------------------------

def _cmd_list(args) -> int:
    cases = catalog.select(args.filter, args.include_controls) if args.filter else \
        [catalog.get_case(s["id"]) for s in catalog.list_cases(args.include_controls)]
    summaries = [c.summary() for c in cases]
    if args.format == "json":
        text = json.dumps(summaries, indent=2) + "\n"
    elif args.format == "csv":
        rows = ["id,kind,default_tol,paper_ref,description"]
        for s in summaries:
            rows.append(",".join(json.dumps(str(s[k])) for k in
                                 ("id", "kind", "default_tol", "paper_ref", "description")))
        text = "\n".join(rows) + "\n"
    else:
        text = "".join(f"{s['id']:<30s} {s['kind']:<17s} {s['description']}\n" for s in summaries)
        text += f"{len(summaries)} cases\n"
    _emit(text, args)
    return EXIT_PASS


def _verify_one(case_id, params, policy, tol):
    try:
        return catalog.verify(case_id, params, policy, tol)
    except catalog.CaseEvaluationError as exc:
        case = catalog.get_case(case_id)
        return catalog.core.failed_report(case_id, case.resolve(params),
                                          case.default_tol if tol is None else tol, exc, case.kind)


def _cmd_verify(args) -> int:
    report = _verify_one(args.id, _parse_params(args.param), _policy(args), args.tol)
    _emit(_render([report], args), args)
    return _status([report])


def _cmd_verify_all(args) -> int:
    selected = catalog.select(args.filter, args.include_controls)
    if not selected:
        raise UsageError(f"filter {args.filter!r} selects no cases")
    overrides = {c.id: args.tol for c in selected} if args.tol is not None else None
    suite = catalog.core.run_suite(selected, _policy(args), overrides, max(1, args.workers))
    _emit(_render(suite, args), args)
    return _status(suite)


def _cmd_sweep(args) -> int:
    grid = _parse_params(args.param, multi=True)
    reports = catalog.sweep(args.id, grid, _policy(args), args.tol)
    _emit(_render(reports, args), args)
    return _status(reports)


def _census_map(census: ia.MultisetCensus) -> dict:
    return dict(census.counts)


def _cmd_census(args) -> int:
    try:
        builders = {"C": ia.census_C, "D": ia.census_D, "E": ia.census_E}
        if args.which:
            counts = _census_map(builders[args.which](args.base, args.limit))
            if args.format == "json":
                text = json.dumps({"set": args.which, "base": args.base, "limit": args.limit,
                                   "multiplicities": {str(k): v for k, v in counts.items()}},
                                  indent=2) + "\n"
            elif args.format == "csv":
                text = "m,multiplicity\n" + "".join(f"{m},{c}\n" for m, c in counts.items())
            else:
                body = ", ".join(f"{m}:{c}" for m, c in counts.items())
                text = f"{args.which}_{args.base} up to {args.limit}: {{{body}}}\n"
            _emit(text, args)
            return EXIT_PASS
        c = ia.census_C(args.base, args.limit)
        d = ia.census_D(args.base, args.limit)
        e = ia.census_E(args.base, args.limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    c_ok = len(c.counts) == args.limit and all(v == 1 for v in c.counts.values())
    d_ok = d == e
    doc = {"base": args.base, "limit": args.limit, "C_is_identity": c_ok, "D_equals_E": d_ok,
           "D_total": d.total, "E_total": e.total, "pass": c_ok and d_ok}
    if args.format == "json":
        text = json.dumps(doc, indent=2) + "\n"
    elif args.format == "csv":
        text = ",".join(doc) + "\n" + ",".join(str(v) for v in doc.values()) + "\n"
    else:
        text = (f"base {args.base}, limit {args.limit}: C_b covers 1..N once: {c_ok}; "
                f"D_b == E_b: {d_ok} (|D| = {d.total}, |E| = {e.total})\n")
    _emit(text, args)
    return EXIT_PASS if doc["pass"] else EXIT_FAIL


def _cmd_structural(args) -> int:
    try:
        schemes = catalog.exact_schemes(args.base)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    names = args.scheme or list(schemes)
    unknown = [n for n in names if n not in schemes]
    if unknown:
        raise UsageError(f"unknown scheme(s) {unknown}; known: {list(schemes)}")
    try:
        results = {n: ia.structural_check(schemes[n], args.limit) for n in names}
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [{"scheme": n, "base": r.base, "limit": r.limit, "pass": r.passed,
             "first_mismatch": r.first_mismatch, "tuples": r.tuples,
             "lhs_total": str(r.lhs_total), "rhs_total": str(r.rhs_total)}
            for n, r in results.items()]
    if args.format == "json":
        text = json.dumps({"schemes": rows, "pass": all(r["pass"] for r in rows)}, indent=2) + "\n"
    elif args.format == "csv":
        text = ",".join(rows[0]) + "\n" + "".join(
            ",".join(str(v) for v in r.values()) + "\n" for r in rows)
    else:
        text = "".join(
            f"{'PASS' if r['pass'] else 'FAIL'}  {r['scheme']:<16s} base={r['base']} "
            f"limit={r['limit']} tuples={r['tuples']}"
            + ("" if r["pass"] else f" first_mismatch={r['first_mismatch']}") + "\n"
            for r in rows)
    _emit(text, args)
    return EXIT_PASS if all(r["pass"] for r in rows) else EXIT_FAIL


COMMANDS = {
    "list": _cmd_list,
    "verify": _cmd_verify,
    "verify-all": _cmd_verify_all,
    "sweep": _cmd_sweep,
    "census": _cmd_census,
    "structural": _cmd_structural,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Execute one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (catalog.UnknownCaseError, catalog.ParameterError) as exc:
        sys.stderr.write(f"multisection: error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_PASS if exc.code in (0, None) else EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"multisection: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
