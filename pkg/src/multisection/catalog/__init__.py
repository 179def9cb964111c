"""Registry of named identity cases and the verification runner.

>>> from multisection import catalog
>>> catalog.verify("E9.h1a").passed
True
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Mapping, Optional, Sequence

from ..engine import TruncationPolicy
from . import applications, gamma, qseries, series, structural
from .core import (
    CSV_COLUMNS,
    EXACT,
    NUMERIC,
    CaseEvaluationError,
    CatalogError,
    IdentityCase,
    Param,
    ParameterError,
    Registry,
    Sides,
    SuiteReport,
    UnknownCaseError,
    VerificationReport,
    failed_report,
    grid_points,
    run_case,
    run_suite,
)
from .structural import exact_schemes

__all__ = [
    "REGISTRY",
    "EXACT",
    "NUMERIC",
    "CatalogError",
    "CaseEvaluationError",
    "IdentityCase",
    "Param",
    "ParameterError",
    "Sides",
    "SuiteReport",
    "UnknownCaseError",
    "VerificationReport",
    "exact_schemes",
    "get_case",
    "list_cases",
    "verify",
    "verify_all",
    "sweep",
    "reports_to_json",
    "reports_to_csv",
    "reports_to_text",
]

REGISTRY = Registry([*structural.CASES, *series.CASES, *qseries.CASES,
                     *applications.CASES, *gamma.CASES])


def list_cases(include_controls: bool = False) -> list[dict]:
    """Case summaries in stable (natural) id order."""
    return [c.summary() for c in REGISTRY.cases(include_controls)]


def get_case(case_id: str) -> IdentityCase:
    return REGISTRY.get(case_id)


def verify(case_id: str, params: Optional[Mapping[str, Any]] = None,
           policy: Optional[TruncationPolicy] = None,
           tol: Optional[float] = None) -> VerificationReport:
    """Evaluate one case.

    Raises
    ------
    UnknownCaseError
        If ``case_id`` is not registered.
    ParameterError
        If a parameter is unknown or outside its range.
    CaseEvaluationError
        If the evaluation hits a domain error (pole, overflow).
    """
    return run_case(REGISTRY.get(case_id), params, policy, tol)


def select(filter: Optional[str | Iterable[str]] = None,
           include_controls: bool = False) -> list[IdentityCase]:
    """Cases whose id starts with a family prefix such as ``"D"`` or ``"E9"``.

    A bare letter selects the whole family (``"E"`` matches ``E9.cj``);
    a letter-digit prefix matches that sub-family only (``"E1"`` does not
    match ``E10.t2``).
    """
    if filter is None:
        prefixes: list[str] = []
    elif isinstance(filter, str):
        prefixes = [f for f in filter.split(",") if f]
    else:
        prefixes = list(filter)
    out = []
    for case in REGISTRY.cases(include_controls=include_controls or bool(prefixes)):
        if not prefixes or any(_prefix_match(case.id, p) for p in prefixes):
            out.append(case)
    return out


def _prefix_match(case_id: str, prefix: str) -> bool:
    if case_id == prefix:
        return True
    family = case_id.split(".", 1)[0]
    if "." in prefix:
        return case_id.startswith(prefix)
    if prefix.isalpha():
        return family.rstrip("0123456789") == prefix
    return family == prefix


def verify_all(policy: Optional[TruncationPolicy] = None,
               filter: Optional[str | Iterable[str]] = None,
               workers: int = 1,
               tol_overrides: Optional[Mapping[str, float]] = None,
               include_controls: bool = False) -> SuiteReport:
    """Run every selected case; failures are reported, never raised.

    Negative controls are skipped unless named by ``filter`` or requested
    with ``include_controls``.
    """
    return run_suite(select(filter, include_controls), policy, tol_overrides, workers)


def sweep(case_id: str, grid: Mapping[str, Sequence[Any]],
          policy: Optional[TruncationPolicy] = None,
          tol: Optional[float] = None) -> list[VerificationReport]:
    """One report per grid point, in the order of the Cartesian product.

    An error at one point becomes a failed report for that point.
    """
    case = REGISTRY.get(case_id)
    reports = []
    for point in grid_points(case, grid):
        try:
            reports.append(run_case(case, point, policy, tol))
        except CatalogError as exc:
            if isinstance(exc, ParameterError):
                raise
            reports.append(failed_report(case.id, {**case.defaults, **point},
                                         case.default_tol if tol is None else tol, exc,
                                         case.kind))
    return reports


# -- serialization -------------------------------------------------------------

def reports_to_json(reports: Sequence[VerificationReport] | SuiteReport,
                    timing: bool = False) -> str:
    """One JSON document; ``wall_ms`` is ``null`` unless ``timing``."""
    if isinstance(reports, SuiteReport):
        doc = reports.to_dict(timing)
    elif len(reports) == 1:
        doc = reports[0].to_dict(timing)
    else:
        doc = {"cases": [r.to_dict(timing) for r in reports],
               "pass": all(r.passed for r in reports), "total_wall_ms": None}
    return json.dumps(doc, indent=2, sort_keys=False)


def _rows(reports):
    return reports.cases if isinstance(reports, SuiteReport) else reports


def reports_to_csv(reports, timing: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in _rows(reports):
        d = r.to_dict(timing)
        row = {k: d[k] for k in CSV_COLUMNS}
        row["params"] = json.dumps(d["params"], sort_keys=True)
        for k in ("lhs", "rhs"):
            if isinstance(row[k], dict):
                row[k] = json.dumps(row[k])
        writer.writerow(row)
    return buf.getvalue()


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.16g}"
    if isinstance(v, complex):
        return f"{v.real:.16g}{v.imag:+.16g}j"
    return str(v)


def reports_to_text(reports, timing: bool = False) -> str:
    lines = []
    for r in _rows(reports):
        status = "PASS" if r.passed else "FAIL"
        params = ", ".join(f"{k}={_fmt(v)}" for k, v in r.params.items())
        line = (f"{status}  {r.id:<30s} rel_err={_fmt(r.rel_err):<24s} tol={r.tol:g}"
                f"  lhs={_fmt(r.lhs)}  rhs={_fmt(r.rhs)}")
        if params:
            line += f"  [{params}]"
        if not r.converged and r.error is None:
            line += "  (not converged)"
        if r.error:
            line += f"  error: {r.error}"
        if timing:
            line += f"  {r.wall_ms:.1f} ms"
        lines.append(line)
    if isinstance(reports, SuiteReport):
        n_pass = sum(r.passed for r in reports.cases)
        footer = f"{n_pass}/{len(reports.cases)} passed"
        if timing:
            footer += f" in {reports.total_wall_ms:.0f} ms"
        lines.append(footer)
    return "\n".join(lines) + "\n"
