"""Registry machinery: parameter schemas, cases, reports and the runner."""

from __future__ import annotations

import concurrent.futures
import itertools
import math
import re
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

from ..engine import DEFAULT_POLICY, EvalResult, TruncationPolicy

EXACT = "exact-structural"
NUMERIC = "numeric"


class CatalogError(Exception):
    """Base class for registry errors."""


class UnknownCaseError(CatalogError, KeyError):
    def __str__(self):
        return f"unknown identity case {self.args[0]!r}"


class ParameterError(CatalogError, ValueError):
    pass


class CaseEvaluationError(CatalogError, RuntimeError):
    """An upstream numeric or domain error, tagged with the failing case."""


# -- parameters -------------------------------------------------------------

@dataclass(frozen=True)
class Param:
    """One named parameter with a default and an admissible range.

    ``kind`` is ``float``, ``int``, ``Fraction`` or ``complex``.  Bounds are
    inclusive unless ``open_lo``/``open_hi`` is set; ``check`` may reject
    further points (poles, degenerate values) by returning a message.
    """

    name: str
    default: Any
    kind: type = float
    lo: Optional[float] = None
    hi: Optional[float] = None
    open_lo: bool = False
    open_hi: bool = False
    check: Optional[Callable[[Any], Optional[str]]] = None
    doc: str = ""

    def coerce(self, raw) -> Any:
        try:
            if self.kind is Fraction:
                value = Fraction(raw) if not isinstance(raw, float) else Fraction(raw).limit_denominator(10**12)
            elif self.kind is int:
                if isinstance(raw, str):
                    value = int(raw)
                else:
                    if isinstance(raw, bool) or int(raw) != raw:
                        raise ValueError
                    value = int(raw)
            elif self.kind is complex:
                value = complex(raw.replace("i", "j") if isinstance(raw, str) else raw)
            else:
                value = float(Fraction(raw)) if isinstance(raw, str) and "/" in raw else float(raw)
        except (TypeError, ValueError, ZeroDivisionError):
            raise ParameterError(
                f"parameter {self.name!r}: cannot read {raw!r} as {self.kind.__name__}") from None
        self.validate(value)
        return value

    def validate(self, value) -> None:
        v = abs(value) if self.kind is complex else value
        if self.kind is not complex and isinstance(v, float) and not math.isfinite(v):
            raise ParameterError(f"parameter {self.name!r} must be finite")
        if self.lo is not None and (v < self.lo or (self.open_lo and v == self.lo)):
            raise ParameterError(f"parameter {self.name!r}={value} below range {self.range_text()}")
        if self.hi is not None and (v > self.hi or (self.open_hi and v == self.hi)):
            raise ParameterError(f"parameter {self.name!r}={value} above range {self.range_text()}")
        if self.check is not None:
            msg = self.check(value)
            if msg:
                raise ParameterError(f"parameter {self.name!r}={value}: {msg}")

    def range_text(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        prefix = "|.| in " if self.kind is complex else ""
        return f"{prefix}{'(' if self.open_lo or self.lo is None else '['}{lo}, {hi}{')' if self.open_hi or self.hi is None else ']'}"


# -- cases -----------------------------------------------------------------

@dataclass(frozen=True)
class Sides:
    """What an evaluator hands back: both sides plus truncation metadata.

    For exact-structural cases ``lhs``/``rhs`` are exact summaries and
    ``exact_pass`` carries the verdict of the exact comparison.
    """

    lhs: Any
    rhs: Any
    j_used: int = 0
    n_used: int = 0
    converged: bool = True
    exact_pass: Optional[bool] = None
    detail: Mapping[str, Any] = field(default_factory=dict)

    @classmethod
    def from_results(cls, lhs: EvalResult, rhs: EvalResult, **detail) -> "Sides":
        return cls(lhs.value, rhs.value, max(lhs.j_used, rhs.j_used),
                   max(lhs.n_used, rhs.n_used), lhs.converged and rhs.converged,
                   detail=detail)


Evaluator = Callable[[Mapping[str, Any], TruncationPolicy], Sides]


@dataclass(frozen=True)
class IdentityCase:
    id: str
    description: str
    paper_ref: str
    anchor: str
    params: tuple[Param, ...]
    evaluate: Evaluator
    default_tol: float = 1e-10
    kind: str = NUMERIC
    control: bool = False
    constraint: Optional[Callable[[Mapping[str, Any]], Optional[str]]] = None

    def __post_init__(self):
        if self.kind not in (EXACT, NUMERIC):
            raise ValueError(f"bad kind {self.kind!r}")
        for p in self.params:
            p.validate(p.default)
        self.resolve()

    @property
    def defaults(self) -> dict:
        return {p.name: p.default for p in self.params}

    def resolve(self, overrides: Optional[Mapping[str, Any]] = None) -> dict:
        names = {p.name: p for p in self.params}
        out = self.defaults
        for key, raw in (overrides or {}).items():
            if key not in names:
                raise ParameterError(
                    f"case {self.id} has no parameter {key!r}; known: {sorted(names)}")
            out[key] = names[key].coerce(raw)
        if self.constraint is not None:
            problem = self.constraint(out)
            if problem:
                raise ParameterError(f"case {self.id} with {out}: {problem}")
        return out

    def summary(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "paper_ref": self.paper_ref,
            "anchor": self.anchor,
            "kind": self.kind,
            "default_tol": self.default_tol,
            "params": {p.name: {"default": _jsonable(p.default), "range": p.range_text(),
                                "type": p.kind.__name__} for p in self.params},
        }


# -- reports ---------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    id: str
    params: dict
    lhs: Any
    rhs: Any
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
    j_used: int
    n_used: int
    converged: bool
    wall_ms: float
    kind: str = NUMERIC
    error: Optional[str] = None
    detail: Mapping[str, Any] = field(default_factory=dict)

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "id": self.id,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "abs_err": _jsonable(self.abs_err),
            "rel_err": _jsonable(self.rel_err),
            "tol": self.tol,
            "pass": self.passed,
            "j_used": self.j_used,
            "n_used": self.n_used,
            "wall_ms": round(self.wall_ms, 3) if timing else None,
            "converged": self.converged,
            "kind": self.kind,
            "error": self.error,
        }


@dataclass(frozen=True)
class SuiteReport:
    cases: tuple[VerificationReport, ...]
    passed: bool
    total_wall_ms: float

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "cases": [r.to_dict(timing) for r in self.cases],
            "pass": self.passed,
            "total_wall_ms": round(self.total_wall_ms, 3) if timing else None,
        }

    @property
    def failures(self) -> list[VerificationReport]:
        return [r for r in self.cases if not r.passed]


CSV_COLUMNS = ("id", "params", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass",
               "j_used", "n_used", "wall_ms")


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        if v.imag == 0.0:
            return _jsonable(v.real)
        return {"re": _jsonable(v.real), "im": _jsonable(v.imag)}
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(v, Mapping):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    try:
        return _jsonable(complex(v))
    except (TypeError, ValueError):
        return str(v)


# -- registry ---------------------------------------------------------------

def natural_key(case_id: str):
    """Sort ``A2.x`` before ``A10.x``: split digit runs into integers."""
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", case_id)]


class Registry:
    """Immutable-after-build collection of identity cases."""

    def __init__(self, cases: Iterable[IdentityCase]):
        table = {}
        for c in cases:
            if c.id in table:
                raise ValueError(f"duplicate case id {c.id}")
            table[c.id] = c
        self._cases = dict(sorted(table.items(), key=lambda kv: natural_key(kv[0])))

    def __contains__(self, case_id):
        return case_id in self._cases

    def __len__(self):
        return len(self._cases)

    def get(self, case_id: str) -> IdentityCase:
        try:
            return self._cases[case_id]
        except KeyError:
            raise UnknownCaseError(case_id) from None

    def cases(self, include_controls: bool = False) -> list[IdentityCase]:
        return [c for c in self._cases.values() if include_controls or not c.control]


def _rel_err(lhs, rhs) -> tuple[float, float]:
    try:
        diff = abs(complex(lhs) - complex(rhs))
        scale = abs(complex(rhs))
    except (TypeError, ValueError):
        return math.nan, math.nan
    if math.isnan(diff):
        return math.nan, math.nan
    return diff, diff / scale if scale > 0 else diff


def run_case(case: IdentityCase, params: Optional[Mapping[str, Any]] = None,
             policy: Optional[TruncationPolicy] = None,
             tol: Optional[float] = None) -> VerificationReport:
    """Evaluate one case; domain errors propagate as ``CaseEvaluationError``."""
    resolved = case.resolve(params)
    tol = case.default_tol if tol is None else float(tol)
    if not tol > 0:
        raise ParameterError("tolerance must be positive")
    policy = policy or DEFAULT_POLICY
    # keep two orders of truncation headroom below the published tolerance
    effective = replace(policy, target_rel_tol=min(policy.target_rel_tol, max(tol / 100, 1e-15)))
    t0 = time.perf_counter()
    try:
        sides = case.evaluate(resolved, effective)
    except CatalogError:
        raise
    except (ValueError, ArithmeticError, OverflowError) as exc:
        raise CaseEvaluationError(f"{case.id} with {resolved}: {exc}") from exc
    wall = (time.perf_counter() - t0) * 1e3
    if case.kind == EXACT:
        ok = bool(sides.exact_pass)
        abs_err, rel_err = (0.0, 0.0) if ok else (math.inf, math.inf)
        try:
            a, r = _rel_err(sides.lhs, sides.rhs)
            if not math.isnan(a):
                abs_err, rel_err = a, r
        except Exception:  # exact summaries need not be numeric
            pass
    else:
        abs_err, rel_err = _rel_err(sides.lhs, sides.rhs)
        ok = sides.converged and rel_err <= tol
    return VerificationReport(case.id, resolved, sides.lhs, sides.rhs, abs_err, rel_err, tol,
                              ok, sides.j_used, sides.n_used, sides.converged, wall,
                              case.kind, None, dict(sides.detail))


def failed_report(case_id: str, params: Mapping[str, Any], tol: float, exc: Exception,
                  kind: str = NUMERIC) -> VerificationReport:
    return VerificationReport(case_id, dict(params), None, None, math.nan, math.nan, tol,
                              False, 0, 0, False, 0.0, kind, f"{type(exc).__name__}: {exc}")


def run_suite(cases: Sequence[IdentityCase], policy: Optional[TruncationPolicy] = None,
              tol_overrides: Optional[Mapping[str, float]] = None,
              workers: int = 1) -> SuiteReport:
    tol_overrides = tol_overrides or {}
    t0 = time.perf_counter()

    def one(case):
        tol = tol_overrides.get(case.id)
        try:
            return run_case(case, None, policy, tol)
        except Exception as exc:  # isolation: report, never abort the suite
            return failed_report(case.id, case.defaults,
                                 case.default_tol if tol is None else tol, exc, case.kind)

    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(one, cases))
    else:
        reports = [one(c) for c in cases]
    total = (time.perf_counter() - t0) * 1e3
    return SuiteReport(tuple(reports), all(r.passed for r in reports), total)


def grid_points(case: IdentityCase, grid: Mapping[str, Sequence[Any]]) -> list[dict]:
    """Cartesian product of ``grid`` in the case's parameter order."""
    names = [p.name for p in case.params if p.name in grid]
    unknown = set(grid) - {p.name for p in case.params}
    if unknown:
        raise ParameterError(f"case {case.id} has no parameter(s) {sorted(unknown)}")
    return [dict(zip(names, combo)) for combo in itertools.product(*(grid[n] for n in names))]
