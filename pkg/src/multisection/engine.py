"""Tolerance-driven evaluation of multisection sums and products.

The left side of every multisection identity is a sum over level shells
``j = 0, 1, ...``; each shell is a handful of sums along arithmetic
progressions ``n -> d n - c``.  The right side is a weighted sum over all
indices ``m``.  Both are truncated adaptively:

* progression sums use a closed tail supplied by the sequence when one is
  available, otherwise chunked summation that only stops once successive
  chunks shrink geometrically;
* shells stop once two consecutive shell ratios are below ``rho_max`` and
  the geometric tail bound ``last * rho / (1 - rho)`` is under target.

Anything that fails to settle within the caps comes back with
``converged=False``.  Products are summed in the log domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import special
from .index_algebra import WeightScheme, q_power_scheme

__all__ = [
    "TruncationPolicy",
    "EvalResult",
    "SequenceOracle",
    "DEFAULT_POLICY",
    "progression_sum",
    "shell_sum",
    "nu_weighted_sum",
    "eval_multisection_sum",
    "multisection_lhs",
    "multisection_lhs_product",
    "eval_multisection_product",
    "eval_q_multisection",
    "eval_double_multisection",
    "lambert_relation_check",
    "LambertReport",
    "teixeira_weight_pattern",
    "generating_identities",
    "conditional_sum_nu_cos",
    "nu_valuations",
]

EPS = 2.0**-52


@dataclass(frozen=True)
class TruncationPolicy:
    target_rel_tol: float = 1e-10
    j_max_cap: int = 64
    n_max_cap: int = 1_000_000
    tail_rule: str = "geometric"
    working_precision: str = "binary64"
    rho_max: float = 0.9
    chunk: int = 64
    m_direct: int = 2048

    def __post_init__(self):
        if not self.target_rel_tol > 0:
            raise ValueError("target_rel_tol must be positive")
        if self.j_max_cap < 1 or self.n_max_cap < 1 or self.chunk < 1:
            raise ValueError("caps must be >= 1")
        if self.tail_rule not in ("geometric", "fixed"):
            raise ValueError(f"unknown tail rule {self.tail_rule!r}")
        if self.working_precision not in ("binary64", "extended"):
            raise ValueError(f"unknown precision {self.working_precision!r}")
        if not 0 < self.rho_max < 1:
            raise ValueError("rho_max must lie in (0, 1)")

    def tightened(self, factor: float = 0.5) -> "TruncationPolicy":
        return replace(self, target_rel_tol=self.target_rel_tol * factor)


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class EvalResult:
    value: complex | float
    abs_error_estimate: float = 0.0
    j_used: int = 0
    n_used: int = 0
    converged: bool = True

    @classmethod
    def exact(cls, value) -> "EvalResult":
        return cls(_tidy(value), 0.0, 0, 0, True)

    def __float__(self):
        return float(np.real(self.value))


def _tidy(value):
    """Drop a zero imaginary part so real identities report real numbers."""
    value = complex(value) if isinstance(value, (complex, np.complexfloating)) else value
    if isinstance(value, complex) and value.imag == 0.0:
        return value.real
    if isinstance(value, (np.floating, np.integer)):
        return float(value)
    return value


# -- sequences --------------------------------------------------------------

TailFn = Callable[[int, int, int], complex]


@dataclass(frozen=True)
class SequenceOracle:
    """Term values ``m -> b_m`` for the engine.

    ``eval`` and ``log_eval`` take a float ndarray of indices and must be
    vectorised and free of side effects (they may be called concurrently).
    ``tail(d, c, n0)``, when given, returns ``sum_{n >= n0} b_{d n - c}``
    exactly; ``log_tail`` does the same for ``log b_m``.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    log_eval: Optional[Callable[[np.ndarray], np.ndarray]] = None
    tail: Optional[TailFn] = None
    log_tail: Optional[TailFn] = None
    name: str = "sequence"

    def logarithm(self) -> "SequenceOracle":
        """Oracle for ``log b_m``; raises on non-positive real terms."""
        if self.log_eval is not None:
            return SequenceOracle(self.log_eval, tail=self.log_tail,
                                  name=f"log({self.name})")
        f = self.eval

        def log_f(m):
            v = np.asarray(f(m))
            if not np.iscomplexobj(v) and np.any(v <= 0):
                bad = np.asarray(m)[v <= 0][0]
                raise ValueError(
                    f"term a_{bad:.0f} <= 0 in real log mode; supply log_eval")
            return np.log(v)

        return SequenceOracle(log_f, name=f"log({self.name})")

    # constructors for the families the catalog uses

    @classmethod
    def power(cls, s: float, scale: float = 1.0) -> "SequenceOracle":
        """``b_m = scale * m^-s`` with Hurwitz-zeta tails (``s > 1``)."""
        def f(m):
            return scale * np.asarray(m, dtype=float) ** -s

        def tail(d, c, n0):
            # sum_{n>=n0} (d n - c)^-s = d^-s zeta(s, n0 - c/d)
            return scale * float(d) ** -s * special.hurwitz_zeta(s, n0 - c / d)

        return cls(f, tail=tail, name=f"m^-{s}")

    @classmethod
    def geometric(cls, t) -> "SequenceOracle":
        """``b_m = t^m`` for ``|t| < 1``."""
        def f(m):
            return np.power(t, np.asarray(m, dtype=float))

        def tail(d, c, n0):
            first = t ** (d * n0 - c)
            return first / (1 - t**d)

        return cls(f, tail=tail, name=f"{t}^m")

    @classmethod
    def gaussian(cls, x: float) -> "SequenceOracle":
        """``b_m = exp(-x m^2)``; tail summed until underflow."""
        def f(m):
            m = np.asarray(m, dtype=float)
            return np.exp(-x * m * m)

        return cls(f, name=f"exp(-{x} m^2)")

    @classmethod
    def inverse_square_plus(cls, x: float) -> "SequenceOracle":
        """``b_m = 1/(m^2 + x^2)`` with tails from a Hurwitz expansion in ``x^2``."""
        x2 = float(x) ** 2

        def f(m):
            m = np.asarray(m, dtype=float)
            return 1.0 / (m * m + x2)

        def tail(d, c, n0):
            first = d * n0 - c
            if x2 / first**2 > 0.25:
                raise ValueError("tail requested too close to the origin")
            a = n0 - c / d
            acc, p = 0.0, 0
            while True:
                term = (-x2) ** p * float(d) ** (-2 * p - 2) * special.hurwitz_zeta(2 * p + 2, a)
                acc += term
                if abs(term) <= EPS * 1e-2 * abs(acc) or p > 200:
                    break
                p += 1
            return acc

        return cls(f, tail=tail, name=f"1/(m^2+{x2})")

    @classmethod
    def log1p_power(cls, c, k: int, sign: int = 1) -> "SequenceOracle":
        """Product terms ``a_m = (1 + c m^-k)^sign`` with exact log tails.

        ``log(1 + c/(d n - e)^k)`` is expanded in powers of ``c`` and each
        power summed over the progression with the Hurwitz zeta function.
        The expansion is used only once ``|c| / (d n0 - e)^k <= 1/4``.
        """
        def f(m):
            m = np.asarray(m, dtype=float)
            return (1.0 + c * m**-k) ** sign

        def log_f(m):
            m = np.asarray(m, dtype=float)
            return sign * np.log1p(c * m**-k)

        def log_tail(d, e, n0):
            first = d * n0 - e
            if first <= 0 or abs(c) / first**k > 0.25:
                raise ValueError("log1p tail requested too close to the origin")
            acc, p = 0.0, 1
            a = n0 - e / d
            ck = c / float(d) ** k
            while True:
                term = (-1) ** (p + 1) * ck**p / p * special.hurwitz_zeta(k * p, a)
                acc += term
                if abs(term) <= EPS * 1e-2 * abs(acc) or p > 200:
                    break
                p += 1
            return sign * acc

        return cls(f, log_f, log_tail=log_tail, name=f"(1+{c}/m^{k})^{sign}")


# -- primitives -------------------------------------------------------------

def _as_value(x):
    return complex(x) if np.iscomplexobj(x) or isinstance(x, complex) else float(x)


def progression_sum(seq: SequenceOracle, d: float, c: float,
                    policy: TruncationPolicy = DEFAULT_POLICY,
                    head: int = 16) -> EvalResult:
    """``sum_{n >= 1} b_{d n - c}`` for the progression ``d n - c``."""
    if seq.tail is not None:
        n = np.arange(1, head + 1, dtype=float)
        part = np.sum(seq.eval(d * n - c))
        value = _as_value(part) + seq.tail(d, c, head + 1)
        return EvalResult(value, EPS * 16 * abs(value), 0, head, True)

    total = 0.0
    prev_abs = None
    prev_rho = None
    L = policy.chunk
    start = 1
    tol = 1e-2 * policy.target_rel_tol
    while start <= policy.n_max_cap:
        n = np.arange(start, start + L, dtype=float)
        vals = seq.eval(d * n - c)
        chunk = np.sum(vals)
        chunk_abs = float(np.sum(np.abs(vals)))
        total = total + _as_value(chunk)
        start += L
        if chunk_abs == 0.0:
            return EvalResult(_tidy(total), 0.0, 0, start - 1, True)
        if prev_abs:
            rho = chunk_abs / prev_abs
            if rho < policy.rho_max and (prev_rho is None or prev_rho < policy.rho_max):
                tail = chunk_abs * rho / (1.0 - rho)
                if tail <= tol * abs(total) or tail <= EPS * EPS:
                    return EvalResult(_tidy(total), tail + EPS * abs(total),
                                      0, start - 1, True)
            prev_rho = rho
        prev_abs = chunk_abs
    return EvalResult(_tidy(total), math.inf, 0, start - 1, False)


def shell_sum(shell: Callable[[int], EvalResult],
              policy: TruncationPolicy = DEFAULT_POLICY,
              j_start: int = 0) -> EvalResult:
    """Sum ``shell(j)`` over ``j >= j_start`` with the geometric shell rule."""
    total = 0.0
    err = 0.0
    n_used = 0
    prev = None
    prev_rho = None
    zeros = 0
    ok = True
    for j in range(j_start, j_start + policy.j_max_cap + 1):
        r = shell(j)
        ok &= r.converged
        total = total + r.value
        err += r.abs_error_estimate
        n_used = max(n_used, r.n_used)
        mag = abs(r.value)
        if policy.tail_rule == "fixed":
            continue
        if mag == 0.0:
            # leading empty shells (e.g. phi vanishing below a level) are skipped
            if prev is None:
                continue
            zeros += 1
            if zeros >= 2:
                return EvalResult(_tidy(total), err, j, n_used, ok)
            continue
        zeros = 0
        if prev:
            rho = mag / prev
            if rho < policy.rho_max and prev_rho is not None and prev_rho < policy.rho_max:
                tail = mag * rho / (1.0 - rho)
                if tail <= policy.target_rel_tol * 1e-2 * abs(total) or tail <= EPS * EPS:
                    return EvalResult(_tidy(total), err + tail, j, n_used, ok)
            prev_rho = rho
        prev = mag
    if policy.tail_rule == "fixed":
        return EvalResult(_tidy(total), err, j, n_used, ok)
    return EvalResult(_tidy(total), math.inf, j, n_used, False)


def nu_valuations(m: np.ndarray, base: int) -> np.ndarray:
    """Vectorised ``nu_b(m)`` for an int64 array of positive indices."""
    m = np.asarray(m, dtype=np.int64).copy()
    nu = np.zeros(m.shape, dtype=np.int64)
    mask = m % base == 0
    while mask.any():
        nu[mask] += 1
        m[mask] //= base
        mask = m % base == 0
    return nu


def _weight_table(w_of_nu: Callable[[int], object], size: int) -> np.ndarray:
    vals = [w_of_nu(v) for v in range(size)]
    vals = [complex(v) if isinstance(v, complex) else float(v) for v in vals]
    dtype = complex if any(isinstance(v, complex) for v in vals) else float
    return np.array(vals, dtype=dtype)


def nu_weighted_sum(seq: SequenceOracle, w_of_nu: Callable[[int], object],
                    base: int = 2,
                    policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """``sum_{m >= 1} w(nu_b(m)) b_m`` summed over ``m`` directly.

    With a tail hook the head ``m <= policy.m_direct`` is summed explicitly
    and the remainder split by valuation class ``nu`` and residue ``k``.
    Without one, ``m`` is summed in chunks until the chunks decay
    geometrically.
    """
    table = _weight_table(w_of_nu, policy.j_max_cap + 2)

    def weights(m_int):
        nu = nu_valuations(m_int, base)
        if nu.max(initial=0) >= table.size:
            raise OverflowError("valuation exceeds the weight table")
        return table[nu]

    if seq.tail is not None:
        M = policy.m_direct
        m_int = np.arange(1, M + 1, dtype=np.int64)
        head = _as_value(np.sum(weights(m_int) * seq.eval(m_int.astype(float))))

        # Valuation classes are summed with the unweighted class total as the
        # convergence envelope, so oscillating or vanishing weights cannot
        # fake (or block) geometric decay.
        w_abs = np.abs(table)
        w_rest = np.maximum.accumulate(w_abs[::-1])[::-1]
        rest, err = 0.0, 0.0
        prev = prev_rho = None
        converged = False
        nu = 0
        for nu in range(table.size - 1):
            p = base**nu
            acc = 0.0
            for k in range(1, base):
                # first n with (b n - k) p > M
                n0 = (M // p + k) // base + 1
                acc = acc + seq.tail(base * p, k * p, n0)
            rest = rest + table[nu] * acc
            err += EPS * abs(table[nu] * acc)
            mag = abs(acc)
            if mag == 0.0:
                converged = True
                break
            if prev:
                rho = mag / prev
                if rho < policy.rho_max and prev_rho is not None and prev_rho < policy.rho_max:
                    tail = w_rest[nu + 1] * mag * rho / (1.0 - rho)
                    if tail <= 1e-2 * policy.target_rel_tol * abs(head + rest) or tail <= EPS * EPS:
                        err += tail
                        converged = True
                        break
                prev_rho = rho
            prev = mag
        value = head + rest
        return EvalResult(_tidy(value),
                          (err if converged else math.inf) + EPS * M * abs(value),
                          nu, M, converged)

    total = 0.0
    L = max(policy.chunk, 256)
    prev_abs = prev_rho = None
    start = 1
    tol = 1e-2 * policy.target_rel_tol
    while start <= policy.n_max_cap:
        m_int = np.arange(start, start + L, dtype=np.int64)
        vals = weights(m_int) * seq.eval(m_int.astype(float))
        total = total + _as_value(np.sum(vals))
        chunk_abs = float(np.sum(np.abs(vals)))
        start += L
        if chunk_abs == 0.0:
            return EvalResult(_tidy(total), 0.0, 0, start - 1, True)
        if prev_abs:
            rho = chunk_abs / prev_abs
            if rho < policy.rho_max and prev_rho is not None and prev_rho < policy.rho_max:
                tail = chunk_abs * rho / (1.0 - rho)
                if tail <= tol * abs(total) or tail <= EPS * EPS:
                    return EvalResult(_tidy(total), tail, 0, start - 1, True)
            prev_rho = rho
        prev_abs = chunk_abs
    return EvalResult(_tidy(total), math.inf, 0, start - 1, False)


def _scheme_value(f, j):
    v = f(j)
    if isinstance(v, Fraction):
        return float(v)
    return v


def _lhs_sum(seq: SequenceOracle, scheme: WeightScheme,
             policy: TruncationPolicy) -> EvalResult:
    b = scheme.base

    def shell(j):
        p = float(b) ** j
        phi = _scheme_value(scheme.phi, j)
        chi = _scheme_value(scheme.chi, j)
        acc, err, n_used, ok = 0.0, 0.0, 0, True
        parts = []
        if phi != 0:
            for k in range(1, b):
                parts.append((phi, progression_sum(seq, b * p, k * p, policy)))
        if chi != 0:
            parts.append((chi, progression_sum(seq, b * p, 0.0, policy)))
        for w, r in parts:
            acc = acc + w * r.value
            err += abs(w) * r.abs_error_estimate
            n_used = max(n_used, r.n_used)
            ok &= r.converged
        return EvalResult(acc, err, j, n_used, ok)

    return shell_sum(shell, policy)


def multisection_lhs(seq: SequenceOracle, scheme: WeightScheme,
                     policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """Only the shell-by-shell (left) side of the additive multisection."""
    return _lhs_sum(seq, scheme, policy)


def multisection_lhs_product(seq: SequenceOracle, scheme: WeightScheme,
                             policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """Only the left side of the multiplicative multisection."""
    return _exp_result(_lhs_sum(seq.logarithm(), scheme, policy))


def eval_multisection_sum(seq: SequenceOracle, scheme: WeightScheme,
                          policy: TruncationPolicy = DEFAULT_POLICY):
    """Both sides of the additive multisection for ``scheme``.

    Returns ``(lhs, rhs)`` where ``lhs`` sums ``phi(j) b_{(bn-k) b^j}`` and
    ``chi(j) b_{(bn) b^j}`` shell by shell, and ``rhs`` is
    ``sum_m weight(m) b_m``.
    """
    lhs = _lhs_sum(seq, scheme, policy)
    rhs = nu_weighted_sum(seq, lambda v: _scheme_value(scheme.cumulative, v),
                          scheme.base, policy)
    return lhs, rhs


def _exp_result(r: EvalResult) -> EvalResult:
    if not r.converged or not math.isfinite(r.abs_error_estimate):
        v = np.exp(r.value) if math.isfinite(abs(r.value)) else math.nan
        return EvalResult(_tidy(v), math.inf, r.j_used, r.n_used, False)
    v = np.exp(r.value)
    return EvalResult(_tidy(v), abs(v) * r.abs_error_estimate, r.j_used, r.n_used, True)


def eval_multisection_product(seq: SequenceOracle, scheme: WeightScheme,
                              policy: TruncationPolicy = DEFAULT_POLICY):
    """Multiplicative form: exponent-weighted log sums, exponentiated."""
    lhs, rhs = eval_multisection_sum(seq.logarithm(), scheme, policy)
    return _exp_result(lhs), _exp_result(rhs)


def eval_q_multisection(seq: SequenceOracle, q, base: int = 2, mode: str = "sum",
                        policy: TruncationPolicy = DEFAULT_POLICY):
    """The ``q``-parameterised multisection (``phi = q^j``, ``chi = (1-q) q^j``)."""
    scheme = q_power_scheme(q if isinstance(q, (int, Fraction)) else complex(q)
                            if isinstance(q, complex) else float(q), base)
    if mode == "sum":
        return eval_multisection_sum(seq, scheme, policy)
    if mode == "product":
        return eval_multisection_product(seq, scheme, policy)
    raise ValueError(f"mode must be 'sum' or 'product', got {mode!r}")


# -- double-indexed sequences ----------------------------------------------

def _box_sum(f, P0, dP, Q0, dQ, policy, L0=8, L_cap=2048):
    """``sum_{n,m>=1} f(P0 + dP n, Q0 + dQ m)`` by doubling a square box."""
    prev = None
    L = L0
    while L <= L_cap:
        n = np.arange(1, L + 1, dtype=float)
        P = (P0 + dP * n)[:, None]
        Q = (Q0 + dQ * n)[None, :]
        s = _as_value(np.sum(f(P, Q)))
        if prev is not None:
            diff = abs(s - prev)
            if diff <= 1e-2 * policy.target_rel_tol * abs(s) or diff <= EPS * EPS:
                return EvalResult(s, diff + EPS * abs(s), 0, L, True)
        prev = s
        L *= 2
    return EvalResult(prev, math.inf, 0, L // 2, False)


def eval_double_multisection(seq2: Callable[[np.ndarray, np.ndarray], np.ndarray],
                             policy: TruncationPolicy = DEFAULT_POLICY):
    """Four-fold ``2^(j+k)`` multisection of a double sequence vs its plain sum."""

    def shell(s):
        acc, err, n_used, ok = 0.0, 0.0, 0, True
        for j in range(s + 1):
            k = s - j
            pj, pk = 2.0**j, 2.0**k
            # index maps (2n-1) 2^j = -2^j + 2^(j+1) n and (2n) 2^j
            parts = (
                (+1, _box_sum(seq2, -pj, 2 * pj, -pk, 2 * pk, policy)),
                (+1, _box_sum(seq2, 0.0, 2 * pj, 0.0, 2 * pk, policy)),
                (-1, _box_sum(seq2, 0.0, 2 * pj, -pk, 2 * pk, policy)),
                (-1, _box_sum(seq2, -pj, 2 * pj, 0.0, 2 * pk, policy)),
            )
            for sign, r in parts:
                acc = acc + sign * 2.0**s * r.value
                err += 2.0**s * r.abs_error_estimate
                n_used = max(n_used, r.n_used)
                ok &= r.converged
        return EvalResult(acc, err, s, n_used, ok)

    lhs = shell_sum(shell, policy)
    rhs = _box_sum(seq2, 0.0, 1.0, 0.0, 1.0, policy)
    return lhs, EvalResult(_tidy(rhs.value), rhs.abs_error_estimate, 0,
                           rhs.n_used, rhs.converged)


@dataclass(frozen=True)
class LambertReport:
    mu: int
    q: float
    direct: float
    multisection: float
    rel_discrepancy: float
    terms: int
    converged: bool


def lambert_relation_check(mu: int, q: float,
                           policy: TruncationPolicy = DEFAULT_POLICY,
                           j_exponent: Optional[int] = None) -> LambertReport:
    """Compare ``f(q) = sum n^mu q^n/(1-q^n)`` with its ``g``-multisection.

    The right side is ``sum_{j,k} 2^(a j + k) [g(q^(2^(j+k))) -
    2^(mu+1) g(q^(2^(j+k+1)))]`` where ``g`` is the ``1 + q^n`` Lambert
    series and ``a = mu + 1`` unless ``j_exponent`` overrides it.
    """
    if int(mu) != mu or mu < 1:
        raise ValueError("mu must be an integer >= 1")
    if not 0 < q < 1:
        raise ValueError(f"lambert_relation_check requires 0 < q < 1, got {q}")
    a = mu + 1 if j_exponent is None else j_exponent
    f = special.lambert_series(mu, q, signed=False)

    def g(level):
        Q = q ** (2.0**level)
        return special.lambert_series(mu, Q, signed=True) if Q > 0 else 0.0

    cache = {}

    def g_cached(level):
        if level not in cache:
            cache[level] = g(level)
        return cache[level]

    def shell(s):
        bracket = g_cached(s) - 2.0 ** (mu + 1) * g_cached(s + 1)
        coeff = math.fsum(2.0 ** (a * j + (s - j)) for j in range(s + 1))
        return EvalResult(coeff * bracket, EPS * abs(coeff * bracket), s, 0, True)

    rhs = shell_sum(shell, replace(policy, target_rel_tol=min(policy.target_rel_tol, 1e-14)))
    rel = abs(rhs.value - f) / abs(f)
    return LambertReport(mu, q, f, float(rhs.value), rel, rhs.j_used, rhs.converged)


# -- generating functions ---------------------------------------------------

def teixeira_weight_pattern(J: int, n_max: int) -> list[int]:
    """Coefficients ``c[1..n_max]`` of ``sum_{j<=J} 2^j t^(2^j)/(1 + t^(2^j))``.

    Element ``i`` of the returned list is the coefficient of ``t^(i+1)``.
    """
    if J < 0 or n_max < 1:
        raise ValueError("need J >= 0 and n_max >= 1")
    c = [0] * (n_max + 1)
    for j in range(J + 1):
        d = 2**j
        # 2^j t^d / (1 + t^d) = 2^j sum_{r>=1} (-1)^(r-1) t^(d r)
        for r, idx in enumerate(range(d, n_max + 1, d), start=1):
            c[idx] += d if r % 2 else -d
    return c[1:]


def generating_identities(phi: Callable[[int], object], variant: str,
                          params: dict, policy: TruncationPolicy = DEFAULT_POLICY):
    """Generating-function faces of the valuation identity (base 2).

    ``variant``:
      ``"t-series"``   ``sum_j phi(j) t^(2^j)/(1 - t^(2^(j+1)))`` vs
                       ``sum_m phi(nu_2(m)) t^m``;
      ``"dirichlet"``  ``(1 - 2^-s) zeta(s) sum_j phi(j) 2^(-s j)`` vs
                       ``sum_m phi(nu_2(m)) m^-s``;
      ``"chi-series"`` ``sum_m t^(nu_2(m)) m^-s`` vs
                       ``(2^s - 1)/(2^s - t) zeta(s)``; ``phi`` is ignored.
    """
    if variant == "t-series":
        t = params["t"]
        if not abs(t) < 1:
            raise ValueError("t-series requires |t| < 1")

        def shell(j):
            d = 2.0**j
            v = phi(j) * t**d / (1 - t ** (2 * d)) if abs(t) ** d > 0 else 0.0
            return EvalResult(v, EPS * abs(v), j, 0, True)

        lhs = shell_sum(shell, policy)
        rhs = nu_weighted_sum(SequenceOracle.geometric(t), phi, 2, policy)
        return lhs, rhs
    if variant == "dirichlet":
        s = params["s"]
        if not s > 1:
            raise ValueError("dirichlet variant requires s > 1")

        def shell(j):
            v = phi(j) * 2.0 ** (-s * j)
            return EvalResult(v, EPS * abs(v), j, 0, True)

        series = shell_sum(shell, policy)
        z = -math.expm1(-s * math.log(2.0)) * special.riemann_zeta(s)
        lhs = EvalResult(_tidy(z * series.value), abs(z) * series.abs_error_estimate,
                         series.j_used, 0, series.converged)
        rhs = nu_weighted_sum(SequenceOracle.power(s), phi, 2, policy)
        return lhs, rhs
    if variant == "chi-series":
        s, t = params["s"], params["t"]
        if not s > 1:
            raise ValueError("chi-series variant requires s > 1")
        if not abs(t) < 2.0**s:
            raise ValueError("chi-series variant requires |t| < 2^s")
        lhs = nu_weighted_sum(SequenceOracle.power(s), lambda v: t**v, 2, policy)
        rhs = EvalResult.exact((2.0**s - 1) / (2.0**s - t) * special.riemann_zeta(s))
        return lhs, rhs
    raise ValueError(f"unknown variant {variant!r}")


def conditional_sum_nu_cos(x: float, policy: TruncationPolicy = DEFAULT_POLICY,
                           terms: int = 2**20) -> EvalResult:
    """``sum_m cos(2 pi x nu_2(2m)) / m`` by averaging partial sums.

    The series converges only when the weight has zero mean over the
    valuation classes, i.e. ``x = +-1/6 mod 1``; other ``x`` return a
    non-converged result.  Partial sums ``S_M`` are averaged over
    ``terms/2 < M <= terms``; the error estimate is the gap between the
    averages over the two halves of that window.
    """
    theta = 2.0 * math.pi * x
    # mean weight: sum_nu cos(theta (nu + 1)) 2^-(nu+1)
    z = complex(math.cos(theta), math.sin(theta))
    mean = (z / 2 / (1 - z / 2)).real
    terms = min(terms, policy.n_max_cap * 2)
    if abs(mean) > 1e-12:
        return EvalResult(math.nan, math.inf, 0, 0, False)
    m = np.arange(1, terms + 1, dtype=np.int64)
    w = np.cos(theta * (nu_valuations(m, 2) + 1))
    partial = np.cumsum(w / m.astype(float))
    window = partial[terms // 2:]
    half = window.size // 2
    value = float(np.mean(window))
    err = abs(float(np.mean(window[:half])) - float(np.mean(window[half:])))
    return EvalResult(value, err, 0, terms, err <= 1e-4 * max(abs(value), 1.0))
