"""Family D: q-Pochhammer multisections and the binary partition census."""

from __future__ import annotations

import cmath
import math

from .. import engine as E
from ..engine import EvalResult
from ..special import log_q_pochhammer
from .core import EXACT, IdentityCase, Param, Sides

Q_PARAM = Param("q", 0.1, float, -1.0, 1.0, open_lo=True, open_hi=True, doc="nome, |q| < 1")


def _L(a, q):
    if a == 0:
        return 0.0
    v = log_q_pochhammer(a, q)
    return v.real if abs(v.imag) <= 1e-300 else v


def _log_product(log_shell, log_rhs):
    """Multiply shells in the log domain and compare with ``exp(log_rhs)``."""
    def run(p, policy):
        def shell(j):
            v = log_shell(p, j)
            return EvalResult(v, E.EPS * abs(v), j, 0, True)

        lhs = E.shell_sum(shell, policy)
        rhs = log_rhs(p)
        lhs_v = cmath.exp(lhs.value) if isinstance(lhs.value, complex) else math.exp(lhs.value)
        rhs_v = cmath.exp(rhs) if isinstance(rhs, complex) else math.exp(rhs)
        return Sides(lhs_v, rhs_v, lhs.j_used, 0, lhs.converged,
                     detail={"log_lhs": lhs.value, "log_rhs": rhs})
    return run


def _euler(p):
    return _L(p["q"], p["q"])


def _d1(p, j):
    q, d = p["q"], 2**j
    Q = q ** (2 * d)
    return d * (_L(q**d, Q) - _L(q ** (2 * d), Q))


def _d2(p, j):
    q, P, d = p["q"], p["p"], 2**j
    Q = q ** (2 * d)
    return P**j * (_L(q**d, Q) - (P - 1) * _L(q ** (2 * d), Q))


def _d3(p, j):
    q, P, d = p["q"], p["p"], 3**j
    Q = q ** (3 * d)
    return P**j * (_L(q**d, Q) + _L(q ** (2 * d), Q) - (P - 1) * _L(q ** (3 * d), Q))


def _d4(p, j):
    q, d = p["q"], 2**j
    return _L(q**d, q ** (2 * d))


def _d5(p, j):
    q, d = p["q"], 3**j
    Q = q ** (3 * d)
    return _L(q**d, Q) + _L(q ** (2 * d), Q)


def _d6(p, j):
    q, a, d = p["q"], p["a"], 2**j
    Q = q ** (2 * d)
    return d * (_L(a * q ** (d - 1), Q) - _L(a * q ** (2 * d - 1), Q))


def _partitions_pentagonal(N):
    p = [1] + [0] * N
    for n in range(1, N + 1):
        acc, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            acc += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                acc += sign * p[n - g2]
            k += 1
        p[n] = acc
    return p


def _restricted_partitions(parts, N):
    """Coefficients of ``prod_{i in parts} 1/(1 - q^i)`` up to ``q^N``."""
    c = [1] + [0] * N
    for i in parts:
        for n in range(i, N + 1):
            c[n] += c[n - i]
    return c


def _convolve(a, b, N):
    return [sum(a[k] * b[n - k] for k in range(n + 1)) for n in range(N + 1)]


def _partition_census(p, policy):
    N = p["N"]
    total = [1] + [0] * N
    j = 0
    while 2**j <= N:
        # I_j = {2^j (2n + 1)}: the integers of 2-valuation j
        I_j = range(2**j, N + 1, 2 ** (j + 1))
        total = _convolve(total, _restricted_partitions(I_j, N), N)
        j += 1
    want = _partitions_pentagonal(N)
    bad = next((n for n in range(N + 1) if total[n] != want[n]), None)
    return Sides(total[N], want[N], j, N, True, bad is None,
                 {"first_mismatch": bad, "p_N": want[N]})


P_PARAM = Param("p", 3.0, float, -10.0, 10.0, doc="level weight base")

CASES = [
    IdentityCase(
        "D1.qpoch-2j", "prod_j ((q^(2^j); q^(2^(j+1))) / (q^(2^(j+1)); q^(2^(j+1))))^(2^j) = (q; q)",
        "q-Pochhammer proposition", "With the $q-$\\textup{Pochhammer} symbol",
        (Q_PARAM,), _log_product(_d1, _euler)),
    IdentityCase(
        "D2.qpoch-p", "p^j-weighted q-Pochhammer multisection equals (q; q)",
        "q-Pochhammer proposition (general p)", "and more generally, for any complex number $p,$",
        (Q_PARAM, P_PARAM), _log_product(_d2, _euler)),
    IdentityCase(
        "D3.qpoch-base3", "base-3 p^j-weighted q-Pochhammer multisection equals (q; q)",
        "q-Pochhammer proposition (base 3)", "In the base 3 case",
        (Q_PARAM, Param("p", 2.0, float, -10.0, 10.0)), _log_product(_d3, _euler)),
    IdentityCase(
        "D4.qpoch2", "prod_j (q^(2^j); q^(2^(j+1))) = (q; q)",
        "QPochhammer2", "The special case $p=1$ produces",
        (Q_PARAM,), _log_product(_d4, _euler)),
    IdentityCase(
        "D5.qpoch-base3-p1", "prod_j (q^(3^j); q^(3^(j+1))) (q^(2 3^j); q^(3^(j+1))) = (q; q)",
        "QPochhammer2 (base 3)", "The special case $p=1$ produces",
        (Q_PARAM,), _log_product(_d5, _euler)),
    IdentityCase(
        "D6.qpoch-a", "prod_j ((a q^(2^j-1); q^(2^(j+1))) / (a q^(2^(j+1)-1); q^(2^(j+1))))^(2^j) = (a; q)",
        "(a; q) multisection proposition", "The following multisection formula holds",
        (Q_PARAM, Param("a", 0.3, float, -5.0, 5.0)),
        _log_product(_d6, lambda p: _L(p["a"], p["q"]))),
    IdentityCase(
        "D7.partition-census", "prod_j 1/(q^(2^j); q^(2^(j+1))) reproduces the partition numbers p(n)",
        "QPochhammer2inv", "generating function for the number of partitions",
        (Param("N", 30, int, 0, 400),), _partition_census, kind=EXACT),
]
