"""Family A: the multisection identity itself, exact and numeric faces.

Exact cases run the integer/rational census oracle; numeric cases push a
sequence with a known total through the shell-by-shell engine.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .. import engine as E
from .. import index_algebra as ia
from .. import special
from ..engine import EvalResult, SequenceOracle
from .core import EXACT, IdentityCase, Param, Sides

N_PARAM = dict(kind=int, lo=1, hi=10**6)


def _structural(make_scheme):
    def run(p, policy):
        report = ia.structural_check(make_scheme(p), p["N"])
        return Sides(report.lhs_total, report.rhs_total, 0, p["N"], True, report.passed,
                     {"first_mismatch": report.first_mismatch, "tuples": report.tuples})
    return run


def _lhs_vs_closed(seq_fn, scheme_fn, closed_fn, product=False):
    """Engine multisection (left side) against a closed-form total."""
    def run(p, policy):
        seq, scheme = seq_fn(p), scheme_fn(p)
        if product:
            lhs = E.multisection_lhs_product(seq, scheme, policy)
        else:
            lhs = E.multisection_lhs(seq, scheme, policy)
        return Sides.from_results(lhs, EvalResult.exact(closed_fn(p)))
    return run


def _flag_scheme(base, start):
    """``phi(j) = 1`` for ``j >= start`` (else 0), ``chi = 0``."""
    return ia.WeightScheme(base, lambda j: Fraction(int(j >= start)), lambda j: Fraction(0),
                           f"indicator(j>={start})")


def _zeta_tail_scheme(p):
    return ia.WeightScheme(2, lambda j: Fraction(int(j < p["J"])), lambda j: Fraction(0),
                           f"indicator(j<{p['J']})")


def _census(p, policy):
    b, n = p["base"], p["N"]
    c = ia.census_C(b, n)
    d = ia.census_D(b, n)
    e = ia.census_E(b, n)
    c_ok = len(c.counts) == n and all(v == 1 for v in c.counts.values())
    return Sides(d.total, e.total, 0, n, True, c_ok and d == e,
                 {"C_all_ones": c_ok, "D_equals_E": d == e})


def _pairwise(p, policy):
    r = ia.pairwise_symmetric_check(p["base"], p["N"], lambda m: Fraction(1, m))
    return Sides(r.lhs, r.rhs, 0, p["N"], True, r.passed)


def _finite(p, policy):
    r = ia.finite_census(p["J"], p["N"])
    return Sides(r.upper_odd.total, r.upper_multiples.total, 0, p["N"], True, r.passed,
                 {"complement_total": r.lower_odd.total})


def _bernoulli(p, policy):
    r = ia.bernoulli_weight_check(p["p"], p["N"])
    return Sides(r.lhs_total, r.rhs_total, 0, p["N"], True, r.passed,
                 {"first_mismatch": r.first_mismatch})


def _tan_product(p, policy):
    a, J = p["a"], p["J"]
    # sum_{j=1..J} 2^(j-1) log(tan(a/2^j)/(a/2^j)); shells shrink like 2^-j a^2/3
    shells = [2.0 ** (j - 1) * special.log_tan_ratio(a / 2.0**j) for j in range(1, J + 1)]
    log_lhs = math.fsum(shells)
    tail = abs(shells[-1])
    return Sides(math.exp(log_lhs), a / math.sin(a), J, 0,
                 tail <= policy.target_rel_tol * max(abs(log_lhs), 1.0),
                 {"tail_estimate": tail})


def _double(p, policy):
    x = p["x"]
    lhs, _ = E.eval_double_multisection(lambda P, Q: x ** (P * Q), policy)
    # sum_{p,q} x^(pq) = sum_p x^p/(1 - x^p)
    rhs = special.lambert_series(0, x)
    return Sides.from_results(lhs, EvalResult.exact(rhs))


def _double_separable(p, policy):
    lhs, _ = E.eval_double_multisection(lambda P, Q: 2.0 ** (-P - Q), policy)
    return Sides.from_results(lhs, EvalResult.exact(1.0))


def _zeta(s):
    return special.riemann_zeta(s)


def _nu_poly_closed(kind):
    """``(1 - 2^-s) zeta(s) sum_nu w(nu) 2^(-nu s)`` for polynomial weights."""
    def closed(p):
        s = p["s"]
        x = 2.0**-s
        series = x / (1 - x) ** 3 if kind == "triangular" else x * (1 + x) / (1 - x) ** 3
        return -math.expm1(-s * math.log(2)) * _zeta(s) * series
    return closed


def _corrupted_numeric(p, policy):
    scheme = ia.corrupt_scheme(ia.q_power_scheme(2), p["delta"])
    lhs = E.multisection_lhs(SequenceOracle(lambda m: np.exp(-np.asarray(m, dtype=float))),
                             scheme, policy)
    return Sides.from_results(lhs, EvalResult.exact(1.0 / math.expm1(1.0)))


def _param_q(default, lo, hi, kind=float):
    return Param("q", default, kind, lo, hi, doc="scheme parameter")


S_PARAM = Param("s", 2.0, float, 1.0, 12.0, open_lo=True, doc="power of the test sequence m^-s")

def exact_schemes(base: int = 2) -> dict[str, ia.WeightScheme]:
    """Every exact weight scheme used by the family-A cases, built in ``base``.

    Keys are stable names accepted by ``multisection structural --scheme``.
    """
    two = Fraction(2)
    schemes = {
        "general-2j": ia.WeightScheme(base, lambda j: 2**j, lambda j: -(2**j), "2^j"),
        "q=-1": ia.q_power_scheme(Fraction(-1), base),
        "q=0": ia.q_power_scheme(Fraction(0), base),
        "q=1/2": ia.q_power_scheme(Fraction(1, 2), base),
        "q=1": ia.q_power_scheme(Fraction(1), base),
        "q=2": ia.q_power_scheme(two, base),
        "phi-chi-j": ia.polynomial_scheme([0, 1], [0, 1], base),
        "phi-j-chi-2j": ia.polynomial_scheme([0, 1], [0, 2], base),
        "phi-chi-one": ia.polynomial_scheme([1], [1], base),
        "bernoulli-p1": ia.bernoulli_scheme(1, base),
        "bernoulli-p2": ia.bernoulli_scheme(2, base),
        "ex312": ia.polynomial_scheme([1, 1, -1], [0, 2], base),
        "telescoping": ia.telescoping_scheme(1, base),
        "fourth-choice": ia.telescoping_scheme(2, base),
        "finite-J2": _flag_scheme(base, 2),
    }
    return schemes


CASES = [
    IdentityCase(
        "A0.census", "C_b covers every index once and D_b equals E_b",
        "multisets C_b, D_b, E_b", "appears once in $C_b$",
        (Param("base", 2, int, 2, 16), Param("N", 10_000, **N_PARAM)),
        _census, kind=EXACT),
    IdentityCase(
        "A0.pairwise", "pairwise symmetric form over C_b+D_b and N+E_b (b_m = 1/m)",
        "symmetric-form remark", "replaced by any symmetric form",
        (Param("base", 2, int, 2, 16), Param("N", 64, kind=int, lo=1, hi=5000)),
        _pairwise, kind=EXACT),
    IdentityCase(
        "A1.general-2j", "phi = 2^j, chi = -2^j collects every index with exponent 1",
        "eq:general", "even more curious identity",
        (Param("N", 4096, **N_PARAM),),
        _structural(lambda p: ia.WeightScheme(2, lambda j: 2**j, lambda j: -(2**j), "2^j")),
        kind=EXACT),
    IdentityCase(
        "A1.tan-product", "prod_{j>=1} (tan(a/2^j)/(a/2^j))^(2^(j-1)) = a/sin a",
        "eq:tan", "derived the curious identity",
        (Param("a", 1.0, float, 0.0, math.pi, open_lo=True, open_hi=True),
         Param("J", 40, int, 1, 200, doc="number of factors kept")),
        _tan_product, default_tol=1e-10),
    IdentityCase(
        "A1.sine-product", "2^j multisection of a_m = 1/(1 - a^2/(m^2 pi^2)) gives a/sin a",
        "eq:general with eq:tan", "The identity (\\ref{eq:tan}) is the specialization",
        (Param("a", 1.0, float, 0.0, 3.0, open_lo=True),),
        _lhs_vs_closed(lambda p: SequenceOracle.log1p_power(-(p["a"] / math.pi) ** 2, 2, -1),
                       lambda p: ia.q_power_scheme(2),
                       lambda p: p["a"] / math.sin(p["a"]), product=True)),
    IdentityCase(
        "A2.q-case", "q-parameterised multisection of m^-s sums to zeta(s)",
        "eq:q-case / q-caseLn", "For an arbitrary value $q\\in\\mathbb{C}$",
        (_param_q(0.5, -2.0, 2.0), S_PARAM),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       lambda p: ia.q_power_scheme(p["q"]),
                       lambda p: _zeta(p["s"]))),
    IdentityCase(
        "A2.q-structural", "exact census check of phi = q^j, chi = (1-q) q^j",
        "eq:q-case", "For an arbitrary value $q\\in\\mathbb{C}$",
        (Param("q", Fraction(1, 2), Fraction, -100, 100), Param("N", 4096, **N_PARAM)),
        _structural(lambda p: ia.q_power_scheme(p["q"])), kind=EXACT),
    IdentityCase(
        "A2.q-one", "sum_{j>=1,n} b_{(2n-1)2^j} = sum_n b_{2n} for b_m = t^m",
        "Example eq:X4", "The case $q=1$ of identity",
        (Param("t", 0.5, float, -1.0, 1.0, open_lo=True, open_hi=True),),
        _lhs_vs_closed(lambda p: SequenceOracle.geometric(p["t"]),
                       lambda p: _flag_scheme(2, 1),
                       lambda p: p["t"] ** 2 / (1 - p["t"] ** 2))),
    IdentityCase(
        "A2.q-minus-one", "q = -1 multisection of b_m = t^m sums to t/(1-t)",
        "q = -1 example", "Separating the terms with even values",
        (Param("t", 0.5, float, -1.0, 1.0, open_lo=True, open_hi=True),),
        _lhs_vs_closed(lambda p: SequenceOracle.geometric(p["t"]),
                       lambda p: ia.q_power_scheme(-1),
                       lambda p: p["t"] / (1 - p["t"]))),
    IdentityCase(
        "A3.base3", "base-3 q-multisection of m^-s sums to zeta(s)",
        "base-3 corollary", "extended to the base 3 case",
        (_param_q(2.0, -4.0, 4.0), S_PARAM),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       lambda p: ia.q_power_scheme(p["q"], 3),
                       lambda p: _zeta(p["s"]))),
    IdentityCase(
        "A3.base3-structural", "exact census check of the base-3 q-scheme",
        "base-3 corollary", "extended to the base 3 case",
        (Param("q", Fraction(2), Fraction, -100, 100), Param("N", 2187, **N_PARAM)),
        _structural(lambda p: ia.q_power_scheme(p["q"], 3)), kind=EXACT),
    IdentityCase(
        "A3.base3-linear", "sum_{j>=1,n} (b_{(3n-1)3^j} + b_{(3n-2)3^j}) = sum_m b_{3m}",
        "X5b3", "from which we deduce the identity",
        (S_PARAM,),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       lambda p: _flag_scheme(3, 1),
                       lambda p: 3.0 ** -p["s"] * _zeta(p["s"]))),
    IdentityCase(
        "A4.base-b", "base-b q-multisection of m^-s sums to zeta(s)",
        "base-b proposition", "The arbitrary base $b$ case follows",
        (Param("base", 5, int, 2, 12), _param_q(0.5, -4.0, 4.0), S_PARAM),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       lambda p: ia.q_power_scheme(p["q"], p["base"]),
                       lambda p: _zeta(p["s"]))),
    IdentityCase(
        "A4.base-b-structural", "exact census check of the base-b q-scheme",
        "base-b proposition", "The arbitrary base $b$ case follows",
        (Param("base", 5, int, 2, 16), Param("q", Fraction(3), Fraction, -100, 100),
         Param("N", 3125, **N_PARAM)),
        _structural(lambda p: ia.q_power_scheme(p["q"], p["base"])), kind=EXACT),
    IdentityCase(
        "A5.phi-chi-j", "phi = chi = j gives exponent nu(nu+1)/2",
        "phi-chi-j example", "In the case $\\varphi\\left(j\\right)=\\chi\\left(j\\right)=j$",
        (Param("N", 4096, **N_PARAM),),
        _structural(lambda p: ia.polynomial_scheme([0, 1], [0, 1])), kind=EXACT),
    IdentityCase(
        "A5.phi-chi-j-numeric", "sum nu(nu+1)/2 m^-s through the phi = chi = j multisection",
        "phi-chi-j example", "In the case $\\varphi\\left(j\\right)=\\chi\\left(j\\right)=j$",
        (S_PARAM,),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       lambda p: ia.polynomial_scheme([0, 1], [0, 1]),
                       _nu_poly_closed("triangular"))),
    IdentityCase(
        "A5.phi-j-chi-2j", "phi = j, chi = 2j gives exponent nu^2",
        "phi-j-chi-2j example", "In the case $\\varphi\\left(j\\right)=j,\\chi\\left(j\\right)=2j$",
        (Param("N", 4096, **N_PARAM),),
        _structural(lambda p: ia.polynomial_scheme([0, 1], [0, 2])), kind=EXACT),
    IdentityCase(
        "A5.phi-j-chi-2j-numeric", "sum nu^2 m^-s through the phi = j, chi = 2j multisection",
        "phi-j-chi-2j example", "In the case $\\varphi\\left(j\\right)=j,\\chi\\left(j\\right)=2j$",
        (S_PARAM,),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       lambda p: ia.polynomial_scheme([0, 1], [0, 2]),
                       _nu_poly_closed("square"))),
    IdentityCase(
        "A5.phi-chi-one", "phi = chi = 1 gives exponent nu + 1",
        "phi-chi-one example", "In the case $\\varphi\\left(j\\right)=\\chi\\left(j\\right)=1$",
        (Param("N", 4096, **N_PARAM),),
        _structural(lambda p: ia.polynomial_scheme([1], [1])), kind=EXACT),
    IdentityCase(
        "A5.phi-chi-one-numeric", "sum (nu+1) t^m through the phi = chi = 1 multisection",
        "phi-chi-one example", "In the case $\\varphi\\left(j\\right)=\\chi\\left(j\\right)=1$",
        (Param("t", float(math.exp(-1)), float, 0.0, 0.99, open_lo=True),),
        _lhs_vs_closed(lambda p: SequenceOracle.geometric(p["t"]),
                       lambda p: ia.polynomial_scheme([1], [1]),
                       # nu(m)+1 counts the j with 2^j | m
                       lambda p: math.fsum(p["t"] ** 2**j / (1 - p["t"] ** 2**j)
                                           for j in range(64) if p["t"] ** 2**j > 0))),
    IdentityCase(
        "A5.bernoulli", "phi = -B_{2p+1}(j)/(2p+1), chi = j^(2p) gives exponent 0",
        "Bcase", "Bernoulli polynomial of degree",
        (Param("p", 1, int, 1, 6), Param("N", 512, **N_PARAM)),
        _bernoulli, kind=EXACT),
    IdentityCase(
        "A6.ex312", "phi = -j^2 + j + 1, chi = 2j gives exponent 1",
        "Ex312", "the case $\\varphi\\left(j\\right)=-j^{2}+j+1,$",
        (Param("N", 1024, **N_PARAM),),
        _structural(lambda p: ia.polynomial_scheme([1, 1, -1], [0, 2])), kind=EXACT),
    IdentityCase(
        "A6.ex312-numeric", "Ex312 multisection of m^-s sums to zeta(s)",
        "Ex312a", "the case $\\varphi\\left(j\\right)=-j^{2}+j+1,$",
        (S_PARAM,),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       lambda p: ia.polynomial_scheme([1, 1, -1], [0, 2]),
                       lambda p: _zeta(p["s"]))),
    IdentityCase(
        "A7.telescoping", "phi = 1/(j+1), chi = 1/((j+1)(j+2)) gives exponent 1",
        "eq:1/(k+1)", "the telescoping choice",
        (Param("N", 4096, **N_PARAM),),
        _structural(lambda p: ia.telescoping_scheme(1)), kind=EXACT),
    IdentityCase(
        "A7.telescoping-numeric", "telescoping multisection of m^-s sums to zeta(s)",
        "eq:1/(k+1)B", "the telescoping choice",
        (S_PARAM,),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       lambda p: ia.telescoping_scheme(1),
                       lambda p: _zeta(p["s"]))),
    IdentityCase(
        "A7.telescoping-base3", "base-3 telescoping choice gives exponent 1",
        "base-3 telescoping variant", "the base 3 case of the previous identity",
        (Param("N", 2187, **N_PARAM),),
        _structural(lambda p: ia.telescoping_scheme(1, 3)), kind=EXACT),
    IdentityCase(
        "A7.telescoping-base3-numeric", "base-3 telescoping multisection of m^-s sums to zeta(s)",
        "base-3 telescoping variant", "the base 3 case of the previous identity",
        (S_PARAM,),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       lambda p: ia.telescoping_scheme(1, 3),
                       lambda p: _zeta(p["s"]))),
    IdentityCase(
        "A8.fourth-choice", "phi = 1 - j(j+3)/(4(j+1)(j+2)), chi = 1/((j+1)(j+2)(j+3))",
        "fourth telescoping choice", "1-\\frac{k\\left(k+3\\right)}{4\\left(k+1\\right)\\left(k+2\\right)}",
        (Param("N", 4096, **N_PARAM),),
        _structural(lambda p: ia.telescoping_scheme(2)), kind=EXACT),
    IdentityCase(
        "A8.fourth-choice-numeric", "fourth-choice multisection of m^-s sums to zeta(s)",
        "fourth telescoping choice", "1-\\frac{k\\left(k+3\\right)}{4\\left(k+1\\right)\\left(k+2\\right)}",
        (S_PARAM,),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       lambda p: ia.telescoping_scheme(2),
                       lambda p: _zeta(p["s"]))),
    IdentityCase(
        "A9.finite", "odd multiples of 2^j for j >= J are exactly the multiples of 2^J",
        "finite version proposition", "For any integer $J\\ge1$, the following identity holds",
        (Param("J", 2, int, 1, 30), Param("N", 1000, **N_PARAM)),
        _finite, kind=EXACT),
    IdentityCase(
        "A9.finite-sum", "sum_{j>=J,n} b_{(2n-1)2^j} = sum_p b_{p 2^J} for b_m = m^-s",
        "finite version corollary", "The specialization $\\varphi\\left(j\\right)=1$ produces",
        (Param("J", 2, int, 1, 30), S_PARAM),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       lambda p: _flag_scheme(2, p["J"]),
                       lambda p: 2.0 ** (-p["J"] * p["s"]) * _zeta(p["s"]))),
    IdentityCase(
        "A9.finite-complement", "sum_{j<J,n} b_{(2n-1)2^j} = sum over p not divisible by 2^J",
        "finite version corollary", "or its sum version",
        (Param("J", 2, int, 1, 30), S_PARAM),
        _lhs_vs_closed(lambda p: SequenceOracle.power(p["s"]),
                       _zeta_tail_scheme,
                       lambda p: -math.expm1(-p["J"] * p["s"] * math.log(2)) * _zeta(p["s"]))),
    IdentityCase(
        "A10.double", "four-fold 2^(j+k) multisection of b_{p,q} = x^(pq)",
        "double sum version", "Consider a double-indexed sequence",
        (Param("x", 0.3, float, 0.0, 0.7, open_lo=True),),
        _double),
    IdentityCase(
        "A10.double-separable", "four-fold multisection of b_{p,q} = 2^(-p-q) sums to 1",
        "double sum version", "The sum version is, for an arbitrary sequence",
        (), _double_separable),
    IdentityCase(
        "X0.corrupted-chi", "negative control: chi(0) shifted by delta must fail at m = b",
        "main_additive (deliberately broken)", "appears with equal cumulative exponent",
        (Param("delta", Fraction(1), Fraction, -100, 100), Param("N", 1024, **N_PARAM)),
        _structural(lambda p: ia.corrupt_scheme(ia.q_power_scheme(2), p["delta"])),
        kind=EXACT, control=True),
    IdentityCase(
        "X0.corrupted-chi-numeric", "negative control: corrupted scheme on b_m = e^-m",
        "main_additive (deliberately broken)", "appears with equal cumulative exponent",
        (Param("delta", 1.0, float, -100, 100),),
        _corrupted_numeric, control=True),
]
