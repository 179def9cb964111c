"""Families B and C: generating functions, Dirichlet series and Lambert series."""

from __future__ import annotations

import math

from .. import engine as E
from .. import special
from ..engine import EvalResult, SequenceOracle
from .core import EXACT, IdentityCase, Param, Sides

S_PARAM = Param("s", 2.0, float, 1.0, 12.0, open_lo=True, doc="Dirichlet exponent")
X_PARAM = Param("x", 0.1, float, -1.0, 1.0, doc="frequency in cos(2 pi j x)")
T_PARAM = Param("t", 0.5, float, -1.0, 1.0, open_lo=True, open_hi=True)


def _cos_phi(x):
    return lambda j: math.cos(2.0 * math.pi * j * x)


def _generating(variant, keys):
    def run(p, policy):
        lhs, rhs = E.generating_identities(_cos_phi(p.get("x", 0.0)), variant,
                                           {k: p[k] for k in keys}, policy)
        return Sides.from_results(lhs, rhs)
    return run


def _nu_sum(weight_fn, closed_fn):
    """``sum_m w(nu_2(m)) m^-s`` from the engine against a closed form."""
    def run(p, policy):
        lhs = E.nu_weighted_sum(SequenceOracle.power(p["s"]), weight_fn(p), 2, policy)
        return Sides.from_results(lhs, EvalResult.exact(closed_fn(p)))
    return run


def _zeta(s):
    return special.hurwitz_zeta(s, 1.0)


def _cos_closed(p):
    s, c = p["s"], math.cos(2 * math.pi * p["x"])
    S = 2.0**s
    return (S - 1) / (2 * S) * (c - S) / (c - (S + 1 / S) / 2) * _zeta(s)


def _even_cos_closed(p):
    s, c = p["s"], math.cos(2 * math.pi * p["x"])
    S = 2.0**s
    return -(c * (S - 1) - 1 + 1 / S) * _zeta(s) / (2 * c * S - S * S - 1)


def _even_cos_lhs(p):
    # nu_2(2m) = nu_2(m) + 1 and (2m)^-s = 2^-s m^-s
    x, s = p["x"], p["s"]
    return lambda v: 2.0**-s * math.cos(2 * math.pi * x * (v + 1))


def _log2_over_3(p, policy):
    r = E.conditional_sum_nu_cos(1.0 / 6.0, policy, terms=p["M"])
    return Sides.from_results(r, EvalResult.exact(math.log(2.0) / 3.0))


def _teixeira(p, policy):
    t = p["t"]

    def shell(k):
        d = 2.0**k
        td = t**d
        v = d * td / (1.0 + td)
        return EvalResult(v, E.EPS * abs(v), k, 0, True)

    return Sides.from_results(E.shell_sum(shell, policy), EvalResult.exact(t / (1.0 - t)))


def _weight_pattern(p, policy):
    J = p["J"]
    n_max = 2 ** (J + 2)
    got = E.teixeira_weight_pattern(J, n_max)
    step = 2 ** (J + 1)
    want = [1 - step if n % step == 0 else 1 for n in range(1, n_max + 1)]
    mismatch = next((n for n, (a, b) in enumerate(zip(got, want), start=1) if a != b), None)
    return Sides(sum(got), sum(want), J, n_max, True, got == want,
                 {"first_mismatch": mismatch, "coefficients": got[: min(n_max, 20)]})


def _q_teixeira(p, policy):
    z, q = p["z"], p["q"]

    def shell(k):
        d = 2.0**k
        zd = z**d
        v = q**k * (zd - (q - 1) * zd * zd) / (1 - zd * zd) if zd != 0 else 0.0
        return EvalResult(v, E.EPS * abs(v), k, 0, True)

    return Sides.from_results(E.shell_sum(shell, policy), EvalResult.exact(z / (1 - z)))


def _base_b_teixeira(p, policy):
    z, q, b = p["z"], p["q"], p["base"]

    def shell(j):
        d = float(b) ** j
        zd = z**d
        if zd == 0:
            return EvalResult(0.0, 0.0, j, 0, True)
        num = math.fsum(zd**k for k in range(1, b)) - (q - 1) * zd**b
        v = q**j * num / (1 - zd**b)
        return EvalResult(v, E.EPS * abs(v), j, 0, True)

    return Sides.from_results(E.shell_sum(shell, policy), EvalResult.exact(z / (1 - z)))


def _borwein_dirichlet(p, policy):
    s = p["s"]
    # a_n = 2^l at n = 2^l (l >= 0): sum_n a_n n^-s = sum_l 2^(l(1-s))
    def shell(l):
        v = 2.0 ** (l * (1.0 - s))
        return EvalResult(v, E.EPS * v, l, 0, True)

    series = E.shell_sum(shell, policy)
    eta = special.dirichlet_eta(s)
    lhs = EvalResult(eta * series.value, abs(eta) * series.abs_error_estimate,
                     series.j_used, 0, series.converged)
    return Sides.from_results(lhs, EvalResult.exact(_zeta(s)))


def _borwein_coefficients(p, policy):
    N = p["N"]
    # Lambert side: sum_d a_d x^d/(1+x^d) = sum_n (sum_{d|n} a_d (-1)^(n/d-1)) x^n
    b = [0] * (N + 1)
    d = 1
    while d <= N:
        for r, n in enumerate(range(d, N + 1, d), start=1):
            b[n] += d if r % 2 else -d
        d *= 2
    bad = next((n for n in range(1, N + 1) if b[n] != 1), None)
    return Sides(sum(b[1:]), N, 0, N, True, bad is None, {"first_mismatch": bad})


def _eta(p, policy):
    s = p["s"]
    lhs = special.dirichlet_eta(s)
    rhs = -math.expm1((1.0 - s) * math.log(2.0)) * _zeta(s)
    return Sides(lhs, rhs)


def _lambert(p, policy):
    r = E.lambert_relation_check(p["mu"], p["q"], policy)
    return Sides(r.multisection, r.direct, r.terms, 0, r.converged,
                 detail={"j_exponent": p["mu"] + 1})


def _lambert_double(p, policy):
    q = p["q"]
    # f(q) = sum_{n,m} n q^(n m): the double sequence b_{n,m} = n q^(n m)
    lhs, _ = E.eval_double_multisection(lambda P, Q: P * q ** (P * Q), policy)
    return Sides.from_results(lhs, EvalResult.exact(special.lambert_series(1, q)))


Q_LAMBERT = Param("q", 0.25, float, 0.0, 0.9, open_lo=True, doc="nome of the Lambert series")

CASES = [
    IdentityCase(
        "B1.t-series", "sum_j cos(2 pi j x) t^(2^j)/(1 - t^(2^(j+1))) = sum_m cos(2 pi x nu_2(m)) t^m",
        "valuation generating function (t-series)", "generating functions for the valuation function",
        (X_PARAM, T_PARAM), _generating("t-series", ("t",))),
    IdentityCase(
        "B2.dirichlet", "(1 - 2^-s) zeta(s) sum_j cos(2 pi j x) 2^(-s j) = sum_m cos(2 pi x nu_2(m)) m^-s",
        "valuation generating function (Dirichlet)", "identity between Dirichlet series",
        (X_PARAM, S_PARAM), _generating("dirichlet", ("s",))),
    IdentityCase(
        "B3.cos", "sum_m cos(2 pi x nu_2(m)) m^-s against its rational-in-cos closed form",
        "cos", "choosing $\\varphi\\left(j\\right) = \\cos\\left(2 \\pi j x\\right)$",
        (X_PARAM, S_PARAM),
        _nu_sum(lambda p: (lambda v: math.cos(2 * math.pi * p["x"] * v)), _cos_closed)),
    IdentityCase(
        "B4.x-quarter", "sum_m cos(pi nu_2(m)/2) m^-s = (4^s - 2^s)/(4^s + 1) zeta(s)",
        "cos at x=1/4", "The specializations $x=\\frac{1}{4}$ and $x=\\frac{1}{2}$",
        (S_PARAM,),
        _nu_sum(lambda p: (lambda v: (1.0, 0.0, -1.0, 0.0)[v % 4]),
                lambda p: (4.0 ** p["s"] - 2.0 ** p["s"]) / (4.0 ** p["s"] + 1) * _zeta(p["s"]))),
    IdentityCase(
        "B5.x-half", "sum_m (-1)^nu_2(m) m^-s = (2^s - 1)/(2^s + 1) zeta(s)",
        "x=1/2", "The specializations $x=\\frac{1}{4}$ and $x=\\frac{1}{2}$",
        (S_PARAM,),
        _nu_sum(lambda p: (lambda v: -1.0 if v % 2 else 1.0),
                lambda p: (2.0 ** p["s"] - 1) / (2.0 ** p["s"] + 1) * _zeta(p["s"]))),
    IdentityCase(
        "B6.t-nu-dirichlet", "sum_m t^nu_2(m) m^-s = (2^s - 1)/(2^s - t) zeta(s)",
        "chi = t^j Dirichlet series", "$\\chi\\left(j\\right)=t^{j}$ yields",
        (Param("t", 0.5, float, -3.9, 3.9, doc="must satisfy |t| < 2^s"), S_PARAM),
        _generating("chi-series", ("s", "t"))),
    IdentityCase(
        "B6.nu-dirichlet", "sum_m nu_2(m) m^-s = zeta(s)/(2^s - 1)",
        "valuation Dirichlet series", "should be compared to the Dirichlet series",
        (S_PARAM,),
        _nu_sum(lambda p: float, lambda p: _zeta(p["s"]) / (2.0 ** p["s"] - 1))),
    IdentityCase(
        "B7.eq3p5b", "sum_m cos(2 pi x nu_2(2m)) (2m)^-s against its closed form",
        "Eq3p5b", "allows the odd terms",
        (Param("x", 0.25, float, -1.0, 1.0), S_PARAM),
        _nu_sum(_even_cos_lhs, _even_cos_closed)),
    IdentityCase(
        "B8.log2-over-3", "sum_m cos(pi nu_2(2m)/3)/m = ln(2)/3 (conditionally convergent)",
        "Eq3p5b1", "take the limit $s\\rightarrow 1$",
        (Param("M", 2**20, int, 2**10, 2**24, doc="largest partial sum averaged"),),
        _log2_over_3, default_tol=1e-4),
    IdentityCase(
        "B9.teixeira", "t/(1-t) = sum_k 2^k t^(2^k)/(1 + t^(2^k))",
        "eq:Teixeira", "attributed to F.G. Teixeira",
        (T_PARAM,), _teixeira),
    IdentityCase(
        "B10.weight-pattern", "partial Teixeira sums have weight 1 - 2^(J+1) at multiples of 2^(J+1)",
        "Teixeira weight pattern", "have weight $1-2^{J+1}.$",
        (Param("J", 2, int, 0, 16),), _weight_pattern, kind=EXACT),
    IdentityCase(
        "B11.q-teixeira", "z/(1-z) = sum_k q^k (z^(2^k) - (q-1) z^(2^(k+1)))/(1 - z^(2^(k+1)))",
        "q-generalized Teixeira", "Now consider the functions",
        (Param("z", 0.5, float, -1.0, 1.0, open_lo=True, open_hi=True),
         Param("q", 0.5, float, -4.0, 4.0)), _q_teixeira),
    IdentityCase(
        "B12.base-b-teixeira", "base-b iterated generating function reproduces z/(1-z)",
        "base-b generating case", "we deduce by iterating",
        (Param("z", 0.5, float, -1.0, 1.0, open_lo=True, open_hi=True),
         Param("q", 0.5, float, -4.0, 4.0), Param("base", 3, int, 2, 12)), _base_b_teixeira),
    IdentityCase(
        "B13.borwein-dirichlet", "eta(s) sum_{l>=0} 2^(l(1-s)) = zeta(s)",
        "Borwein1", "Given two sequences",
        (S_PARAM,), _borwein_dirichlet),
    IdentityCase(
        "B14.borwein-coefficients", "sum_{d|n} a_d (-1)^(n/d-1) = 1 for a_(2^l) = 2^l",
        "Borwein2", "Given two sequences",
        (Param("N", 4096, int, 1, 10**6),), _borwein_coefficients, kind=EXACT),
    IdentityCase(
        "B15.eta", "alternating zeta series equals (1 - 2^(1-s)) zeta(s)",
        "eq:eta", "=\\left(1-2^{1-s}\\right)\\zeta\\left(s\\right)",
        (Param("s", 2.0, float, 1.0, 30.0, open_lo=True),), _eta, default_tol=1e-12),
    IdentityCase(
        "C1.lambert-mu1", "f(q) = sum_{j,k} 2^(2j+k) [g(q^(2^(j+k))) - 4 g(q^(2^(j+k+1)))]",
        "Lambert corollary (mu = 1)", "The two Lambert series",
        (Q_LAMBERT, Param("mu", 1, int, 1, 1)), _lambert),
    IdentityCase(
        "C1.lambert-double", "double-sequence multisection of n q^(n m) gives f(q)",
        "Lambert corollary proof", "Writing the function $f$ as the double sum",
        (Q_LAMBERT,), _lambert_double),
    IdentityCase(
        "C2.lambert-mu", "n^mu Lambert series relation with j-weight 2^((mu+1) j)",
        "Lambert corollary (general mu)", "can be extended in a straightforward way",
        (Param("q", 0.5, float, 0.0, 0.9, open_lo=True), Param("mu", 2, int, 1, 8)), _lambert),
]
