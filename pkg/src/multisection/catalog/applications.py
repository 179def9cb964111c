"""Family E: applications to hyperbolic, Gamma, Hurwitz and theta identities.

Sides are computed along different routes wherever possible: the engine
multisection, an explicit level-by-level sum of a known inner closed form,
or a power series in Hurwitz/polygamma values, against a Gamma, hyperbolic
or theta closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import replace
from fractions import Fraction

import numpy as np

from .. import engine as E
from .. import index_algebra as ia
from .. import special as sp
from ..engine import EvalResult, SequenceOracle
from .core import IdentityCase, Param, Sides

PI = math.pi
SQRT3 = math.sqrt(3.0)
# power-series indices get more room than the shell cap; their ratio is fixed
SERIES_CAP_FACTOR = 32


def _shell(term):
    def shell(j):
        v = term(j)
        return EvalResult(v, E.EPS * abs(v), j, 0, True)
    return shell


def _sum(term, policy, start=0, series=False):
    if series:
        policy = replace(policy, j_max_cap=policy.j_max_cap * SERIES_CAP_FACTOR)
    return E.shell_sum(_shell(term), policy, j_start=start)


def _exact(v):
    return EvalResult.exact(v)


def _nonzero(v):
    return "must be nonzero" if v == 0 else None


def _flag(start=0):
    return ia.WeightScheme(2, lambda j: Fraction(int(j >= start)), lambda j: Fraction(0),
                           f"indicator(j>={start})")


def _inv_sinh(y):
    """``1/sinh(y)`` for ``y > 0`` without overflow."""
    e = math.exp(-y)
    return 2.0 * e / (1.0 - e * e)


def _exp_over_cosh(a, y):
    """``exp(-a)/cosh(y)`` for ``y >= 0`` without overflow."""
    return 2.0 * math.exp(-a - y) / (1.0 + math.exp(-2.0 * y))


def _re_loggamma(z):
    return sp.log_gamma(z).real


def _exp_sides(lhs: EvalResult, rhs_log: float, **detail):
    """Compare ``exp`` of a log-domain engine result with ``exp(rhs_log)``."""
    return Sides(math.exp(lhs.value), math.exp(rhs_log), lhs.j_used, lhs.n_used,
                 lhs.converged, detail={"log_lhs": lhs.value, "log_rhs": rhs_log, **detail})


# -- E1: sinh product and its log form ------------------------------------

def _sinh_product(p, policy):
    x, q = p["x"], p["q"]
    lhs = E.multisection_lhs_product(SequenceOracle.log1p_power(x * x, 2), ia.q_power_scheme(q),
                                     policy)
    return Sides.from_results(lhs, _exact(math.exp(sp.log_sinhc(PI * x))))


def _start(p, policy):
    x, q = p["x"], p["q"]
    lhs = E.multisection_lhs(SequenceOracle.log1p_power(x * x, 2).logarithm(),
                             ia.q_power_scheme(q), policy)
    return Sides.from_results(lhs, _exact(sp.log_sinhc(PI * x)))


# -- E2: double sum solved by q = 1 -----------------------------------------

def _st1a_closed(x):
    # (pi x coth(pi x) - 1)/(2 x^2) = pi x (coth - 1/(pi x)) / (2 x^2)
    return PI * sp.coth_minus_inv(PI * x) / (2.0 * x)


def _st1a(p, policy):
    x = p["x"]
    lhs = E.multisection_lhs(SequenceOracle.inverse_square_plus(x), _flag(0), policy)
    return Sides.from_results(lhs, _exact(_st1a_closed(x)))


def _st1b(p, policy):
    x, j = p["x"], p["j"]
    # n(n-1) 2^(2+2j) + x^2 + 4^j = ((2n-1) 2^j)^2 + x^2
    lhs = E.progression_sum(SequenceOracle.inverse_square_plus(x), 2.0 ** (j + 1), 2.0**j, policy)
    rhs = PI * math.tanh(PI * x / 2.0 ** (j + 1)) / (2.0 ** (j + 2) * x)
    return Sides.from_results(lhs, _exact(rhs))


def _h43(p, policy):
    x = p["x"]
    lhs = _sum(lambda j: math.tanh(x / 2.0 ** (j + 1)) / 2.0**j, policy)
    return Sides.from_results(lhs, _exact(2.0 * sp.coth_minus_inv(x)))


# -- E3: q-derivative identities --------------------------------------------

def _st3(p, policy):
    x = p["x"]
    scheme = ia.WeightScheme(2, lambda j: Fraction(j), lambda j: Fraction(0), "phi=j")
    lhs = E.multisection_lhs(SequenceOracle.log1p_power(x, 2).logarithm(), scheme, policy)
    # prod_n (1 + x/(n^2 4^(j+1))) = sinh(y)/y with y = pi sqrt(x)/2^(j+1)
    rhs = _sum(lambda j: sp.log_sinhc(PI * math.sqrt(x) / 2.0 ** (j + 1)), policy)
    return Sides.from_results(lhs, rhs)


def _st4a(p, policy):
    x = p["x"]
    lhs = _sum(lambda j: j / 2.0**j * math.tanh(x / 2.0 ** (j + 1)), policy, start=1)

    def term(j):
        y = x / 2.0 ** (j + 1)
        return y * sp.coth_minus_inv(y)

    rhs = _sum(term, policy)
    return Sides.from_results(lhs, EvalResult(2.0 / x * rhs.value, 2.0 / x * rhs.abs_error_estimate,
                                              rhs.j_used, 0, rhs.converged))


# -- E4/E5: Hurwitz and polygamma power series --------------------------------

POLYGAMMA_ORDER_LIMIT = 120


def _hz_pair(s):
    return sp.hurwitz_zeta(s, 2 / 3) + sp.hurwitz_zeta(s, 1 / 3)


def _hz_ratio(s):
    """``(zeta(s, 2/3) + zeta(s, 1/3)) / (3^s - 1)``.

    For large ``s`` both numerator and denominator overflow; peeling the
    first terms ``3^s`` and ``(3/2)^s`` off the Hurwitz sums leaves
    ``(1 + 2^-s + 3^-s (zeta(s, 4/3) + zeta(s, 5/3))) / (1 - 3^-s)``.
    """
    if s <= 60:
        return _hz_pair(s) / math.expm1(s * math.log(3.0))
    t = 3.0**-s
    tail = sp.hurwitz_zeta(s, 4 / 3) + sp.hurwitz_zeta(s, 5 / 3)
    return (1.0 + 2.0**-s + t * tail) / (1.0 - t)


def _psi_ratio(kp):
    """``(psi(kp-1, 2/3) + psi(kp-1, 1/3)) / (Gamma(kp+1) (3^kp - 1))``.

    Past ``POLYGAMMA_ORDER_LIMIT`` the polygamma values overflow, and the
    equal form ``(-1)^kp _hz_ratio(kp) / kp`` is used.
    """
    if kp - 1 <= POLYGAMMA_ORDER_LIMIT:
        num = sp.polygamma(kp - 1, 2 / 3) + sp.polygamma(kp - 1, 1 / 3)
        return num / math.gamma(kp + 1) / math.expm1(kp * math.log(3.0))
    sign = -1.0 if kp % 2 else 1.0
    return sign * _hz_ratio(kp) / kp


def _roots_loggamma_rhs(x, k):
    """``log(-x^k prod_j Gamma(-x e^(2 pi i j/k)))`` after checking it is real.

    Returns ``(log|w|, phase)`` where ``phase`` is the argument of ``w``
    reduced to ``(-pi, pi]``.
    """
    acc = 0j
    for j in range(k):
        acc += sp.log_gamma(-x * cmath.exp(2j * PI * j / k))
    log_w = k * math.log(abs(x)) + acc
    sign_term = -(1 if x > 0 or k % 2 == 0 else -1)  # sign of -x^k
    phase = (log_w.imag + (0.0 if sign_term > 0 else PI) + PI) % (2 * PI) - PI
    return log_w.real, phase


def _ls3e2(p, policy):
    x, k = p["x"], p["k"]
    lhs = _sum(lambda P: x ** (k * P) * _hz_ratio(k * P) / P,
               policy, start=1, series=True)
    rhs, phase = _roots_loggamma_rhs(x, k)
    ok = abs(phase) <= 1e-9
    return Sides(lhs.value, rhs, lhs.j_used, 0, lhs.converged and ok,
                 detail={"rhs_phase": phase})


def _ls3e2p(p, policy):
    x, k = p["x"], p["k"]
    lhs = _sum(lambda P: _psi_ratio(k * P) * (-x) ** (k * P),
               policy, start=1, series=True)
    rhs, phase = _roots_loggamma_rhs(x, k)
    return Sides(lhs.value, rhs / k, lhs.j_used, 0, lhs.converged and abs(phase) <= 1e-9,
                 detail={"rhs_phase": phase})


def _lk2(p, policy):
    x = p["x"]
    lhs = _sum(lambda P: x ** (2 * P) * _psi_ratio(2 * P),
               policy, start=1, series=True)
    rhs = 0.5 * math.log(PI * x / math.sin(PI * x))
    return Sides.from_results(lhs, _exact(rhs))


def _lk3(p, policy):
    x = p["x"]
    lhs = _sum(lambda P: _psi_ratio(3 * P) * (-1) ** P * x ** (3 * P), policy, start=1, series=True)
    # |Gamma(z)|^2 = exp(2 Re log Gamma(z))
    rhs = (2 * math.log(abs(x)) + 2 * _re_loggamma(complex(x / 2, -SQRT3 * x / 2))
           + _re_loggamma(1 - x)) / 3
    return Sides.from_results(lhs, _exact(rhs))


GAMMA_SIDE_FLOOR = 0.02


def _gamma_side_floor(roots):
    """Domain guard for the log-Gamma product over ``roots(p)`` roots of unity.

    The product is O(|x|^k) while each of its k logarithms is O(|x|), so the
    closed side loses about ``|x|^(1-k)`` in relative accuracy.
    """
    def check(p):
        k = roots(p)
        if abs(p["x"]) ** (k - 1) < GAMMA_SIDE_FLOOR:
            return (f"|x|^(k-1) = {abs(p['x']) ** (k - 1):.3g} is below {GAMMA_SIDE_FLOOR}; "
                    "the Gamma-product side cannot reach the tolerance in binary64")
        return None
    return check


def _odd_k(k):
    return None if k % 2 else "k must be odd"


def _leven(p, policy):
    x, k = p["x"], p["k"]
    K = 2 * k
    lhs = _sum(lambda P: (-1) ** P * x ** (K * P) * _psi_ratio(K * P),
               policy, start=1, series=True)
    acc = K * math.log(abs(x)) + sum(sp.log_gamma(-1j * x * cmath.exp(1j * PI * j / k))
                                     for j in range(K))
    # compared on real parts (the log of the modulus)
    return Sides(lhs.value, acc.real / K, lhs.j_used, 0, lhs.converged,
                 detail={"rhs_imag": acc.imag / K})


def _lodd(p, policy):
    x, k = p["x"], p["k"]
    K = 2 * k + 1

    def term(P):
        return (_psi_ratio(K * P) * x ** (K * P) * cmath.exp(-0.5j * PI * P)
                * (-1) ** (k * P))

    lhs = _sum(term, policy, start=1, series=True)
    log_w = (cmath.log(-1j * (-1) ** k) + K * math.log(abs(x))
             + (0 if x > 0 else K * 1j * PI)
             + sum(sp.log_gamma(-1j * x * cmath.exp(2j * PI * j / K)) for j in range(K)))
    # the two sides are logarithms of one number up to a branch: compare
    # exp(K * lhs) with w itself
    w_lhs = cmath.exp(K * lhs.value)
    w_rhs = cmath.exp(log_w)
    return Sides(w_lhs, w_rhs, lhs.j_used, 0, lhs.converged,
                 detail={"log_lhs": lhs.value, "log_rhs_over_K": log_w / K})


def _lodd2ar(p, policy):
    x = p["x"]
    lhs = _sum(lambda P: (-1) ** P * x ** (2 * P) * _psi_ratio(2 * P),
               policy, start=1, series=True)
    return Sides.from_results(lhs, _exact(-0.5 * sp.log_sinhc(PI * x)))


# -- E6/E7: reciprocal products and the tan/tanh product ---------------------

def _ls1rs1(p, policy):
    x, s = p["x"], p["s"]
    lhs = E.multisection_lhs_product(SequenceOracle.log1p_power(x**s, s, -1),
                                     ia.q_power_scheme(2), policy)
    rhs = cmath.exp(-sp.log_dieckmann_product(x, 0.0, s))
    return Sides.from_results(lhs, _exact(rhs.real), rhs_imag=rhs.imag)


LS2_GAMMA_THRESHOLD = 0.01


def _ls2_log_factor(x, n, j):
    """``log`` of the level-``j`` factor, without the ``2^j`` exponent."""
    y = x / 2.0 ** (j + 1)
    if abs(y) > LS2_GAMMA_THRESHOLD:
        acc = cmath.log(1 + (-(2.0**j) / x) ** n) - 0.5 * n * math.log(PI)
        for k in range(1, n + 1):
            w = y * cmath.exp(1j * PI * (2 * k + 1) / n)
            acc += sp.log_gamma(-0.5 - w) - sp.log_gamma(-w)
        return acc.real
    # log prod_n (1 + (y/n)^n)/(1 + (y/(n - 1/2))^n) as a Hurwitz series
    acc, P = 0.0, 1
    while True:
        t = (-1) ** (P + 1) * y ** (n * P) / P * (sp.hurwitz_zeta(n * P, 1.0)
                                                   - sp.hurwitz_zeta(n * P, 0.5))
        acc += t
        if abs(t) <= E.EPS * 1e-2 * abs(acc) or P > 400:
            return acc
        P += 1


def _ls2(p, policy):
    x, n = p["x"], p["n"]
    lhs = _sum(lambda j: 2.0**j * _ls2_log_factor(x, n, j), policy)
    rhs = -sp.log_dieckmann_product(x, 0.0, n).real
    return _exp_sides(lhs, rhs)


def _ls5d(p, policy):
    x = p["x"]
    # (4^j/(2 x^2)) tan(z) tan(conj z) = |tan(z)/z|^2 with z = (1+i) x/2^j
    lhs = _sum(lambda j: 2.0**j * 2.0 * sp.log_tan_ratio(complex(x, x) / 2.0**j).real,
               policy, start=1)
    rhs = 16 * x**4 / (math.cosh(2 * x) - math.cos(2 * x)) ** 2
    return Sides(math.exp(lhs.value), rhs, lhs.j_used, 0, lhs.converged)


# -- E8: zeta power series --------------------------------------------------

def _g1(p, policy):
    x, k = p["x"], p["k"]
    lhs = _sum(lambda j: (-1) ** (j + 1) * x ** (2 * j * k) * sp.hurwitz_zeta(2 * j * k, 1.0) / j,
               policy, start=1, series=True)
    w = (-1j) ** k / (PI * x) ** k
    for j in range(1, k + 1):
        w *= cmath.sin((-1) ** ((2 * j - 1) / (2 * k)) * PI * x)
    return Sides(lhs.value, cmath.log(w).real, lhs.j_used, 0, lhs.converged,
                 detail={"rhs_imag": cmath.log(w).imag})


def _g2(p, policy):
    x, k = p["x"], p["k"]
    K = 2 * k + 1
    lhs = _sum(lambda j: (-1) ** (j + 1) * x ** (K * j) * sp.hurwitz_zeta(K * j, 1.0) / j,
               policy, start=1, series=True)
    acc = -sp.log_gamma(x + 1)
    for j in range(1, 2 * k + 1):
        u = (-1) ** (j * (2 + 2 * k) / K)
        acc += cmath.log(cmath.sin(PI * u * x) / PI) + sp.log_gamma((-1) ** (j * (2 + 2 * k) / K + 1) * x)
    return Sides(lhs.value, acc.real, lhs.j_used, 0, lhs.converged, detail={"rhs_imag": acc.imag})


def _st3x(p, policy):
    x = p["x"]
    lhs = _sum(lambda k: x**k * sp.hurwitz_zeta(3 * k, 1.0) / k, policy, start=1, series=True)
    y = math.copysign(abs(x) ** (1 / 3), x)
    rhs = (sp.log_gamma(1 - y) + sp.log_gamma(1 + y * complex(1, SQRT3) / 2)
           + sp.log_gamma(1 + y * complex(1, -SQRT3) / 2))
    return Sides(lhs.value, rhs.real, lhs.j_used, 0, lhs.converged, detail={"rhs_imag": rhs.imag})


# -- E9: the exp(-pi (2m+1)) product chain -------------------------------------

def _h1a_closed():
    return 2 ** 0.25 * math.exp(-PI / 24) / (1 + math.exp(-PI))


def _ls3d_closed():
    return math.log((1 + math.exp(-PI)) * math.exp(PI / 12) / math.sqrt(2))


def _ls3f_closed():
    return math.log((1 + math.exp(-PI)) ** 2 * math.exp(PI / 12) / math.sqrt(2))


def _h1a(p, policy):
    # q = 1 multisection of log(1 + exp(-pi (2m+1)))
    seq = SequenceOracle(lambda m: np.log1p(np.exp(-PI * (2 * m + 1))))
    lhs = E.multisection_lhs(seq, _flag(0), policy)
    return _exp_sides(lhs, math.log(_h1a_closed()))


def _ls3b(p, policy):
    def inner(k):
        s = _sum(lambda j: _inv_sinh(2 * k * PI * 2.0**j), policy)
        return (-1) ** k * math.exp(-k * PI) / k * s.value

    lhs = _sum(inner, policy, start=1, series=True)
    return Sides.from_results(lhs, _exact(-2 * math.log(_h1a_closed())))


def _h25p1p1(p, policy):
    k = p["k"]
    lhs = _sum(lambda j: _inv_sinh(2 * k * PI * 2.0**j), policy)
    rhs = 1 / math.tanh(2 * k * PI) - 1 + _inv_sinh(2 * k * PI)
    return Sides.from_results(lhs, _exact(rhs))


def _ls3d_sum(policy):
    return _sum(lambda k: (-1) ** k * math.exp(-k * PI) / math.tanh(k * PI) / k,
                policy, start=1, series=True)


def _ls3f_sum(policy):
    return _sum(lambda k: (-1) ** k * math.exp(-2 * k * PI) * _inv_sinh(k * PI) / k,
                policy, start=1, series=True)


def _ls3d(p, policy):
    return Sides.from_results(_ls3d_sum(policy), _exact(_ls3d_closed()))


def _ls3e(p, policy):
    d = _ls3d_sum(policy)
    rhs = EvalResult(d.value + math.log1p(math.exp(-PI)), d.abs_error_estimate, d.j_used, 0,
                     d.converged)
    return Sides.from_results(_ls3f_sum(policy), rhs)


def _ls3f(p, policy):
    return Sides.from_results(_ls3f_sum(policy), _exact(_ls3f_closed()))


def _h1lb(p, policy):
    def level(j):
        d = 2.0**j

        def inner(k):
            e = math.exp(-4 * k * PI * d)
            odd = math.exp(-2 * k * PI * d) / (1 - e)   # sum_n exp(-2 k pi (2n-1) 2^j)
            even = e / (1 - e)                           # sum_n exp(-4 k pi n 2^j)
            return (-1) ** k / k * math.exp(-k * PI) * (-odd + even)

        return d * _sum(inner, policy, start=1, series=True).value

    lhs = _sum(level, policy)
    return Sides.from_results(lhs, _exact(math.log(_h1a_closed())))


def _cj_inner(k, policy):
    return _sum(lambda j: 2.0**j * _exp_over_cosh(k * PI * (2.0**j + 1), k * PI * 2.0**j), policy)


def _h1ld(p, policy):
    lhs = _sum(lambda k: (-1) ** k / k * _cj_inner(k, policy).value, policy, start=1, series=True)
    return Sides.from_results(lhs, _exact(_ls3f_closed()))


def _cj(p, policy):
    k = p["k"]
    return Sides.from_results(_cj_inner(k, policy),
                              _exact(math.exp(-2 * k * PI) * _inv_sinh(k * PI)))


# -- E10: the telescoping choice on 1 + x^2/m^2 ---------------------------------

def _t2(p, policy):
    x = p["x"]
    lhs = E.multisection_lhs_product(SequenceOracle.log1p_power(x * x, 2),
                                     ia.telescoping_scheme(1), policy)
    return Sides.from_results(lhs, _exact(math.exp(sp.log_sinhc(PI * x))))


def _math1(p, policy):
    x, j = p["x"], p["j"]
    r = E.progression_sum(SequenceOracle.log1p_power(x * x, 2).logarithm(),
                          2.0 ** (j + 1), 2.0**j, policy)
    return _exp_sides(r, sp.log_cosh(PI * x / 2.0 ** (j + 1)))


def _math1a(p, policy):
    x, j = p["x"], p["j"]
    r = E.progression_sum(SequenceOracle.log1p_power(x * x, 2).logarithm(),
                          2.0 ** (j + 1), 0.0, policy)
    return _exp_sides(r, sp.log_sinhc(PI * x / 2.0 ** (j + 1)))


def _t2a_term(x, j):
    y = PI * x / 2.0 ** (j + 1)
    return sp.log_cosh(y) / (j + 1) + sp.log_sinhc(y) / ((j + 1) * (j + 2))


def _t2a(p, policy):
    x = p["x"]
    return _exp_sides(_sum(lambda j: _t2a_term(x, j), policy), sp.log_sinhc(PI * x))


def _t2b(p, policy):
    x = p["x"]

    def term(j):
        y = PI * x / 2.0 ** (j + 1)
        return (sp.log_cosh(y) + sp.log_sinhc(y) / (j + 2)) / (j + 1)

    lhs = _sum(term, policy, start=1)
    return Sides.from_results(lhs, _exact(0.5 * sp.log_sinhc(PI * x / 2)))


def _t2c(p, policy):
    x = p["x"]

    # coth(y) = 1/y + (coth(y) - 1/y); the 1/y parts sum to 1/(2 pi x) exactly
    def term(j):
        y = PI * x / 2.0 ** (j + 1)
        return 2.0 ** (-j - 1) / (j + 1) * (math.tanh(y) + sp.coth_minus_inv(y) / (j + 2))

    rest = _sum(term, policy, start=1)
    lhs = EvalResult(1 / (2 * PI * x) + rest.value, rest.abs_error_estimate, rest.j_used, 0,
                     rest.converged)
    return Sides.from_results(lhs, _exact(1 / math.tanh(PI * x / 2) / 4))


def _t2d(p, policy):
    x = p["x"]

    # csch(y)^2 = 1/y^2 + (csch(y)^2 - 1/y^2); the 1/y^2 parts sum to 1/(2 pi^2 x^2)
    def term(j):
        y = PI * x / 2.0 ** (j + 1)
        sech2 = 1 / math.cosh(y) ** 2
        return 2.0 ** (-2 * j - 2) / (j + 1) * (sech2 - sp.csch2_minus_inv2(y) / (j + 2))

    rest = _sum(term, policy, start=1)
    lhs = EvalResult(-1 / (2 * PI**2 * x**2) + rest.value, rest.abs_error_estimate,
                     rest.j_used, 0, rest.converged)
    rhs = -(_inv_sinh(PI * abs(x) / 2) ** 2) / 8
    return Sides.from_results(lhs, _exact(rhs))


def _t2x(p, policy):
    x = p["x"]

    # (2 cos y)^(1/(j+1)) (sin y/(2 pi x))^(1/((j+1)(j+2))) with y = pi x/2^(j+1):
    # the powers of 2 cancel against 1/y, leaving cos y and sin(y)/y
    def term(j):
        y = PI * x / 2.0 ** (j + 1)
        return math.log(math.cos(y)) / (j + 1) + math.log(
            math.sin(y) / y) / ((j + 1) * (j + 2))

    lhs = _sum(term, policy, start=1)
    rhs = 0.5 * math.log(2 / (PI * x) * math.sin(PI * x / 2))
    return _exp_sides(lhs, rhs)


def _t2a_gamma(p, policy):
    x = p["x"]
    w = complex(1, -SQRT3)

    def term(j):
        a, b = 2.0 ** (-j - 1) * x, 2.0 ** (-j - 2) * x * w
        odd = 1.5 * math.log(PI) - _re_loggamma(0.5 + a) - 2 * _re_loggamma(0.5 - b)
        even = -_re_loggamma(1 + a) - 2 * _re_loggamma(1 - b)
        return odd / (j + 1) + even / ((j + 1) * (j + 2))

    lhs = _sum(term, policy)
    rhs = -_re_loggamma(x + 1) - 2 * _re_loggamma(1 - x * w / 2)
    return _exp_sides(lhs, rhs)


# -- E11: Bernoulli weights on exp(-z m) ---------------------------------------

def _bern_f(p, j):
    d = 2 * p + 1
    return float(sp.bernoulli_poly(d, j) / d)


def _inv_expm1(w):
    """``1/(e^w - 1)`` for ``w > 0``."""
    return math.exp(-w) / -math.expm1(-w)


def _eq3p3d(p, policy):
    z, P = p["z"], p["p"]
    # e^(z 2^j)/(e^(z 2^(j+1)) - 1) = 1/(2 sinh(z 2^j))
    lhs = _sum(lambda j: _bern_f(P, j) * 0.5 * _inv_sinh(z * 2.0**j), policy, start=1)
    rhs = _sum(lambda j: j ** (2 * P) * _inv_expm1(z * 2.0 ** (j + 1)), policy, start=1)
    return Sides.from_results(lhs, rhs)


def _summation_by_parts(p, policy):
    z, P = p["z"], p["p"]
    d = 2 * P + 1

    def g(j):
        return -_inv_expm1(z * 2.0**j)          # 1/(1 - e^(z 2^j))

    def f(j):
        return sp.bernoulli_poly(d, j) / d       # exact

    lhs = _sum(lambda j: float(f(j)) * (g(j + 1) - g(j)), policy, start=1)
    rhs = _sum(lambda j: -g(j + 1) * float(f(j + 1) - f(j)), policy, start=1)
    # the difference of f is exactly j^(2p)
    delta_ok = all(f(j + 1) - f(j) == Fraction(j) ** (2 * P) for j in range(1, 40))
    return Sides(lhs.value, rhs.value, max(lhs.j_used, rhs.j_used), 0,
                 lhs.converged and rhs.converged and delta_ok,
                 detail={"delta_f_is_power": delta_ok, "boundary_f1": str(f(1))})


# -- E12: theta functions ----------------------------------------------------------

def _nome(x, j):
    return math.exp(-x * 4.0 ** (j + 1))


def _eq8a(p, policy):
    x, P = p["x"], p["p"]
    lhs = _sum(lambda j: _bern_f(P, j) * sp.theta2(_nome(x, j)), policy, start=1)
    rhs = _sum(lambda j: j ** (2 * P) * sp.theta3_minus_one(_nome(x, j)), policy, start=1)
    return Sides.from_results(lhs, rhs)


def _theta_rhs(x):
    return _exact(sp.theta3_minus_one(math.exp(-x)))


def _eq8b1(p, policy):
    x = p["x"]
    lhs = _sum(lambda j: sp.theta2(_nome(x, j)) / (j + 1)
               + sp.theta3_minus_one(_nome(x, j)) / ((j + 1) * (j + 2)), policy)
    return Sides.from_results(lhs, _theta_rhs(x))


def _eq8d1(p, policy):
    x = p["x"]
    lhs = _sum(lambda j: (-j * j + j + 1) * sp.theta2(_nome(x, j))
               + 2 * j * sp.theta3_minus_one(_nome(x, j)), policy)
    return Sides.from_results(lhs, _theta_rhs(x))


def _s1(p, policy):
    x, j = p["x"], p["j"]
    lhs = E.progression_sum(SequenceOracle.gaussian(x), 2.0 ** (j + 1), 0.0, policy)
    return Sides.from_results(lhs, _exact(0.5 * sp.theta3_minus_one(_nome(x, j))))


def _math2(p, policy):
    x, j = p["x"], p["j"]
    lhs = E.progression_sum(SequenceOracle.gaussian(x), 2.0 ** (j + 1), 2.0**j, policy)
    return Sides.from_results(lhs, _exact(0.5 * sp.theta2(_nome(x, j))))


# -- registry -------------------------------------------------------------------

def _x(default, lo, hi, open_lo=False, open_hi=False, check=None, doc=""):
    return Param("x", default, float, lo, hi, open_lo, open_hi, check, doc)


X_POS = _x(1.0, 0.0, 10.0, open_lo=True)
X_UNIT = _x(0.5, -1.0, 1.0, open_lo=True, open_hi=True, check=_nonzero, doc="|x| < 1")
J_LEVEL = Param("j", 0, int, 0, 40, doc="level of the inner sum")

LS3E2_REF = "Ls3e2"

CASES = [
    IdentityCase(
        "E1.sinh-product", "q-multisection of prod (1 + x^2/m^2) equals sinh(pi x)/(pi x)",
        "Ls", "simple application",
        (X_POS, Param("q", 1.0, float, -3.0, 3.0, open_lo=True, open_hi=True)), _sinh_product),
    IdentityCase(
        "E1.start", "series form: sum of q-weighted logs equals log(sinh(pi x)/(pi x))",
        "Start", "simple application",
        (X_POS, Param("q", 1.0, float, -3.0, 3.0, open_lo=True, open_hi=True)), _start),
    IdentityCase(
        "E2.st1a", "sum_{j,n} 1/(n(n-1) 2^(2+2j) + x^2 + 4^j) = (pi x coth(pi x) - 1)/(2 x^2)",
        "St1a", "solves the double summation",
        (X_POS,), _st1a),
    IdentityCase(
        "E2.st1b", "inner sum over n equals pi tanh(pi x/2^(j+1))/(2^(j+2) x)",
        "St1b", "solves the double summation",
        (X_POS, J_LEVEL), _st1b),
    IdentityCase(
        "E2.h43", "sum_j tanh(x/2^(j+1))/2^j = 2 (x coth x - 1)/x",
        "H43", "solves the double summation",
        (X_POS,), _h43),
    IdentityCase(
        "E3.st3", "sum_{j,n} j log(1 + x/(4^j (2n-1)^2)) = sum_{j,n} log(1 + x/(n^2 4^(j+1)))",
        "St3", "by differentiating \\eqref{Start} with respect to",
        (X_POS,), _st3),
    IdentityCase(
        "E3.st4a", "sum_{j>=1} j tanh(x/2^(j+1))/2^j = (2/x) sum_j (y_j coth y_j - 1)",
        "St4a", "by differentiating \\eqref{Start} with respect to",
        (X_POS,), _st4a),
    IdentityCase(
        "E4.ls3e2", "Hurwitz power series equals log(-x^k prod Gamma(-x e^(2 pi i j/k)))",
        LS3E2_REF, "leading to the identity",
        (X_UNIT, Param("k", 2, int, 2, 12)), _ls3e2,
        constraint=_gamma_side_floor(lambda p: p["k"])),
    IdentityCase(
        "E5.ls3e2p", "polygamma power series equals (1/k) log(-x^k prod Gamma(...))",
        "Ls3e2p", "can also be rewritten using",
        (X_UNIT, Param("k", 3, int, 2, 12)), _ls3e2p,
        constraint=_gamma_side_floor(lambda p: p["k"])),
    IdentityCase(
        "E5.lk2", "k = 2 polygamma series equals (1/2) log(pi x/sin(pi x))",
        "Lk2", "can also be rewritten using",
        (_x(0.3, -1.0, 1.0, True, True, _nonzero),), _lk2),
    IdentityCase(
        "E5.lk3", "k = 3 polygamma series equals (1/3) log(x^2 |Gamma(x/2 - i sqrt3 x/2)|^2 Gamma(1-x))",
        "Lk3", "can also be rewritten using",
        (_x(0.5, -1.0, 1.0, True, True, _nonzero),), _lk3,
        constraint=_gamma_side_floor(lambda p: 3)),
    IdentityCase(
        "E5.leven", "x := i x, k := 2k: alternating polygamma series vs log of a Gamma product",
        "Leven", "can also be rewritten using",
        (X_UNIT, Param("k", 1, int, 1, 7, check=_odd_k,
                        doc="odd k; for even k the two sides differ in sign")), _leven,
        constraint=_gamma_side_floor(lambda p: 2 * p["k"])),
    IdentityCase(
        "E5.lodd", "x := i x, k := 2k+1: complex polygamma series vs log of a Gamma product",
        "Lodd", "can also be rewritten using",
        (X_UNIT, Param("k", 1, int, 1, 6)), _lodd),
    IdentityCase(
        "E5.lodd2ar", "alternating k = 2 polygamma series equals (1/2) log(pi x/sinh(pi x))",
        "Lodd2aR", "can also be rewritten using",
        (X_UNIT,), _lodd2ar),
    IdentityCase(
        "E6.ls1rs1", "2^j multisection of 1/(1 + x^s/m^s) against the Gamma-root closed form",
        "Ls1Rs1", "tested numerically for $s\\geq 2$",
        (_x(0.5, 0.0, 3.0, open_lo=True), Param("s", 2, int, 2, 12)), _ls1rs1),
    IdentityCase(
        "E6.ls2", "per-level Gamma-ratio product equals prod 1/(1 + x^n/m^n)",
        "Ls2", "tested numerically for $s\\geq 2$",
        (_x(0.3, 0.0, 1.0, open_lo=True), Param("n", 2, int, 2, 12)), _ls2),
    IdentityCase(
        "E7.ls5d", "prod_j ((4^j/(2x^2)) tan((1+i)x/2^j) tan((1-i)x/2^j))^(2^j) = 16x^4/(cosh 2x - cos 2x)^2",
        "Ls5d", "after further simplification and the redefinition",
        (_x(0.5, 0.0, 2.0, open_lo=True),), _ls5d),
    IdentityCase(
        "E8.g1", "sum_j (-1)^(j+1) x^(2jk) zeta(2jk)/j against the sine-product log",
        "G1", "we find the identities",
        (X_UNIT, Param("k", 2, int, 1, 8)), _g1),
    IdentityCase(
        "E8.g2", "sum_j (-1)^(j+1) x^((2k+1)j) zeta((2k+1)j)/j against the sine-Gamma log",
        "G2", "we find the identities",
        (X_UNIT, Param("k", 1, int, 1, 8)), _g2),
    IdentityCase(
        "E8.st3x", "sum_k x^k zeta(3k)/k = log of three Gamma values at cube roots",
        "St3x", "we find the identities",
        (_x(0.5, -1.0, 1.0, True, True),), _st3x, default_tol=1e-12),
    IdentityCase(
        "E9.h1a", "prod_m (1 + exp(-pi(2m+1))) = 2^(1/4) exp(-pi/24)/(1 + exp(-pi))",
        "H1a", "to obtain the additive multisection", (), _h1a),
    IdentityCase(
        "E9.ls3b", "sum_{j,k} exp(-k pi)(-1)^k/(k sinh(2 k pi 2^j)) = -2 log(H1a closed form)",
        "Ls3B", "to obtain the additive multisection", (), _ls3b),
    IdentityCase(
        "E9.h25p1p1", "sum_j csch(2 k pi 2^j) = coth(2 k pi) - 1 + csch(2 k pi)",
        "H25p1p1", "to obtain the additive multisection",
        (Param("k", 1.0, float, 0.0, 50.0, open_lo=True),), _h25p1p1),
    IdentityCase(
        "E9.ls3d", "sum_k (-1)^k exp(-k pi) coth(k pi)/k = log((1 + e^-pi) e^(pi/12)/sqrt 2)",
        "Ls3D", "to obtain the additive multisection", (), _ls3d, default_tol=1e-12),
    IdentityCase(
        "E9.ls3e", "the two k-series differ by log(1 + e^-pi)",
        "Ls3E", "to obtain the additive multisection", (), _ls3e, default_tol=1e-12),
    IdentityCase(
        "E9.ls3f", "sum_k (-1)^k exp(-2 k pi)/(k sinh(k pi)) = log((1 + e^-pi)^2 e^(pi/12)/sqrt 2)",
        "Ls3F", "to obtain the additive multisection", (), _ls3f, default_tol=1e-12),
    IdentityCase(
        "E9.h1lb", "q = 2 multisection of log(1 + exp(-pi(2m+1))) as a triple sum",
        "H1Lb", "to obtain the additive multisection", (), _h1lb),
    IdentityCase(
        "E9.h1ld", "transposed double sum with cosh denominators equals the Ls3F closed form",
        "H1Ld", "to obtain the additive multisection", (), _h1ld),
    IdentityCase(
        "E9.cj", "sum_j 2^j exp(-k pi (2^j + 1))/cosh(k pi 2^j) = exp(-2 k pi)/sinh(k pi)",
        "Cj", "suggests that the inner sum of",
        (Param("k", 1.0, float, 0.0, 50.0, open_lo=True),), _cj, default_tol=1e-12),
    IdentityCase(
        "E10.t2", "telescoping multisection of 1 + x^2/m^2 equals sinh(pi x)/(pi x)",
        "T2", "leading to the identity", (X_POS,), _t2),
    IdentityCase(
        "E10.math1", "prod_n (1 + x^2/((2n-1)^2 4^j)) = cosh(pi x/2^(j+1))",
        "Math1", "leading to the identity", (X_POS, J_LEVEL), _math1),
    IdentityCase(
        "E10.math1a", "prod_n (1 + x^2/(4 n^2 4^j)) = (2^(j+1)/(pi x)) sinh(pi x/2^(j+1))",
        "Math1a", "leading to the identity", (X_POS, J_LEVEL), _math1a),
    IdentityCase(
        "E10.t2a", "prod_j cosh^(1/(j+1)) (sinh y/y)^(1/((j+1)(j+2))) = sinh(pi x)/(pi x)",
        "T2a", "leading to the identity", (X_POS,), _t2a),
    IdentityCase(
        "E10.t2b", "log form of T2a from j = 1 equals (1/2) log(sinh(pi x/2)/(pi x/2))",
        "T2B", "leading to the identity", (X_POS,), _t2b),
    IdentityCase(
        "E10.t2c", "x-derivative of T2B: tanh/coth level sum equals coth(pi x/2)/4",
        "T2c", "leading to the identity", (X_POS,), _t2c),
    IdentityCase(
        "E10.t2d", "second x-derivative: sech^2/csch^2 level sum equals -csch(pi x/2)^2/8",
        "T2d", "leading to the identity", (X_POS,), _t2d),
    IdentityCase(
        "E10.t2x", "x := i x in T2a: cos/sin level product equals sqrt((2/(pi x)) sin(pi x/2))",
        "T2x", "leading to the identity",
        (_x(1.0, 0.0, 2.0, open_lo=True, open_hi=True,
            doc="real-valued for 0 < x < 2; multiples of 4 are poles"),), _t2x),
    IdentityCase(
        "E10.t2a-gamma", "telescoping multisection of 1 + x^3/m^3 via Gamma values",
        "t2a", "leading to the identity",
        (_x(1.0, -1.0, 10.0, open_lo=True),), _t2a_gamma),
    IdentityCase(
        "E11.eq3p3d", "Bernoulli-weighted exp(-z m) transformation",
        "Eq3p3d", "leading to the transformation",
        (Param("z", 0.5, float, 0.0, 50.0, open_lo=True), Param("p", 1, int, 1, 8)), _eq3p3d),
    IdentityCase(
        "E11.summation-by-parts", "the same transformation read as summation by parts",
        "Eq3p3d (summation by parts)", "interpreted as a summation by parts identity",
        (Param("z", 0.5, float, 0.0, 50.0, open_lo=True), Param("p", 1, int, 1, 8)),
        _summation_by_parts),
    IdentityCase(
        "E12.eq8a", "Bernoulli-weighted theta_2 sum equals j^(2p)-weighted theta_3 sum",
        "Eq8A", "by recognizing that",
        (_x(1.0, 0.0, 20.0, open_lo=True), Param("p", 1, int, 1, 8)), _eq8a),
    IdentityCase(
        "E12.eq8b1", "telescoping theta sum equals theta_3(e^-x) - 1",
        "Eq8B1", "by recognizing that", (_x(1.0, 0.0, 20.0, open_lo=True),), _eq8b1),
    IdentityCase(
        "E12.eq8d1", "Ex312 theta sum equals theta_3(e^-x) - 1",
        "Eq8D1", "by recognizing that", (_x(1.0, 0.0, 20.0, open_lo=True),), _eq8d1),
    IdentityCase(
        "E12.s1", "sum_n exp(-4 x n^2 4^j) = (theta_3(exp(-x 4^(j+1))) - 1)/2",
        "S1", "by recognizing that", (_x(1.0, 0.0, 20.0, open_lo=True), J_LEVEL), _s1),
    IdentityCase(
        "E12.math2", "sum_n exp(-x (2n-1)^2 4^j) = theta_2(exp(-x 4^(j+1)))/2",
        "Math2", "by recognizing that", (_x(1.0, 0.0, 20.0, open_lo=True), J_LEVEL), _math2),
]
