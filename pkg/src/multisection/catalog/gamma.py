"""Family F: Gamma-function ratios that multisect into products of themselves.

Every case compares a product (or its logarithm, or a derivative of its
logarithm) over levels ``j`` against the closed form at the top level.  The
direct product over ``m`` is available as an independent third route.
"""

from __future__ import annotations

import cmath
import math

from .. import engine as E
from .. import special as sp
from ..engine import EvalResult
from .core import IdentityCase, Param, Sides

PI = math.pi


def _level_sum(term, policy, start=0):
    def shell(j):
        v = term(j)
        return EvalResult(v, E.EPS * abs(v), j, 0, True)
    return E.shell_sum(shell, policy, j_start=start)


def _lg(z):
    return sp.log_gamma(z)


# -- F1: f(a, z) = Gamma(a+1)^2 / (Gamma(a+1-iz) Gamma(a+1+iz)) ---------------

def log_f(a, z):
    """``log f(a, z)`` with complex Gamma values."""
    return 2 * _lg(a + 1) - _lg(a + 1 - 1j * z) - _lg(a + 1 + 1j * z)


def log_f_real(a, x):
    """``log f(a, x)`` for real ``x`` through ``2 Re log Gamma``."""
    return 2 * _lg(a + 1).real - 2 * _lg(complex(a + 1, x)).real


def direct_f(a, z, terms=200000):
    """``prod_{m>=1} (1 + (z/(m+a))^2)`` by brute force, tail-corrected."""
    m = float(terms)
    acc = sum(math.log1p((z / (k + a)) ** 2) for k in range(1, terms + 1))
    # sum_{k>M} z^2/(k+a)^2 ~ z^2/(M+a+1/2)
    return math.exp(acc + z * z / (m + a + 0.5))


def _a_scaled(a, z, j):
    s = 2.0 ** (j + 1)
    return a / s - 0.5, z / s


def _gamma_ratio(p, policy):
    a, z = p["a"], p["z"]
    lhs = _level_sum(lambda j: log_f(*_a_scaled(a, z, j)), policy)
    rhs = log_f(a, z)
    return Sides(cmath.exp(rhs).real, cmath.exp(lhs.value).real, lhs.j_used, 0, lhs.converged,
                 detail={"log_top": rhs, "log_levels": lhs.value})


def _gamma_ratio_modulus(p, policy):
    a, x = p["a"], p["z"]
    lhs = _level_sum(lambda j: log_f_real(*_a_scaled(a, x, j)), policy)
    rhs = log_f_real(a, x)
    return Sides(math.exp(rhs), math.exp(lhs.value), lhs.j_used, 0, lhs.converged)


def _gamma_ratio_log(p, policy):
    a, z = p["a"], p["z"]
    lhs = _level_sum(lambda j: log_f(*_a_scaled(a, z, j)), policy)
    rhs = log_f(a, z)
    return Sides(lhs.value.real, rhs.real, lhs.j_used, 0, lhs.converged,
                 detail={"imag_levels": lhs.value.imag, "imag_top": rhs.imag})


# -- F2: the a = 0 and a = -1/2 specializations -------------------------------

def _cosh_product(p, policy):
    z = p["z"]
    lhs = _level_sum(lambda j: sp.log_cosh(PI * z / 2.0 ** (j + 1)), policy)
    return Sides(math.exp(lhs.value), math.exp(sp.log_sinhc(PI * z)), lhs.j_used, 0,
                 lhs.converged)


def _f_minus_half(p, policy):
    z = p["z"]
    # f(-1/2, z) = prod_m (1 + (z/(m - 1/2))^2) = cosh(pi z)
    return Sides(math.exp(log_f_real(-0.5, z)), math.cosh(PI * z),
                 detail={"reciprocal_reading": 1 / math.cosh(PI * z)})


# -- F3: derivatives of the log form ------------------------------------------

def _p9a(p, policy):
    a, x = p["a"], p["x"]

    def term(j):
        A = a * 2.0 ** (-j - 1) + 0.5
        return 2.0**-j * (sp.digamma(A).real - sp.digamma(complex(A, x * 2.0**-j / 2)).real)

    lhs = _level_sum(term, policy)
    rhs = 2 * sp.digamma(a + 1).real - 2 * sp.digamma(complex(a + 1, x)).real
    return Sides.from_results(lhs, EvalResult.exact(rhs))


def _p9b(p, policy):
    a, x = p["a"], p["x"]

    def term(j):
        A = a * 2.0 ** (-j - 1) + 0.5
        return 2.0**-j * sp.digamma(complex(A, x * 2.0**-j / 2)).imag

    lhs = _level_sum(term, policy)
    rhs = 2 * sp.digamma(complex(a + 1, x)).imag
    return Sides.from_results(lhs, EvalResult.exact(rhs))


# -- F4: g(a, b, z) = prod_m (1 - z/(m^2 + 2 a m + b)) -------------------------

def log_g(a, b, z):
    """``log g(a, b, z)`` from ``b/(b-z) Gamma(a-s) Gamma(a+s)/(Gamma(a-t) Gamma(a+t))``."""
    s = cmath.sqrt(a * a - b)
    t = cmath.sqrt(a * a - b + z)
    return (cmath.log(b / (b - z)) + _lg(a - s) + _lg(a + s) - _lg(a - t) - _lg(a + t))


def direct_g(a, b, z, terms=200000):
    """``prod_{m>=1} (1 - z/(m^2 + 2 a m + b))`` by brute force, tail-corrected."""
    acc = sum(math.log1p(-z / (m * m + 2 * a * m + b)) for m in range(1, terms + 1))
    return math.exp(acc - z / (terms + a + 0.5))


def g_level_args(a, b, z, j):
    """Arguments of the level-``j`` factor ``g(A, B, Z)``.

    Dividing ``((2n-1) 2^j)^2 + 2 a (2n-1) 2^j + b`` by ``4^(j+1)`` gives
    ``n^2 + 2 A n + B`` with the values returned here.
    """
    A = a / 2.0 ** (j + 1) - 0.5
    B = 0.25 + b / 4.0 ** (j + 1) - a / 2.0 ** (j + 1)
    return A, B, z / 4.0 ** (j + 1)


def _level_log_g(a, b, z, j):
    A, B, Z = g_level_args(a, b, z, j)
    # A^2 - B = (a^2 - b)/4^(j+1); the shifted form avoids the b/(b-z) factor at small levels
    s = cmath.sqrt(a * a - b) / 2.0 ** (j + 1)
    t = cmath.sqrt(a * a - b + z) / 2.0 ** (j + 1)
    return _lg(1 + A - s) + _lg(1 + A + s) - _lg(1 + A - t) - _lg(1 + A + t)


def _g_product(p, policy):
    a, b, z = p["a"], p["b"], p["z"]
    lhs = _level_sum(lambda j: _level_log_g(a, b, z, j), policy)
    rhs = log_g(a, b, z)
    return Sides(cmath.exp(lhs.value).real, cmath.exp(rhs).real, lhs.j_used, 0, lhs.converged,
                 detail={"log_levels": lhs.value, "log_top": rhs})


A_PARAM = Param("a", 1.0, float, -0.5, 50.0, open_lo=True, doc="a > -1/2 keeps every level off the poles")
Z_PARAM = Param("z", 1.0, float, -20.0, 20.0, doc="real z")


def _g_params_ok(b):
    return None if b > 0 else "b must be positive"


CASES = [
    IdentityCase(
        "F1.gamma-ratio", "f(a, z) = prod_j f(a/2^(j+1) - 1/2, z/2^(j+1)) with complex Gamma values",
        "P9p1", "satisfies the identity", (A_PARAM, Z_PARAM), _gamma_ratio),
    IdentityCase(
        "F1.gamma-ratio-modulus", "real-x form with |Gamma|^2 = exp(2 Re log Gamma)",
        "P9p1a", "because $\\Gamma(x)$ is its own complex conjugate", (A_PARAM, Z_PARAM),
        _gamma_ratio_modulus),
    IdentityCase(
        "F1.gamma-ratio-log", "sum form: sum_j log f(level j) = log f(a, z)",
        "P9p1b", "When written in sum form", (A_PARAM, Z_PARAM), _gamma_ratio_log),
    IdentityCase(
        "F2.cosh-product", "sinh(pi z)/(pi z) = prod_j cosh(pi z/2^(j+1))",
        "P9p1 (a = 0)", "reproducing the listed identity",
        (Param("z", 1.0, float, -20.0, 20.0),), _cosh_product),
    IdentityCase(
        "F2.f-minus-half", "f(-1/2, z) = cosh(pi z)",
        "P9p1 (a = -1/2)", "With $a=0,$ we have",
        (Param("z", 1.0, float, -20.0, 20.0),), _f_minus_half),
    IdentityCase(
        "F3.p9a", "a-derivative: 2^-j weighted digamma differences equal 2 psi(a+1) - 2 Re psi(a+1+ix)",
        "P9a", "two Euler sums",
        (A_PARAM, Param("x", 1.0, float, -20.0, 20.0)), _p9a, default_tol=1e-8),
    IdentityCase(
        "F3.p9b", "z-derivative: sum_j 2^-j Im psi(level j) = 2 Im psi(a+1+ix)",
        "P9b", "two Euler sums",
        (A_PARAM, Param("x", 1.0, float, -20.0, 20.0)), _p9b, default_tol=1e-8),
    IdentityCase(
        "F4.g-product", "g(a, b, z) = prod_j g(A_j, B_j, z/4^(j+1)) with the re-centred quadratic",
        "g(a,b,z) proposition", "has infinite product representation",
        (Param("a", 2.0, float, -0.5, 50.0, open_lo=True),
         Param("b", 5.0, float, 0.0, 1e4, open_lo=True, check=_g_params_ok),
         Param("z", 0.5, float, -50.0, 50.0)),
        _g_product, default_tol=1e-8),
]
