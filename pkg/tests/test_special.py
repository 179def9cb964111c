"""Special functions against mpmath (used here only as an independent oracle)."""

import cmath
import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multisection import special as sp

mp.mp.dps = 30


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


class TestBernoulli:
    def test_numbers(self):
        for n in range(0, 40):
            assert float(sp.bernoulli_number(n)) == pytest.approx(float(mp.bernoulli(n)),
                                                                  rel=1e-15, abs=1e-300)

    def test_small_exact(self):
        assert sp.bernoulli_number(1) == Fraction(-1, 2)
        assert sp.bernoulli_number(12) == Fraction(-691, 2730)
        assert sp.bernoulli_number(13) == 0

    @given(st.integers(0, 12), st.fractions(min_value=-20, max_value=20, max_denominator=30))
    def test_poly_difference(self, n, x):
        # B_n(x+1) - B_n(x) = n x^(n-1)
        d = sp.bernoulli_poly(n, x + 1) - sp.bernoulli_poly(n, x)
        assert d == (n * x ** (n - 1) if n else 0)

    def test_poly_vs_mpmath(self):
        for n in (1, 3, 5, 7):
            for x in (0, 1, 2, Fraction(5, 3)):
                assert float(sp.bernoulli_poly(n, x)) == pytest.approx(
                    float(mp.bernpoly(n, mp.mpf(x.numerator if isinstance(x, Fraction) else x)
                                      / (x.denominator if isinstance(x, Fraction) else 1))),
                    rel=1e-14, abs=1e-14)


class TestGamma:
    @pytest.mark.parametrize("z", [0.5, 1, 2.5, 10, 30.7, 170.2, 1e-3])
    def test_real(self, z):
        want = complex(mp.loggamma(z))
        assert abs(sp.log_gamma(z) - want) <= 1e-14 * max(1.0, abs(want))

    @given(st.floats(-30, 30), st.floats(-30, 30))
    def test_complex_branch(self, x, y):
        z = complex(x, y + 0.0)  # mpmath has no signed zero
        if abs(z - round(x)) < 1e-3 and round(x) <= 0:
            return
        want = complex(mp.loggamma(mp.mpc(x, y)))
        got = sp.log_gamma(z)
        assert abs(got - want) <= 1e-12 * max(1.0, abs(want))

    def test_signed_zero_selects_side_of_cut(self):
        above, below = sp.log_gamma(complex(-1.5, 0.0)), sp.log_gamma(complex(-1.5, -0.0))
        assert above.imag == pytest.approx(-2 * math.pi)
        assert below.imag == pytest.approx(0.0) or below.imag == pytest.approx(2 * math.pi)
        assert above.real == below.real

    @pytest.mark.parametrize("z", [0, -1, -7])
    def test_poles(self, z):
        with pytest.raises(sp.PoleError):
            sp.log_gamma(z)

    def test_gamma_values(self):
        assert sp.gamma(5).real == pytest.approx(24, rel=1e-14)
        assert sp.gamma(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    @pytest.mark.parametrize("z", [0.3, 1, 4.5, complex(0.5, 0.5), complex(1.5, -2), complex(-2.5, 1)])
    def test_digamma(self, z):
        assert rel(sp.digamma(z), mp.digamma(z)) < 1e-13

    @pytest.mark.parametrize("n,x", [(0, 0.7), (1, 0.5), (3, 1 / 3), (10, 2 / 3), (40, 0.25)])
    def test_polygamma(self, n, x):
        assert rel(sp.polygamma(n, x), mp.polygamma(n, x)) < 1e-13


class TestZeta:
    @given(st.floats(1.01, 200), st.floats(0.01, 50))
    def test_hurwitz(self, s, a):
        if -s * math.log(a) > math.log(1.7e308):
            with pytest.raises(OverflowError):
                sp.hurwitz_zeta(s, a)
            return
        # mpmath needs extra digits for large s and a
        with mp.workdps(120):
            assert rel(sp.hurwitz_zeta(s, a), mp.zeta(s, a)) < 1e-13

    @pytest.mark.parametrize("s", [1.0001, 1.2, 2, 3.5, 39, 40, 90])
    def test_riemann(self, s):
        assert rel(sp.riemann_zeta(s), mp.zeta(s)) < 1e-13

    def test_zeta_two(self):
        assert sp.riemann_zeta(2) == pytest.approx(math.pi**2 / 6, rel=1e-15)

    @pytest.mark.parametrize("s", [1, 1.5, 2, 7])
    def test_eta(self, s):
        assert rel(sp.dirichlet_eta(s), mp.altzeta(s)) < 1e-14

    @pytest.mark.parametrize("s,a", [(1, 1), (2, 0), (0.5, 2)])
    def test_domain(self, s, a):
        with pytest.raises(ValueError):
            sp.hurwitz_zeta(s, a)


class TestTheta:
    @pytest.mark.parametrize("q", [0.0, 1e-30, 0.01, 0.3, 0.9, 0.99])
    def test_vs_jtheta(self, q):
        assert sp.theta2(q) == pytest.approx(float(mp.jtheta(2, 0, q)), rel=1e-14, abs=1e-300)
        assert sp.theta3(q) == pytest.approx(float(mp.jtheta(3, 0, q)), rel=1e-14)

    @pytest.mark.parametrize("q", [math.exp(-16), math.exp(-64), 1e-200])
    def test_minus_one_keeps_relative_accuracy(self, q):
        want = 2 * mp.nsum(lambda n: mp.mpf(q) ** (n * n), [1, mp.inf])
        assert rel(sp.theta3_minus_one(q), want) < 1e-14

    @pytest.mark.parametrize("q", [-0.1, 1.0])
    def test_nome_domain(self, q):
        with pytest.raises(ValueError):
            sp.theta3(q)


class TestQProducts:
    @pytest.mark.parametrize("a,q", [(0.1, 0.1), (0.5, 0.9), (-0.3, 0.5), (0.3, -0.5),
                                     (complex(0.2, 0.4), complex(0.3, 0.2))])
    def test_pochhammer(self, a, q):
        want = complex(mp.qp(a, q))
        assert rel(sp.q_pochhammer(a, q), want) < 1e-13
        assert rel(cmath.exp(sp.log_q_pochhammer(a, q)), want) < 1e-13

    def test_vanishing(self):
        with pytest.raises(sp.PoleError):
            sp.log_q_pochhammer(4.0, 0.5)

    @pytest.mark.parametrize("mu", [0, 1, 2, 5])
    @pytest.mark.parametrize("q", [0.05, 0.5, 0.95])
    def test_lambert(self, mu, q):
        for signed in (False, True):
            want = mp.nsum(lambda n: n**mu * q**n / (1 + (1 if signed else -1) * q**n),
                           [1, mp.inf])
            assert rel(sp.lambert_series(mu, q, signed), want) < 1e-13

    @pytest.mark.parametrize("x,b,n", [(0.5, 0, 2), (0.3, 0, 4), (1.2, 0.5, 3), (0.7, 2, 6)])
    def test_dieckmann(self, x, b, n):
        want = mp.nprod(lambda k: 1 + (mp.mpf(x) / (k + b)) ** n, [1, mp.inf])
        assert rel(sp.dieckmann_product(x, b, n), want) < 1e-12


@pytest.fixture
def high_precision():
    # tiny arguments need enough digits to survive the cancellation in the oracle
    with mp.workdps(400):
        yield


@pytest.mark.usefixtures("high_precision")
class TestElementary:
    @given(st.floats(-1.5, 1.5).filter(lambda y: abs(y) > 1e-300))
    def test_log_tan_ratio(self, y):
        want = mp.log(mp.tan(mp.mpf(y)) / mp.mpf(y))
        assert rel(sp.log_tan_ratio(y), want) < 1e-14

    def test_log_tan_ratio_complex(self):
        for y in (complex(0.1, 0.1), complex(0.4, -0.3), complex(1, 1)):
            want = complex(mp.log(mp.tan(mp.mpc(y)) / mp.mpc(y)))
            assert rel(sp.log_tan_ratio(y), want) < 1e-14

    @given(st.floats(-700, 700).filter(lambda y: y != 0))
    def test_log_sinhc(self, y):
        want = mp.log(mp.sinh(mp.mpf(y)) / mp.mpf(y))
        assert rel(sp.log_sinhc(y), want) < 1e-13

    @given(st.floats(-700, 700))
    def test_log_cosh(self, y):
        want = mp.log(mp.cosh(mp.mpf(y)))
        assert abs(sp.log_cosh(y) - float(want)) <= 1e-15 * max(1.0, abs(float(want))) \
            or rel(sp.log_cosh(y), want) < 1e-14

    @given(st.floats(1e-8, 300))
    def test_coth_minus_inv(self, y):
        want = mp.coth(mp.mpf(y)) - 1 / mp.mpf(y)
        assert rel(sp.coth_minus_inv(y), want) < 1e-13

    @given(st.floats(1e-6, 300))
    def test_csch2_minus_inv2(self, y):
        want = mp.csch(mp.mpf(y)) ** 2 - 1 / mp.mpf(y) ** 2
        assert rel(sp.csch2_minus_inv2(y), want) < 1e-12
