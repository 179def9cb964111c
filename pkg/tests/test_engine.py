"""Engine evaluation against direct-summation oracles and closed forms."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from multisection import engine as E
from multisection import index_algebra as ia
from multisection.engine import EvalResult, SequenceOracle, TruncationPolicy

POLICY = TruncationPolicy(target_rel_tol=1e-13)
GENERAL_2J = ia.WeightScheme(2, lambda j: 2**j, lambda j: -(2**j), "2^j")


def nu2(m):
    return (m & -m).bit_length() - 1


def direct(f, weight=lambda m: 1, M=10_000):
    return math.fsum(weight(m) * f(m) for m in range(1, M + 1))


class TestPolicy:
    @pytest.mark.parametrize("kw", [dict(target_rel_tol=0), dict(j_max_cap=0),
                                    dict(tail_rule="magic"), dict(rho_max=1.0),
                                    dict(working_precision="quad")])
    def test_rejects(self, kw):
        with pytest.raises(ValueError):
            TruncationPolicy(**kw)

    def test_tightened(self):
        assert TruncationPolicy(1e-8).tightened().target_rel_tol == 5e-9


class TestSequenceOracle:
    @pytest.mark.parametrize("seq", [SequenceOracle.log1p_power(0.3, 2),
                                     SequenceOracle.log1p_power(-0.2, 3, -1)])
    def test_log_consistent(self, seq):
        m = np.arange(1, 200, dtype=float)
        assert np.allclose(np.exp(seq.log_eval(m)), seq.eval(m), rtol=1e-15)

    @pytest.mark.parametrize("d,c,n0", [(2.0, 1.0, 5), (8.0, 4.0, 3), (4.0, 0.0, 10)])
    def test_power_tail(self, d, c, n0):
        seq = SequenceOracle.power(2.5)
        want = math.fsum((d * n - c) ** -2.5 for n in range(n0, 2_000_000))
        want += (d * 2_000_000) ** -1.5 / (1.5 * d)  # integral remainder
        assert seq.tail(d, c, n0) == pytest.approx(want, rel=1e-9)

    def test_inverse_square_tail(self):
        seq = SequenceOracle.inverse_square_plus(1.0)
        want = math.fsum(1 / ((4 * n - 2) ** 2 + 1) for n in range(8, 3_000_000))
        want += 1 / (16 * 3_000_000)
        assert seq.tail(4.0, 2.0, 8) == pytest.approx(want, rel=1e-9)

    def test_log1p_tail(self):
        seq = SequenceOracle.log1p_power(1.0, 2)
        want = math.fsum(math.log1p(1 / (2 * n - 1) ** 2) for n in range(6, 2_000_000))
        want += 1 / (4 * 2_000_000)
        assert seq.log_tail(2.0, 1.0, 6) == pytest.approx(want, rel=1e-9)

    def test_real_log_mode_rejects_nonpositive(self):
        seq = SequenceOracle(lambda m: 1 - 4 / np.asarray(m, dtype=float))
        with pytest.raises(ValueError, match="<= 0"):
            seq.logarithm().eval(np.arange(1, 10, dtype=float))


class TestMultisectionSum:
    def test_general_2j_geometric(self):
        lhs, rhs = E.eval_multisection_sum(SequenceOracle.geometric(0.5), GENERAL_2J, POLICY)
        assert lhs.value == pytest.approx(1.0, rel=1e-13)
        assert rhs.value == pytest.approx(1.0, rel=1e-13)

    def test_valuation_weight_exp(self):
        scheme = ia.polynomial_scheme([1], [1])
        lhs, rhs = E.eval_multisection_sum(SequenceOracle.geometric(math.exp(-1)), scheme, POLICY)
        oracle = direct(lambda m: math.exp(-m), lambda m: nu2(m) + 1, M=800)
        assert rhs.value == pytest.approx(oracle, rel=1e-12)
        assert lhs.value == pytest.approx(oracle, rel=1e-12)

    def test_alternating_phi_dirichlet(self):
        scheme = ia.WeightScheme(2, lambda j: (-1) ** j, lambda j: 0, "(-1)^j")
        lhs, rhs = E.eval_multisection_sum(SequenceOracle.power(2), scheme, POLICY)
        assert lhs.value == pytest.approx(math.pi**2 / 10, rel=1e-12)
        assert rhs.value == pytest.approx(math.pi**2 / 10, rel=1e-12)

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=3),
           st.lists(st.integers(-5, 5), min_size=1, max_size=3),
           st.floats(0.05, 0.8), st.sampled_from([2, 3]))
    def test_structural_on_geometric(self, pc, cc, t, b):
        assume(any(pc) or any(cc))
        scheme = ia.polynomial_scheme(pc, cc, b)
        lhs, rhs = E.eval_multisection_sum(SequenceOracle.geometric(t), scheme, POLICY)
        assert lhs.converged and rhs.converged
        scale = max(abs(rhs.value), direct(lambda m: t**m, M=2000))
        assert abs(lhs.value - rhs.value) <= 1e-11 * scale

    @given(st.floats(0.01, 0.9))
    def test_converged_error_estimate_invariant(self, t):
        lhs, rhs = E.eval_multisection_sum(SequenceOracle.geometric(t), ia.q_power_scheme(2),
                                           TruncationPolicy(1e-10))
        for r in (lhs, rhs):
            assert r.converged
            assert r.abs_error_estimate <= 1e-10 * abs(r.value)

    def test_divergent_is_flagged(self):
        harmonic = SequenceOracle(lambda m: 1.0 / np.asarray(m, dtype=float))
        policy = TruncationPolicy(1e-10, j_max_cap=12, n_max_cap=4096)
        lhs = E.multisection_lhs(harmonic, ia.q_power_scheme(1), policy)
        assert not lhs.converged


class TestMultisectionProduct:
    def test_sine_product(self):
        a = 1.0
        seq = SequenceOracle.log1p_power(-(a / math.pi) ** 2, 2)
        lhs, rhs = E.eval_multisection_product(seq, GENERAL_2J, POLICY)
        assert lhs.value == pytest.approx(math.sin(a) / a, rel=1e-12)
        assert rhs.value == pytest.approx(math.sin(a) / a, rel=1e-12)

    def test_sinh_q_one(self):
        seq = SequenceOracle.log1p_power(1.0, 2)
        lhs, rhs = E.eval_q_multisection(seq, 1, mode="product", policy=POLICY)
        assert lhs.value == pytest.approx(math.sinh(math.pi) / math.pi, rel=1e-12)
        assert rhs.value == pytest.approx(math.sinh(math.pi) / math.pi, rel=1e-12)

    def test_all_zero_shells_are_not_claimed_converged(self):
        # identically zero shells look the same as a weight that starts past the cap
        zero = ia.WeightScheme(2, lambda j: 0, lambda j: 0, "zero")
        lhs = E.multisection_lhs(SequenceOracle.geometric(0.5), zero, POLICY)
        assert lhs.value == 0.0 and not lhs.converged

    def test_zero_weight(self):
        zero = ia.WeightScheme(2, lambda j: 0, lambda j: 0, "zero")
        lhs, rhs = E.eval_multisection_product(SequenceOracle.log1p_power(0.5, 2), zero, POLICY)
        assert lhs.value == 1.0 and rhs.value == 1.0


class TestQMultisection:
    def test_q_zero_is_plain_dissection(self):
        seq = SequenceOracle.geometric(0.3)
        lhs, _ = E.eval_q_multisection(seq, 0, policy=POLICY)
        oracle = math.fsum(0.3 ** (2 * n - 1) + 0.3 ** (2 * n) for n in range(1, 200))
        assert lhs.value == pytest.approx(oracle, rel=1e-13)

    def test_q_one_exp(self):
        lhs, rhs = E.eval_q_multisection(SequenceOracle.geometric(math.exp(-1)), 1, policy=POLICY)
        assert lhs.value == pytest.approx(1 / (math.e - 1), rel=1e-12)

    def test_q_minus_one(self):
        lhs, rhs = E.eval_q_multisection(SequenceOracle.geometric(0.5), -1, policy=POLICY)
        assert lhs.value == pytest.approx(1.0, rel=1e-12)
        assert rhs.value == pytest.approx(1.0, rel=1e-12)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            E.eval_q_multisection(SequenceOracle.geometric(0.5), 1, mode="both")


class TestDouble:
    def test_power_pq(self):
        x = 0.3
        f = lambda P, Q: np.power(x, P * Q)
        lhs, rhs = E.eval_double_multisection(f, POLICY)
        oracle = math.fsum(x ** (p * q) for p in range(1, 200) for q in range(1, 200))
        assert rhs.value == pytest.approx(oracle, rel=1e-12)
        assert lhs.value == pytest.approx(oracle, rel=1e-10)

    def test_separable(self):
        lhs, rhs = E.eval_double_multisection(lambda P, Q: 2.0 ** (-P - Q), POLICY)
        assert lhs.value == pytest.approx(1.0, rel=1e-12)
        assert rhs.value == pytest.approx(1.0, rel=1e-12)


class TestLambert:
    @staticmethod
    def oracle(mu, q, sign):
        return math.fsum(n**mu * q**n / (1 + sign * q**n) for n in range(1, 3000))

    @pytest.mark.parametrize("mu,q,tol", [(1, 0.25, 1e-12), (1, 0.5, 1e-10), (2, 0.5, 1e-10)])
    def test_relation(self, mu, q, tol):
        r = E.lambert_relation_check(mu, q)
        assert r.converged and r.rel_discrepancy < tol
        assert r.direct == pytest.approx(self.oracle(mu, q, -1), rel=1e-13)

    def test_small_q_first_order(self):
        r = E.lambert_relation_check(1, 1e-9)
        assert r.direct == pytest.approx(1e-9, rel=1e-8)
        assert r.multisection == pytest.approx(1e-9, rel=1e-8)

    def test_printed_exponent_only_works_for_mu_one(self):
        assert E.lambert_relation_check(1, 0.5, j_exponent=2).rel_discrepancy < 1e-10
        assert E.lambert_relation_check(2, 0.5, j_exponent=2).rel_discrepancy > 1e-2

    @pytest.mark.parametrize("mu,q", [(1, 1.0), (1, 0.0), (0, 0.5), (1.5, 0.5)])
    def test_domain(self, mu, q):
        with pytest.raises(ValueError):
            E.lambert_relation_check(mu, q)


class TestTeixeira:
    @pytest.mark.parametrize("J", range(6))
    def test_pattern(self, J):
        n_max = 2 ** (J + 2)
        c = E.teixeira_weight_pattern(J, n_max)
        for n in range(1, n_max + 1):
            assert c[n - 1] == (1 - 2 ** (J + 1) if n % 2 ** (J + 1) == 0 else 1)

    def test_printed_values(self):
        c = E.teixeira_weight_pattern(1, 8)
        assert c[3] == -3
        assert E.teixeira_weight_pattern(2, 8)[7] == -7

    def test_rejects(self):
        with pytest.raises(ValueError):
            E.teixeira_weight_pattern(-1, 4)


class TestGenerating:
    def test_t_series(self):
        lhs, rhs = E.generating_identities(lambda j: 1, "t-series", {"t": 0.4}, POLICY)
        oracle = math.fsum((nu2(m) + 1) * 0 + 0.4**m for m in range(1, 400))
        assert lhs.value == pytest.approx(oracle, rel=1e-12)
        assert rhs.value == pytest.approx(oracle, rel=1e-12)

    def test_chi_series(self):
        lhs, rhs = E.generating_identities(None, "chi-series", {"s": 3.0, "t": 0.5}, POLICY)
        assert lhs.value == pytest.approx(rhs.value, rel=1e-12)

    def test_nonzero_mean_not_converged(self):
        assert not E.conditional_sum_nu_cos(0.3).converged
