"""Exact valuation, census and structural-check behaviour."""

from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multisection import index_algebra as ia


SMALL_FRACTIONS = st.fractions(min_value=-50, max_value=50, max_denominator=50)


def brute_valuation(m, b):
    nu = 0
    while m % (b ** (nu + 1)) == 0:
        nu += 1
    return nu


def brute_census(kind, b, limit):
    """Enumerate the defining tuples literally."""
    out = Counter()
    j = 0
    while b**j <= limit:
        for n in range(1, limit + 1):
            if kind == "C":
                for k in range(1, b):
                    m = (b * n - k) * b**j
                    if m <= limit:
                        out[m] += 1
            elif kind == "D":
                m = b * n * b**j
                if m <= limit:
                    out[m] += 1
        j += 1
    if kind == "E":
        for m in range(1, limit + 1):
            if brute_valuation(m, b):
                out[m] = brute_valuation(m, b)
    return dict(out)


class TestValuation:
    def test_doc_example(self):
        assert ia.valuation(100, 5) == ia.Valuation(100, 5, 2, 4)

    def test_powers(self):
        assert ia.valuation(2**20, 2).nu == 20
        assert ia.valuation(3**7 * 2, 3).cofactor == 2

    @given(st.integers(1, 10**12), st.integers(2, 40))
    def test_factorization(self, m, b):
        v = ia.valuation(m, b)
        assert v.cofactor * b**v.nu == m
        assert v.cofactor % b != 0

    @given(st.integers(1, 10**6), st.integers(2, 12), st.integers(0, 6))
    def test_scaling(self, m, b, k):
        assert ia.valuation(m * b**k, b).nu == ia.valuation(m, b).nu + k

    @pytest.mark.parametrize("m,b", [(0, 2), (-4, 2), (4, 1), (4, 0), (2.0, 2), (True, 2)])
    def test_rejects(self, m, b):
        with pytest.raises(ValueError):
            ia.valuation(m, b)


class TestCensus:
    def test_d_multiplicities_small(self):
        d = ia.census_D(2, 16)
        assert d.counts == {2: 1, 4: 2, 6: 1, 8: 3, 10: 1, 12: 2, 14: 1, 16: 4}

    def test_eight_appears_three_times(self):
        assert ia.census_D(2, 8)[8] == 3

    @pytest.mark.parametrize("b", [2, 3, 4, 5, 7, 10])
    @pytest.mark.parametrize("kind", ["C", "D", "E"])
    def test_matches_literal_enumeration(self, kind, b):
        build = {"C": ia.census_C, "D": ia.census_D, "E": ia.census_E}[kind]
        assert build(b, 300).counts == brute_census(kind, b, 300)

    @given(st.integers(2, 9), st.integers(1, 3000))
    def test_theorem(self, b, limit):
        c = ia.census_C(b, limit)
        assert c.counts == {m: 1 for m in range(1, limit + 1)}
        assert ia.census_D(b, limit) == ia.census_E(b, limit)

    def test_total_of_e_is_sum_of_valuations(self):
        assert ia.census_E(2, 1000).total == sum(brute_valuation(m, 2) for m in range(1, 1001))


class TestStructural:
    @pytest.mark.parametrize("b", [2, 3, 5])
    def test_q_power_weight_is_one(self, b):
        for q in (Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(2), Fraction(-7, 3)):
            s = ia.q_power_scheme(q, b)
            assert all(s.cumulative(nu) == 1 for nu in range(12))
            assert ia.structural_check(s, 2000).passed

    def test_telescoping_closed_forms(self):
        for order in (1, 2):
            s = ia.telescoping_scheme(order)
            assert all(s.cumulative(nu) == 1 for nu in range(40))

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_bernoulli_weight_zero(self, p):
        s = ia.bernoulli_scheme(p)
        assert all(s.cumulative(nu) == 0 for nu in range(30))
        assert ia.bernoulli_weight_check(p, 1024).passed

    def test_ex312_weight_one(self):
        s = ia.polynomial_scheme([1, 1, -1], [0, 2])
        assert all(s.cumulative(nu) == 1 for nu in range(30))

    def test_phi_chi_j_weight(self):
        s = ia.polynomial_scheme([0, 1], [0, 1])
        # nu + nu(nu-1)/2
        assert all(s.cumulative(nu) == nu * (nu + 1) // 2 for nu in range(30))

    @pytest.mark.parametrize("b", [2, 3, 5, 7])
    def test_corrupted_fails_at_base(self, b):
        r = ia.structural_check(ia.corrupt_scheme(ia.q_power_scheme(2, b)), 500)
        assert not r.passed
        assert r.first_mismatch == b

    @given(st.lists(SMALL_FRACTIONS, min_size=1, max_size=4),
           st.lists(SMALL_FRACTIONS, min_size=1, max_size=4),
           st.integers(2, 6))
    def test_any_polynomial_scheme_passes(self, pc, cc, b):
        """The identity holds for arbitrary (phi, chi): it is structural."""
        assert ia.structural_check(ia.polynomial_scheme(pc, cc, b), 400).passed

    def test_tuple_count(self):
        # every m <= N appears once in C_b and nu(m) times in D_b
        r = ia.structural_check(ia.q_power_scheme(1), 1000)
        assert r.tuples == 1000 + ia.census_E(2, 1000).total

    def test_floating_scheme_rejected(self):
        with pytest.raises(ia.UnsupportedSchemeError):
            ia.structural_check(ia.q_power_scheme(0.5), 100)

    def test_float_valued_phi_rejected(self):
        s = ia.WeightScheme(2, lambda j: 0.5, lambda j: 0)
        with pytest.raises(ia.UnsupportedSchemeError):
            ia.structural_check(s, 10)

    def test_weight_function(self):
        s = ia.q_power_scheme(Fraction(3))
        assert ia.weight(12, s) == 1
        assert ia.weight(12, ia.polynomial_scheme([0, 1], [0])) == 2


class TestFinite:
    @pytest.mark.parametrize("J", [1, 2, 3, 5])
    def test_finite_version(self, J):
        assert ia.finite_census(J, 2000).passed

    def test_pairwise_fast_matches_bruteforce(self):
        seq = lambda m: Fraction(1, m)
        left = Counter(ia.census_C(2, 40).counts)
        left.update(ia.census_D(2, 40).counts)
        fast = ia._pair_sum(ia.MultisetCensus(40, left), seq)
        assert fast == ia.pairwise_bruteforce(ia.MultisetCensus(40, left), seq)

    @pytest.mark.parametrize("b", [2, 3])
    def test_pairwise_symmetric(self, b):
        assert ia.pairwise_symmetric_check(b, 64, lambda m: Fraction(1, m * m + 1)).passed
