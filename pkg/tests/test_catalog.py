"""Registry contract, runner semantics and cross-case consistency chains."""

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multisection import catalog
from multisection.catalog import core
from multisection.catalog.core import natural_key
from multisection.engine import DEFAULT_POLICY, TruncationPolicy

ALL = catalog.REGISTRY.cases(include_controls=True)
REGULAR = catalog.REGISTRY.cases()
NUMERIC = [c for c in REGULAR if c.kind == catalog.NUMERIC]
EXACT = [c for c in REGULAR if c.kind == catalog.EXACT]


class TestRegistry:
    def test_size_and_required_ids(self):
        ids = [s["id"] for s in catalog.list_cases()]
        assert len(ids) >= 40
        assert "A1.general-2j" in ids and "E9.cj" in ids

    def test_stable_natural_order(self):
        ids = [s["id"] for s in catalog.list_cases()]
        assert ids == sorted(ids, key=natural_key)
        assert ids == [s["id"] for s in catalog.list_cases()]
        assert ids.index("A2.q-case") < ids.index("A10.double")

    @pytest.mark.parametrize("family", list("ABCDEF"))
    def test_every_family_present(self, family):
        assert catalog.select(family)

    @pytest.mark.parametrize("case", ALL, ids=lambda c: c.id)
    def test_reference_and_anchor(self, case):
        assert case.paper_ref.strip()
        assert len(case.anchor.strip()) >= 5
        assert case.description.strip()

    @pytest.mark.parametrize("case", ALL, ids=lambda c: c.id)
    def test_defaults_in_range(self, case):
        for p in case.params:
            p.validate(p.default)

    def test_controls_hidden_by_default(self):
        assert not any(c.control for c in REGULAR)
        assert {c.id for c in ALL if c.control} == {"X0.corrupted-chi", "X0.corrupted-chi-numeric"}

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValueError):
            core.Registry([REGULAR[0], REGULAR[0]])


class TestDefaults:
    @pytest.mark.parametrize("case", REGULAR, ids=lambda c: c.id)
    def test_passes(self, case):
        r = catalog.verify(case.id)
        assert r.passed, (r.rel_err, r.lhs, r.rhs, r.detail)
        assert r.converged

    @pytest.mark.parametrize("case", NUMERIC, ids=lambda c: c.id)
    def test_halved_target_still_passes(self, case):
        tight = TruncationPolicy(target_rel_tol=case.default_tol / 200)
        r = catalog.verify(case.id, policy=tight)
        assert r.passed, (r.rel_err, r.converged)

    @pytest.mark.parametrize("case", EXACT, ids=lambda c: c.id)
    def test_exact_cases_report_exact_summaries(self, case):
        r = catalog.verify(case.id)
        assert not isinstance(r.lhs, float) and not isinstance(r.rhs, float)
        assert isinstance(r.lhs, (int, Fraction)) and isinstance(r.rhs, (int, Fraction))

    @pytest.mark.parametrize("case", [c for c in ALL if c.control], ids=lambda c: c.id)
    def test_controls_fail(self, case):
        r = catalog.verify(case.id)
        assert not r.passed
        assert r.rel_err > 1e-3


class TestDocumentedValues:
    def test_sinh_product(self):
        r = catalog.verify("E1.sinh-product", {"x": 1})
        assert r.rhs == pytest.approx(3.676078, abs=5e-7)
        assert r.rel_err < 1e-10

    def test_h1a_closed_form(self):
        r = catalog.verify("E9.h1a")
        assert r.rhs == pytest.approx(2**0.25 * math.exp(-math.pi / 24) / (1 + math.exp(-math.pi)),
                                      rel=1e-15)
        assert r.rel_err < 1e-10

    def test_log2_over_3(self):
        r = catalog.verify("B8.log2-over-3")
        assert abs(r.lhs - math.log(2) / 3) <= 1e-4 * math.log(2) / 3

    def test_general_2j_exact(self):
        r = catalog.verify("A1.general-2j", {"N": 4096})
        assert r.passed and r.kind == catalog.EXACT

    def test_partition_number(self):
        assert catalog.verify("D7.partition-census").detail["p_N"] == 5604

    def test_corrupted_first_mismatch_is_base(self):
        assert catalog.verify("X0.corrupted-chi").detail["first_mismatch"] == 2


class TestChains:
    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
    def test_e2_chain(self, x):
        st1a = catalog.verify("E2.st1a", {"x": x})
        inner = [catalog.verify("E2.st1b", {"x": x, "j": j}).rhs for j in range(40)]
        h43 = catalog.verify("E2.h43", {"x": math.pi * x})
        assert math.fsum(inner) == pytest.approx(st1a.rhs, rel=1e-10)
        # (pi/(4x)) H43(pi x) reproduces the St1a closed form
        assert math.pi / (4 * x) * h43.rhs == pytest.approx(st1a.rhs, rel=1e-10)
        assert st1a.lhs == pytest.approx(st1a.rhs, rel=1e-10)

    def test_e9_chain(self):
        d, e, f = (catalog.verify(i) for i in ("E9.ls3d", "E9.ls3e", "E9.ls3f"))
        assert f.lhs - d.lhs == pytest.approx(math.log1p(math.exp(-math.pi)), rel=1e-12)
        assert e.passed and f.rhs == pytest.approx(catalog.verify("E9.h1ld").rhs, rel=1e-15)
        assert catalog.verify("E9.ls3b").rhs == pytest.approx(
            -2 * math.log(catalog.verify("E9.h1a").rhs), rel=1e-15)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_cj_per_k(self, k):
        r = catalog.verify("E9.cj", {"k": k})
        assert r.rel_err <= 1e-12
        assert r.rhs == pytest.approx(math.exp(-2 * k * math.pi) / math.sinh(k * math.pi), rel=1e-14)


class TestRunner:
    def test_unknown_id(self):
        with pytest.raises(catalog.UnknownCaseError):
            catalog.verify("NO.SUCH.ID")

    @pytest.mark.parametrize("params", [{"x": -1}, {"x": "abc"}, {"nope": 1}])
    def test_bad_params(self, params):
        with pytest.raises(catalog.ParameterError):
            catalog.verify("E1.sinh-product", params)

    def test_domain_error_carries_case(self):
        with pytest.raises(catalog.CaseEvaluationError, match="F4.g-product"):
            catalog.verify("F4.g-product", {"z": 5.0})

    def test_non_converged_never_passes(self):
        r = catalog.verify("E2.h43", policy=TruncationPolicy(1e-10, j_max_cap=3))
        assert not r.converged and not r.passed

    def test_filter_family(self):
        suite = catalog.verify_all(filter="D")
        assert [r.id for r in suite.cases] == [f"D{i}." for i in range(1, 8)] or \
            all(r.id.startswith("D") for r in suite.cases)
        assert len(suite.cases) == 7 and suite.passed

    def test_subfamily_filter_is_exact(self):
        assert [c.id for c in catalog.select("E1")] == ["E1.sinh-product", "E1.start"]

    def test_isolation_under_impossible_tolerance(self):
        e9 = [c.id for c in catalog.select("E9")]
        suite = catalog.verify_all(filter="E9,D", tol_overrides={i: 1e-30 for i in e9})
        assert not suite.passed
        assert len(suite.cases) == len(e9) + 7
        assert all(r.passed for r in suite.cases if r.id.startswith("D"))

    def test_workers_do_not_change_order(self):
        a = catalog.verify_all(filter="B,C")
        b = catalog.verify_all(filter="B,C", workers=4)
        assert [r.id for r in a.cases] == [r.id for r in b.cases]
        assert [r.lhs for r in a.cases] == [r.lhs for r in b.cases]

    def test_sweep_order_and_count(self):
        qs = [-1, 0, 0.5, 1, 2]
        reports = catalog.sweep("A2.q-case", {"q": qs})
        assert [r.params["q"] for r in reports] == qs
        assert all(r.passed for r in reports)

    def test_sweep_point_error_is_reported(self):
        reports = catalog.sweep("F4.g-product", {"z": [0.5, 5.0]})
        assert reports[0].passed and not reports[1].passed and reports[1].error

    def test_sweep_gamma_ratio_a_zero(self):
        r0, r1 = catalog.sweep("F1.gamma-ratio", {"a": [0, 1], "z": [1]})
        assert r0.rhs == pytest.approx(math.sinh(math.pi) / math.pi, rel=1e-12)
        assert r0.passed and r1.passed

    def test_sweep_ls2(self):
        assert all(r.passed for r in catalog.sweep("E6.ls2", {"n": [2, 4], "x": [0.3]}))


class TestSerialization:
    FIELDS = {"id", "params", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass", "j_used",
              "n_used", "wall_ms"}

    def test_json_fields(self):
        doc = json.loads(catalog.reports_to_json([catalog.verify("E9.h1a")]))
        assert self.FIELDS <= set(doc)
        assert doc["pass"] is True and doc["wall_ms"] is None

    def test_json_deterministic(self):
        a = catalog.reports_to_json(catalog.verify_all(filter="C"))
        b = catalog.reports_to_json(catalog.verify_all(filter="C"))
        assert a == b
        doc = json.loads(a)
        assert set(doc) == {"cases", "pass", "total_wall_ms"}

    def test_timing_opt_in(self):
        doc = json.loads(catalog.reports_to_json(catalog.verify_all(filter="C"), timing=True))
        assert doc["total_wall_ms"] >= 0 and doc["cases"][0]["wall_ms"] >= 0

    def test_csv(self):
        text = catalog.reports_to_csv(catalog.verify_all(filter="C"))
        header, *rows = text.strip().split("\n")
        assert header.split(",") == list(core.CSV_COLUMNS)
        assert len(rows) == len(catalog.select("C"))

    def test_complex_values_serialize(self):
        doc = json.loads(catalog.reports_to_json([catalog.verify("E5.lodd")]))
        assert isinstance(doc["lhs"], (dict, float))


class TestCorrections:
    """Cases where the literal printed form disagrees with the identity it proves."""

    def test_f_minus_half_is_cosh(self):
        r = catalog.verify("F2.f-minus-half", {"z": 0.7})
        assert r.passed
        assert abs(r.detail["reciprocal_reading"] - r.lhs) > 1.0

    def test_printed_g_recursion_hits_a_pole(self):
        from multisection.catalog.gamma import log_g
        from multisection.special import PoleError
        a, b, z = 2.0, 5.0, 0.5
        with pytest.raises(PoleError):
            sum(log_g(a / 2**j - 1, 1 - a / 2 ** (j + 1) + b / 4 ** (j + 1), z / 4 ** (j + 1))
                for j in range(60))

    def test_g_product_against_direct_product(self):
        from multisection.catalog.gamma import direct_g, log_g
        assert math.log(direct_g(2, 5, 0.5)) == pytest.approx(log_g(2, 5, 0.5).real, rel=1e-9)

    def test_gamma_ratio_against_direct_product(self):
        from multisection.catalog.gamma import direct_f, log_f
        assert math.log(direct_f(1, 1)) == pytest.approx(log_f(1, 1).real, rel=1e-9)


class TestPowerSeriesDomains:
    """Cases whose closed side is a log-Gamma product over roots of unity."""

    CASES = ["E4.ls3e2", "E5.ls3e2p", "E5.lk2", "E5.lk3", "E5.leven", "E5.lodd", "E5.lodd2ar"]

    @pytest.mark.parametrize("case_id", CASES)
    @settings(max_examples=25)
    @given(x=st.floats(-0.9, 0.9).filter(lambda v: abs(v) > 1e-3), k=st.integers(1, 12))
    def test_in_domain_points_pass(self, case_id, x, k):
        case = catalog.get_case(case_id)
        params = {"x": x}
        if "k" in case.defaults:
            params["k"] = k
        try:
            r = catalog.verify(case_id, params)
        except catalog.ParameterError:
            return
        assert r.passed, (params, r.rel_err, r.converged)

    def test_large_orders_do_not_overflow(self):
        # x = 0.9 needs polygamma orders well past the binary64 range of psi(n, 1/3)
        r = catalog.verify("E5.lk2", {"x": 0.9})
        assert r.passed and r.j_used > 100

    def test_precision_floor_rejects(self):
        with pytest.raises(catalog.ParameterError, match="Gamma-product side"):
            catalog.verify("E4.ls3e2", {"x": 0.1, "k": 6})

    def test_even_k_rejected_for_leven(self):
        with pytest.raises(catalog.ParameterError, match="odd"):
            catalog.verify("E5.leven", {"k": 2})

    def test_near_unit_circle_reports_non_convergence(self):
        r = catalog.verify("E5.lk2", {"x": 0.99})
        assert not r.converged and not r.passed and r.rel_err < 1e-12
