"""Acceptance criteria, one test each, at the stated tolerances.

Every test records a single ``criterion N: PASS|FAIL ...`` line, collected in
the terminal summary by ``conftest.pytest_terminal_summary``.
"""

import math
import time

import mpmath as mp
import pytest

from multisection import catalog
from multisection import engine as E
from multisection import index_algebra as ia
from multisection import special as sp
from multisection.catalog.gamma import direct_g, log_g

ZETA2 = math.pi**2 / 6


@pytest.fixture
def record(record_property):
    def _record(n, ok, detail):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        record_property("criterion", line)
        assert ok, line
    return _record


def _rel(a, b):
    return abs(a - b) / abs(b)


def test_01_structural_oracle(record):
    t0 = time.perf_counter()
    failures = []
    count = 0
    for b in (2, 3, 5, 7):
        for name, scheme in catalog.exact_schemes(b).items():
            r = ia.structural_check(scheme, 10_000)
            count += 1
            if not r.passed:
                failures.append((b, name, r.first_mismatch))
    elapsed = time.perf_counter() - t0
    record(1, not failures and elapsed < 5.0,
           f"{count} scheme/base pairs exact at N=1e4, failures={failures}, {elapsed:.2f} s (< 5 s)")


def test_02_census_theorem(record):
    t0 = time.perf_counter()
    ok = True
    N = 10**6
    for b in (2, 3):
        c = ia.census_C(b, N)
        ok &= len(c.counts) == N and set(c.counts.values()) == {1} and min(c.counts) == 1 \
            and max(c.counts) == N
        ok &= ia.census_D(b, N) == ia.census_E(b, N)
    elapsed = time.perf_counter() - t0
    record(2, ok and elapsed < 5.0, f"C_b = 1..N and D_b = E_b for b in {{2,3}}, N=1e6, "
                                    f"{elapsed:.2f} s (< 5 s)")


def test_03_teixeira_pattern(record):
    ok = True
    for J in range(4):
        n_max = 2 ** (J + 2)
        want = [1 - 2 ** (J + 1) if n % 2 ** (J + 1) == 0 else 1 for n in range(1, n_max + 1)]
        ok &= E.teixeira_weight_pattern(J, n_max) == want
    ok &= E.teixeira_weight_pattern(1, 4)[3] == -3 and E.teixeira_weight_pattern(2, 8)[7] == -7
    record(3, ok, "coefficients exact for J in {0,1,2,3}; -3 at 4 and -7 at 8")


def test_04_tan_product(record):
    errs = {}
    for a in (0.5, 1.0, 2.0):
        r = catalog.verify("A1.tan-product", {"a": a, "J": 40})
        errs[a] = max(_rel(r.lhs, a / math.sin(a)), _rel(r.rhs, a / math.sin(a)))
    record(4, max(errs.values()) <= 1e-8, f"max rel_err {max(errs.values()):.2e} vs a/sin a (<= 1e-8)")


def test_05_h1a_chain(record):
    e = math.exp(-math.pi)
    closed = {
        "E9.h1a": 2**0.25 * math.exp(-math.pi / 24) / (1 + e),
        "E9.ls3d": math.pi / 12 - math.log(2) / 2 + math.log1p(e),
        "E9.ls3f": math.pi / 12 - math.log(2) / 2 + 2 * math.log1p(e),
    }
    worst = 0.0
    for cid, value in closed.items():
        r = catalog.verify(cid)
        worst = max(worst, _rel(r.lhs, value), _rel(r.rhs, value))
    cj = []
    for k in (1, 2, 3):
        r = catalog.verify("E9.cj", {"k": k})
        exact = math.exp(-2 * k * math.pi) / math.sinh(k * math.pi)
        cj.append(max(r.rel_err, _rel(r.lhs, exact)))
    ok = worst <= 1e-10 and max(cj) <= 1e-12
    record(5, ok, f"H1a/Ls3D/Ls3F worst {worst:.2e} (<= 1e-10); Cj k=1..3 worst {max(cj):.2e} "
                  f"(<= 1e-12)")


def test_06_dirichlet_family(record):
    b5 = catalog.verify("B5.x-half", {"s": 2.0})
    b4 = catalog.verify("B4.x-quarter", {"s": 2.0})
    b8 = catalog.verify("B8.log2-over-3")
    e5 = max(_rel(b5.lhs, math.pi**2 / 10), _rel(b5.rhs, math.pi**2 / 10))
    e4 = max(_rel(b4.lhs, 12 / 17 * ZETA2), _rel(b4.rhs, 12 / 17 * ZETA2))
    e8 = _rel(b8.lhs, math.log(2) / 3)
    record(6, e5 <= 1e-10 and e4 <= 1e-10 and e8 <= 1e-4,
           f"pi^2/10 {e5:.1e}, (12/17)zeta(2) {e4:.1e} (<= 1e-10); ln2/3 {e8:.1e} (<= 1e-4)")


def test_07_q_pochhammer(record):
    worst = 0.0
    for q in (0.1, 0.2):
        for cid in ("D1.qpoch-2j", "D2.qpoch-p", "D3.qpoch-base3", "D4.qpoch2",
                    "D5.qpoch-base3-p1", "D6.qpoch-a"):
            params = {"q": q, "a": 0.3} if cid == "D6.qpoch-a" else {"q": q}
            r = catalog.verify(cid, params)
            worst = max(worst, r.rel_err if r.converged else math.inf)
    # (q; q) itself against mpmath's q-Pochhammer
    for q in (0.1, 0.2):
        worst = max(worst, _rel(abs(sp.q_pochhammer(q, q)), float(mp.qp(q, q))))
    d7 = catalog.verify("D7.partition-census", {"N": 30})
    ok = worst <= 1e-10 and d7.passed and d7.detail["first_mismatch"] is None and d7.lhs == 5604
    record(7, ok, f"D1-D6 worst rel_err {worst:.2e} (<= 1e-10); p(n) exact for n <= 30")


def _direct_lambert(mu, q, sign):
    return math.fsum(n**mu * q**n / (1 - sign * q**n) for n in range(1, 4000))


def test_08_lambert(record):
    worst = 0.0
    for mu, q in ((1, 0.25), (1, 0.5), (2, 0.5)):
        rep = E.lambert_relation_check(mu, q)
        worst = max(worst, _rel(rep.multisection, _direct_lambert(mu, q, +1)),
                    _rel(rep.direct, _direct_lambert(mu, q, +1)))
        for Q in (q, q**2, q**4):
            worst = max(worst, _rel(sp.lambert_series(mu, Q, signed=True),
                                    _direct_lambert(mu, Q, -1)))
        if not rep.converged:
            worst = math.inf
    record(8, worst <= 1e-10, f"f and g against direct sums, worst rel_err {worst:.2e} (<= 1e-10)")


def test_09_polygamma_applications(record):
    runs = [("E5.lk2", {"x": 0.3}), ("E5.lk2", {"x": 0.5}), ("E5.lodd2ar", {"x": 0.5}),
            ("E8.st3x", {"x": 0.5})]
    errs = [catalog.verify(cid, p, tol=1e-9) for cid, p in runs]
    worst = max(r.rel_err for r in errs)
    record(9, all(r.passed for r in errs),
           f"Lk2 (x=.3,.5), Lodd2aR, St3x worst rel_err {worst:.2e} (<= 1e-9)")


def test_10_gamma_identities(record):
    p1 = catalog.verify("F1.gamma-ratio", {"a": 1.0, "z": 1.0})
    ch = catalog.verify("F2.cosh-product", {"z": 1.0})
    e_ch = _rel(ch.lhs, math.sinh(math.pi) / math.pi)
    p9 = [catalog.verify(c, {"a": 1.0, "x": 1.0}) for c in ("F3.p9a", "F3.p9b")]
    g = catalog.verify("F4.g-product", {"a": 2.0, "b": 5.0, "z": 0.5})
    e_g = _rel(g.lhs, direct_g(2.0, 5.0, 0.5))
    e_lg = _rel(math.exp(log_g(2.0, 5.0, 0.5).real), direct_g(2.0, 5.0, 0.5))
    ok = (p1.rel_err <= 1e-10 and p1.converged and e_ch <= 1e-10 and ch.passed
          and all(r.rel_err <= 1e-8 and r.converged for r in p9)
          and g.rel_err <= 1e-8 and e_g <= 1e-8 and e_lg <= 1e-8)
    record(10, ok, f"P9p1 {p1.rel_err:.1e}, cosh product {e_ch:.1e}; P9a/P9b "
                   f"{max(r.rel_err for r in p9):.1e}; g(2,5,1/2) {g.rel_err:.1e}, "
                   f"vs direct product {e_g:.1e}")


def _theta_pieces(x, j):
    """``theta_2`` and ``theta_3 - 1`` at ``exp(-x 4^(j+1))`` as direct exponential sums."""
    t2 = 2 * math.fsum(math.exp(-x * (2 * n - 1) ** 2 * 4.0**j) for n in range(1, 40))
    t3 = 2 * math.fsum(math.exp(-4 * x * n * n * 4.0**j) for n in range(1, 40))
    return t2, t3


def test_11_theta_family(record):
    x = 1.0
    target = 2 * math.fsum(math.exp(-x * n * n) for n in range(1, 60))
    b1 = math.fsum(t2 / (j + 1) + t3 / ((j + 1) * (j + 2))
                   for j, (t2, t3) in ((j, _theta_pieces(x, j)) for j in range(12)))
    d1 = math.fsum((-j * j + j + 1) * t2 + 2 * j * t3
                   for j, (t2, t3) in ((j, _theta_pieces(x, j)) for j in range(12)))
    rb, rd = catalog.verify("E12.eq8b1", {"x": x}), catalog.verify("E12.eq8d1", {"x": x})
    e_b = max(_rel(rb.lhs, b1), _rel(rb.rhs, target), _rel(b1, target))
    e_d = max(_rel(rd.lhs, d1), _rel(rd.rhs, target), _rel(d1, target))
    # both sides of Eq3p3d at high precision
    with mp.workdps(40):
        z = mp.mpf(1) / 2
        lhs = mp.nsum(lambda j: mp.bernpoly(3, j) / 3 / (2 * mp.sinh(z * 2**j)), [1, mp.inf])
        rhs = mp.nsum(lambda j: j**2 / mp.expm1(z * 2 ** (j + 1)), [1, mp.inf])
    r3 = catalog.verify("E11.eq3p3d", {"z": 0.5, "p": 1})
    e_3 = max(r3.rel_err, _rel(r3.lhs, float(lhs)), _rel(r3.rhs, float(rhs)))
    ok = max(e_b, e_d, e_3) <= 1e-10 and rb.converged and rd.converged and r3.converged
    record(11, ok, f"Eq8B1 {e_b:.1e}, Eq8D1 {e_d:.1e} vs direct exp sums; Eq3p3d {e_3:.1e} "
                   f"(<= 1e-10)")


def test_12_negative_control(record):
    mismatches = {}
    for b in (2, 3, 5, 7):
        bad = ia.corrupt_scheme(catalog.exact_schemes(b)["general-2j"])
        mismatches[b] = ia.structural_check(bad, 1000).first_mismatch
    exact = catalog.verify("X0.corrupted-chi")
    numeric = catalog.verify("X0.corrupted-chi-numeric")
    ok = (all(m == b for b, m in mismatches.items()) and not exact.passed
          and exact.detail["first_mismatch"] == 2 and not numeric.passed
          and numeric.rel_err > 1e-3)
    record(12, ok, f"first_mismatch {mismatches} equals b; numeric rel_err {numeric.rel_err:.2e} "
                   f"(> 1e-3)")
