"""Exact valuation and index-multiset bookkeeping.

Everything here works in unbounded integers and :class:`fractions.Fraction`;
floating point never enters.  The structural oracle enumerates the index
tuples ``(k, n, j)`` of the base-``b`` multisection directly and compares the
exponent collected by every ``m`` against the closed cumulative weight.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping

__all__ = [
    "Valuation",
    "WeightScheme",
    "MultisetCensus",
    "StructuralReport",
    "FiniteCensus",
    "UnsupportedSchemeError",
    "valuation",
    "census_C",
    "census_D",
    "census_E",
    "weight",
    "structural_check",
    "finite_census",
    "pairwise_symmetric_check",
    "bernoulli_weight_check",
    "q_power_scheme",
    "polynomial_scheme",
    "bernoulli_scheme",
    "corrupt_scheme",
    "telescoping_scheme",
]


class UnsupportedSchemeError(TypeError):
    """Raised when an exact routine is handed a floating-point weight scheme."""


@dataclass(frozen=True)
class Valuation:
    m: int
    base: int
    nu: int
    cofactor: int

    def __post_init__(self):
        assert self.cofactor * self.base**self.nu == self.m
        assert self.cofactor % self.base != 0


def _check_base(base: int) -> None:
    if isinstance(base, bool) or not isinstance(base, int) or base < 2:
        raise ValueError(f"base must be an integer >= 2, got {base!r}")


def _check_positive(name: str, value: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def valuation(m: int, base: int) -> Valuation:
    """Factor ``m = cofactor * base**nu`` with ``base`` not dividing ``cofactor``.

    >>> valuation(100, 5)
    Valuation(m=100, base=5, nu=2, cofactor=4)
    """
    _check_positive("m", m)
    _check_base(base)
    nu, r = 0, m
    while r % base == 0:
        r //= base
        nu += 1
    return Valuation(m, base, nu, r)


@dataclass(frozen=True)
class WeightScheme:
    """A pair of exponent functions ``(phi, chi)`` over the level ``j``.

    ``exact`` marks families whose values are rationals; only those may be
    fed to :func:`structural_check`.  ``family`` is a human-readable tag such
    as ``"q-power(q=2)"``.
    """

    base: int
    phi: Callable[[int], object]
    chi: Callable[[int], object]
    family: str = "custom"
    exact: bool = True

    def __post_init__(self):
        _check_base(self.base)

    def cumulative(self, nu: int):
        """Weight attached to an index of valuation ``nu``."""
        total = self.phi(nu)
        for k in range(nu):
            total = total + self.chi(k)
        return total


@dataclass(frozen=True)
class MultisetCensus:
    """Sparse multiplicity map of a truncated index multiset."""

    limit: int
    counts: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "counts", dict(sorted(
            (m, c) for m, c in self.counts.items() if c)))
        assert all(1 <= m <= self.limit for m in self.counts)

    def __getitem__(self, m: int) -> int:
        return self.counts.get(m, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __eq__(self, other):
        if not isinstance(other, MultisetCensus):
            return NotImplemented
        return self.limit == other.limit and self.counts == other.counts

    def __hash__(self):
        return hash((self.limit, tuple(self.counts.items())))


def _levels(base: int, limit: int):
    """Yield ``(j, base**j)`` for every level with ``base**j <= limit``."""
    j, p = 0, 1
    while p <= limit:
        yield j, p
        j += 1
        p *= base


def census_C(base: int, limit: int) -> MultisetCensus:
    """Census of ``{(b n - k) b^j : 0 < k < b, n >= 1, j >= 0}`` up to ``limit``."""
    _check_base(base)
    _check_positive("limit", limit)
    counts: Counter = Counter()
    for j, p in _levels(base, limit):
        for k in range(1, base):
            # (bn - k) * p <= limit  <=>  n <= (limit // p + k) // b
            n_max = (limit // p + k) // base
            counts.update(range((base - k) * p, (base * n_max - k) * p + 1, base * p))
    return MultisetCensus(limit, counts)


def census_D(base: int, limit: int) -> MultisetCensus:
    """Census of ``{(b n) b^j : n >= 1, j >= 0}`` up to ``limit``."""
    _check_base(base)
    _check_positive("limit", limit)
    counts: Counter = Counter()
    for j, p in _levels(base, limit):
        step = base * p
        counts.update(range(step, limit + 1, step))
    return MultisetCensus(limit, counts)


def census_E(base: int, limit: int) -> MultisetCensus:
    """Census of ``{m^(nu_b(m))}``: each ``m`` repeated by its valuation."""
    _check_base(base)
    _check_positive("limit", limit)
    counts = {}
    for m in range(base, limit + 1, base):
        counts[m] = valuation(m, base).nu
    return MultisetCensus(limit, counts)


def weight(m: int, scheme: WeightScheme):
    """Cumulative exponent ``phi(nu) + sum_{k<nu} chi(k)`` with ``nu = nu_b(m)``."""
    _check_positive("m", m)
    return scheme.cumulative(valuation(m, scheme.base).nu)


@dataclass(frozen=True)
class StructuralReport:
    passed: bool
    limit: int
    base: int
    first_mismatch: int | None = None
    tuples: int = 0
    lhs_total: Fraction = Fraction(0)
    rhs_total: Fraction = Fraction(0)

    def __bool__(self):
        return self.passed


def structural_check(scheme: WeightScheme, limit: int) -> StructuralReport:
    """Collect the exponent of every index over the full tuple enumeration.

    Each tuple ``(k, n, j)`` with ``(b n - k) b^j <= limit`` contributes
    ``phi(j)`` for ``0 < k < b`` and ``chi(j)`` for ``k = 0``.  The check
    passes iff the collected exponent of every ``m <= limit`` equals
    ``weight(m, scheme)`` exactly.
    """
    if not scheme.exact:
        raise UnsupportedSchemeError(
            f"scheme {scheme.family!r} is not exact; use the floating-point "
            "engine (multisection.engine) instead")
    _check_positive("limit", limit)
    b = scheme.base
    # contributions are recorded as integer codes (2j for phi(j), 2j+1 for
    # chi(j)); each distinct code pattern is converted to a Fraction once
    codes: list[list[int]] = [[] for _ in range(limit + 1)]
    tuples = 0
    for j, p in _levels(b, limit):
        for k in range(b):
            n_max = (limit // p + k) // b
            code = 2 * j + (k == 0)
            for m in range((b - k) * p, (b * n_max - k) * p + 1, b * p):
                codes[m].append(code)
            tuples += n_max

    def coefficient(code):
        j, is_chi = divmod(code, 2)
        return _exact(scheme.chi(j) if is_chi else scheme.phi(j))

    pattern_value: dict[tuple, Fraction] = {}
    expected: dict[int, Fraction] = {}
    first = None
    lhs_total = rhs_total = Fraction(0)
    pattern_counts: Counter = Counter()
    nu_counts: Counter = Counter()
    for m in range(1, limit + 1):
        key = tuple(codes[m])
        got = pattern_value.get(key)
        if got is None:
            got = pattern_value[key] = sum((coefficient(c) for c in key), Fraction(0))
        nu = valuation(m, b).nu
        want = expected.get(nu)
        if want is None:
            want = expected[nu] = Fraction(_exact(scheme.cumulative(nu)))
        pattern_counts[key] += 1
        nu_counts[nu] += 1
        if first is None and got != want:
            first = m
    lhs_total = sum((pattern_value[k] * c for k, c in pattern_counts.items()), Fraction(0))
    rhs_total = sum((expected[nu] * c for nu, c in nu_counts.items()), Fraction(0))
    return StructuralReport(first is None, limit, b, first, tuples, lhs_total, rhs_total)


def _exact(value):
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise UnsupportedSchemeError(
            f"weight value {value!r} is not an exact rational")
    return value


@dataclass(frozen=True)
class FiniteCensus:
    """The two equalities of the finite (level-truncated) multisection."""

    upper_odd: MultisetCensus     # {(2n-1) 2^j : j >= J}
    upper_multiples: MultisetCensus  # {p 2^J : p >= 1}
    lower_odd: MultisetCensus     # {(2n-1) 2^j : 0 <= j < J}
    lower_residues: MultisetCensus  # {p : p != 0 mod 2^J}

    @property
    def passed(self) -> bool:
        return (self.upper_odd == self.upper_multiples
                and self.lower_odd == self.lower_residues)


def finite_census(J: int, limit: int) -> FiniteCensus:
    _check_positive("J", J)
    _check_positive("limit", limit)
    upper, lower = Counter(), Counter()
    for j, p in _levels(2, limit):
        target = upper if j >= J else lower
        target.update(range(p, limit + 1, 2 * p))
    step = 2**J
    mult = Counter(range(step, limit + 1, step))
    resid = Counter(p for p in range(1, limit + 1) if p % step)
    return FiniteCensus(MultisetCensus(limit, upper), MultisetCensus(limit, mult),
                        MultisetCensus(limit, lower), MultisetCensus(limit, resid))


def _pair_sum(census: MultisetCensus, seq) -> Fraction:
    # sum over unordered pairs of positions: (S^2 - sum of squares) / 2
    s = sq = Fraction(0)
    for m, c in census.counts.items():
        v = Fraction(seq(m))
        s += c * v
        sq += c * v * v
    return (s * s - sq) / 2


@dataclass(frozen=True)
class PairwiseReport:
    passed: bool
    lhs: Fraction
    rhs: Fraction


def pairwise_symmetric_check(base: int, limit: int, seq) -> PairwiseReport:
    """Compare ``sum_{n1<n2} b_n1 b_n2`` over ``C_b + D_b`` and ``N + E_b``.

    Both multisets are truncated at ``limit``; pairs are taken over distinct
    positions, so a repeated index pairs with itself once per repetition pair.
    """
    _check_base(base)
    _check_positive("limit", limit)
    left = Counter(census_C(base, limit).counts)
    left.update(census_D(base, limit).counts)
    right = Counter(range(1, limit + 1))
    right.update(census_E(base, limit).counts)
    lhs = _pair_sum(MultisetCensus(limit, left), seq)
    rhs = _pair_sum(MultisetCensus(limit, right), seq)
    return PairwiseReport(lhs == rhs, lhs, rhs)


def pairwise_bruteforce(multiset: MultisetCensus, seq) -> Fraction:
    """Quadratic reference for :func:`pairwise_symmetric_check`."""
    items = [m for m, c in multiset.counts.items() for _ in range(c)]
    return sum((Fraction(seq(a)) * Fraction(seq(b))
                for a, b in combinations(items, 2)), Fraction(0))


# -- named exact families -------------------------------------------------

def q_power_scheme(q, base: int = 2) -> WeightScheme:
    """``phi = q^j``, ``chi = (1 - q) q^j``: cumulative weight 1 for every q."""
    exact = isinstance(q, (int, Fraction)) and not isinstance(q, bool)
    if exact:
        q = Fraction(q)
    return WeightScheme(base, lambda j: q**j, lambda j: (1 - q) * q**j,
                        f"q-power(q={q})", exact)


def polynomial_scheme(phi_coeffs, chi_coeffs, base: int = 2) -> WeightScheme:
    """Polynomial weights given by ascending coefficient lists."""
    pc = tuple(Fraction(c) for c in phi_coeffs)
    cc = tuple(Fraction(c) for c in chi_coeffs)

    def poly(coeffs):
        def f(j):
            acc = Fraction(0)
            for c in reversed(coeffs):
                acc = acc * j + c
            return acc
        return f

    return WeightScheme(base, poly(pc), poly(cc),
                        f"polynomial(phi={list(map(str, pc))}, chi={list(map(str, cc))})")


def bernoulli_scheme(p: int, base: int = 2) -> WeightScheme:
    """``phi = -B_{2p+1}(j)/(2p+1)``, ``chi = j^{2p}``; cumulative weight 0."""
    from .special import bernoulli_poly

    _check_positive("p", p)
    d = 2 * p + 1
    return WeightScheme(base, lambda j: -bernoulli_poly(d, j) / d,
                        lambda j: Fraction(j) ** (2 * p), f"bernoulli(p={p})")


def telescoping_scheme(order: int = 1, base: int = 2) -> WeightScheme:
    """Rational pairs whose cumulative weight telescopes to 1.

    ``order=1``: ``phi = 1/(j+1)``, ``chi = 1/((j+1)(j+2))``.
    ``order=2``: ``phi = 1 - j(j+3)/(4(j+1)(j+2))``,
    ``chi = 1/((j+1)(j+2)(j+3))``.
    """
    if order == 1:
        phi = lambda j: Fraction(1, j + 1)
        chi = lambda j: Fraction(1, (j + 1) * (j + 2))
    elif order == 2:
        phi = lambda j: 1 - Fraction(j * (j + 3), 4 * (j + 1) * (j + 2))
        chi = lambda j: Fraction(1, (j + 1) * (j + 2) * (j + 3))
    else:
        raise ValueError(f"telescoping order must be 1 or 2, got {order}")
    return WeightScheme(base, phi, chi, f"telescoping(order={order})")


def corrupt_scheme(scheme: WeightScheme, delta=1) -> WeightScheme:
    """Copy of ``scheme`` with ``chi(0)`` shifted by ``delta``.

    The closed cumulative weight is left untouched, so the corrupted pair no
    longer satisfies the identity.  Used as a negative control.
    """
    chi = scheme.chi

    def bad_chi(j):
        return chi(j) + delta if j == 0 else chi(j)

    # keep the original cumulative weight as the claimed right-hand side
    class _Corrupted(WeightScheme):
        def cumulative(self, nu):
            return scheme.cumulative(nu)

    return _Corrupted(scheme.base, scheme.phi, bad_chi,
                      f"corrupted({scheme.family})", scheme.exact)


def bernoulli_weight_check(p: int, limit: int) -> StructuralReport:
    """Exact check that the Bernoulli pair gives weight 0 on every index."""
    scheme = bernoulli_scheme(p)
    report = structural_check(scheme, limit)
    for m in range(1, limit + 1):
        if weight(m, scheme) != 0:
            return StructuralReport(False, limit, 2, m, report.tuples,
                                    report.lhs_total, report.rhs_total)
    return report
