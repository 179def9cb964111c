"""Multisection identities over b-adic valuation classes.

Subpackages and modules:

``index_algebra``  exact valuation, multiset census and structural checks
``special``        Bernoulli, gamma, zeta, theta and q-series kernels
``engine``         tolerance-driven evaluation of multisection sums/products
``catalog``        registry of named identity cases with verification
``cli``            command-line front end
"""

from .index_algebra import (
    Valuation,
    WeightScheme,
    MultisetCensus,
    valuation,
    weight,
    structural_check,
)
from .engine import EvalResult, SequenceOracle, TruncationPolicy

__version__ = "0.1.0"

__all__ = [
    "Valuation",
    "WeightScheme",
    "MultisetCensus",
    "valuation",
    "weight",
    "structural_check",
    "EvalResult",
    "SequenceOracle",
    "TruncationPolicy",
]
