"""Segmented-sieve toolkit for the 6n±1 twin-prime estimator chain.

The package reproduces the ATPG/TPR/TPE estimates, counts actual twin prime
pairs with a segmented sieve of Eratosthenes, and audits the empirical claims
that accompany the estimates.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("twinaudit")
except PackageNotFoundError:  # pragma: no cover - running from a source tree
    __version__ = "0.0.0"

from .atp import AtpPair, CaseKind, StrikePattern, atp_pair, atpg_count, atpg_ratio, classify, strike_pattern
from .errors import DomainError, InsufficientBasePrimesError, TwinAuditError
from .estimator import EstimateRow, case_factor, tpe, tpe_expanded, tpe_s, tpr_ab
from .sieve import PrimalityMap, TwinPairIndex, is_prime, primes_up_to, sieve_segment, twin_pairs_in

__all__ = [
    "AtpPair",
    "CaseKind",
    "DomainError",
    "EstimateRow",
    "InsufficientBasePrimesError",
    "PrimalityMap",
    "StrikePattern",
    "TwinAuditError",
    "TwinPairIndex",
    "atp_pair",
    "atpg_count",
    "atpg_ratio",
    "case_factor",
    "classify",
    "is_prime",
    "primes_up_to",
    "sieve_segment",
    "strike_pattern",
    "tpe",
    "tpe_expanded",
    "tpe_s",
    "tpr_ab",
    "twin_pairs_in",
]
