"""Exact arithmetic and mechanical certification for the elementary
symmetric functions S(k,n) of the reciprocals 1, 1/2, ..., 1/n.

The package computes S(k,n) exactly, produces small independently
re-checkable certificates that each value is not an integer (n >= 4),
and sweeps whole ranges of (k, n) while validating every certificate
in-stream.
"""

from .errors import (
    CertificateInconsistency,
    CounterexampleFound,
    DomainError,
    IncompleteCoverage,
    PrecisionError,
    SieveRangeError,
    SmallnessNotApplicable,
    SymcertError,
)
from .rational import PadicVal, Rat, is_integer, is_prime_int, make_rat, v_p
from .rounding import Interval, Rounder, certified_sign
from .symfunc import (
    ReciprocalFamily,
    SymTable,
    boundary_value,
    closed_sum_cubic,
    closed_sum_linear,
    closed_sum_quadratic,
    esym,
    esym_bruteforce,
    esym_general,
    esym_newton,
    harmonic,
    harmonic_digit_counts,
    log2_factorial_interval,
    log2_harmonic_interval,
    power_sum,
    smallness_bound_holds,
)
from .primes import (
    GapCheckResult,
    Sieve,
    gap_check,
    nth_prime,
    pi_lower_panaitopol,
    pi_upper_panaitopol,
    prime_count,
    prime_in_interval,
    sieve_upto,
)
from .certify import (
    AnalyticReport,
    ApHit,
    CertKind,
    Certificate,
    DirectPayload,
    HarmonicPayload,
    PrimePayload,
    SmallnessPayload,
    TheoremReport,
    analytic_region_check,
    certify_direct,
    certify_harmonic,
    certify_prime,
    certify_smallness,
    dispatch_certificate,
    explore_ap,
    validate,
    verify_theorem,
)
from . import serialize

__version__ = "0.1.0"

__all__ = [
    "AnalyticReport",
    "ApHit",
    "CertKind",
    "Certificate",
    "CertificateInconsistency",
    "CounterexampleFound",
    "DirectPayload",
    "DomainError",
    "GapCheckResult",
    "HarmonicPayload",
    "IncompleteCoverage",
    "Interval",
    "PadicVal",
    "PrecisionError",
    "PrimePayload",
    "Rat",
    "ReciprocalFamily",
    "Rounder",
    "Sieve",
    "SieveRangeError",
    "SmallnessNotApplicable",
    "SmallnessPayload",
    "SymTable",
    "SymcertError",
    "TheoremReport",
    "analytic_region_check",
    "boundary_value",
    "certified_sign",
    "certify_direct",
    "certify_harmonic",
    "certify_prime",
    "certify_smallness",
    "closed_sum_cubic",
    "closed_sum_linear",
    "closed_sum_quadratic",
    "dispatch_certificate",
    "esym",
    "esym_bruteforce",
    "esym_general",
    "esym_newton",
    "explore_ap",
    "gap_check",
    "harmonic",
    "harmonic_digit_counts",
    "is_integer",
    "is_prime_int",
    "log2_factorial_interval",
    "log2_harmonic_interval",
    "make_rat",
    "nth_prime",
    "pi_lower_panaitopol",
    "pi_upper_panaitopol",
    "power_sum",
    "prime_count",
    "prime_in_interval",
    "serialize",
    "sieve_upto",
    "smallness_bound_holds",
    "v_p",
    "validate",
    "verify_theorem",
]
