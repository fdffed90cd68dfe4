"""Exact rational arithmetic with p-adic valuations.

``Rat`` is the universal value type for the whole package.  It is the
standard-library ``fractions.Fraction``: arbitrary precision, always in
lowest terms with a positive denominator, immutable, and hashable — which
is exactly the canonical-form contract every other module relies on.  The
helpers here add the number-theoretic layer on top (p-adic valuation,
integrality tests) plus thin named wrappers so call sites read like the
math they implement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import DomainError

Rat = Fraction

ZERO = Rat(0)
ONE = Rat(1)


def make_rat(num: int, den: int = 1) -> Rat:
    """Rational num/den reduced to canonical form (den forced positive)."""
    return Rat(num, den)


def rat_add(a: Rat, b: Rat) -> Rat:
    """Exact sum in canonical form."""
    return a + b


def rat_mul(a: Rat, b: Rat) -> Rat:
    """Exact product in canonical form."""
    return a * b


def is_integer(q: Rat) -> bool:
    """True iff q has denominator 1."""
    return q.denominator == 1


def is_prime_int(p: int) -> bool:
    """Primality of a machine-size or big integer.

    gmpy2's test is deterministic for all inputs below 2^64 (our sieve
    limit caps everything we pass far under that) and Baillie–PSW beyond.
    """
    return p >= 2 and bool(gmpy2.is_prime(p))


@dataclass(frozen=True, slots=True)
class PadicVal:
    """The exponent of prime ``prime`` in a rational's factorization.

    For nonzero q, q = prime**valuation * (u/w) with prime dividing
    neither u nor w.  The zero rational has no finite valuation; it is
    reported with is_finite=False so callers can branch instead of
    catching an exception.
    """

    prime: int
    valuation: int
    is_finite: bool = True


def v_p(q: Rat, p: int) -> PadicVal:
    """p-adic valuation of q.  p must be prime; q = 0 gives is_finite=False."""
    if not is_prime_int(p):
        raise DomainError(f"v_p needs a prime, got {p}")
    if q == 0:
        return PadicVal(prime=p, valuation=0, is_finite=False)
    # q is in lowest terms, so p divides at most one of num, den.
    _, e_den = gmpy2.remove(gmpy2.mpz(q.denominator), p)
    if e_den:
        return PadicVal(prime=p, valuation=-e_den)
    _, e_num = gmpy2.remove(gmpy2.mpz(q.numerator), p)
    return PadicVal(prime=p, valuation=e_num)


def factorial(k: int) -> int:
    """Exact k! (0! = 1)."""
    if k < 0:
        raise DomainError(f"factorial of negative {k}")
    return math.factorial(k)
