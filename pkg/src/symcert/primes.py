"""Prime generation, counting bounds, interval search, and gap checks.

A plain sieve of Eratosthenes (bytearray + ordered prime list) answers
every exact query: nth prime, pi(x), largest prime in a half-open
rational interval.  Panaitopol's explicit two-sided bounds on pi(x) are
evaluated with directed rounding so each side stays on its safe side,
and the prime-gap inequality k*p_{i+1} < (k+4)*p_i — which guarantees a
qualifying prime exists in every interval (n/(k+4), n/k] — is checked in
exact integer arithmetic over the stated index ranges.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from math import floor, isqrt
from typing import Optional, Union

from .errors import DomainError, PrecisionError, SieveRangeError
from .rounding import Rounder

DEFAULT_SIEVE_LIMIT = 10**6

Real = Union[int, float, Fraction]


@dataclass(frozen=True)
class Sieve:
    """Primality table up to ``limit`` plus the ordered list of primes.

    ``primes`` is kept 0-based internally; use nth_prime for the 1-based
    p_i indexing used everywhere in the math.
    """

    limit: int
    primes: tuple[int, ...]
    is_prime: bytes

    def __contains__(self, n: int) -> bool:
        if not 0 <= n <= self.limit:
            raise SieveRangeError(f"{n} beyond sieve limit {self.limit}")
        return bool(self.is_prime[n])


def sieve_upto(limit: int) -> Sieve:
    """Sieve of Eratosthenes up to and including limit."""
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    primes = tuple(i for i in range(2, limit + 1) if flags[i])
    return Sieve(limit=limit, primes=primes, is_prime=bytes(flags))


def nth_prime(s: Sieve, i: int) -> int:
    """p_i, 1-indexed (p_1 = 2)."""
    if i < 1:
        raise DomainError(f"prime index must be >= 1, got {i}")
    if i > len(s.primes):
        raise SieveRangeError(
            f"p_{i} beyond sieve (limit {s.limit} holds {len(s.primes)} primes)"
        )
    return s.primes[i - 1]


def prime_count(s: Sieve, x: Real) -> int:
    """Exact pi(x) = #{p <= x}."""
    if x > s.limit:
        raise SieveRangeError(f"pi({x}) beyond sieve limit {s.limit}")
    if x < 2:
        return 0
    return bisect.bisect_right(s.primes, floor(x))


def prime_in_interval(
    s: Sieve,
    lo: Union[Fraction, int],
    hi: Union[Fraction, int],
    exclude_min: int = 0,
    avoid_divisor_of: int = 1,
) -> Optional[int]:
    """Largest prime p with lo < p <= hi, p > exclude_min, p not dividing
    avoid_divisor_of; None when no prime qualifies.

    The bounds are exact rationals, so the open/closed ends are honored
    without any rounding slop.
    """
    if lo >= hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    if hi > s.limit:
        raise SieveRangeError(f"interval top {hi} beyond sieve limit {s.limit}")
    top = floor(hi)  # p <= hi  <=>  p <= floor(hi)
    lo_idx = bisect.bisect_right(s.primes, max(lo, exclude_min))
    hi_idx = bisect.bisect_right(s.primes, top)
    for idx in range(hi_idx - 1, lo_idx - 1, -1):
        p = s.primes[idx]
        if avoid_divisor_of % p != 0:
            return p
    return None


# ---------------------------------------------------------------------------
# Panaitopol's explicit pi(x) bounds


def _panaitopol(x: Real, sign: int, precision: int) -> "gmpy2.mpfr":
    if isinstance(x, float):
        x = Fraction(x)
    prec = precision
    while prec <= 16 * precision:
        r = Rounder(prec)
        xi = r.make(x)
        log_x = r.log(xi)
        correction = 1 / r.sqrt(log_x)  # (log x)^(-1/2)
        denom = log_x - 1 + correction if sign > 0 else log_x - 1 - correction
        if denom.lo > 0:
            q = xi / denom
            return q.lo if sign > 0 else q.hi
        prec *= 2
    raise PrecisionError(f"Panaitopol denominator sign unresolved at x={x}")


def pi_upper_panaitopol(x: Real, precision: int = 64):
    """Upper bound x/(log x - 1 - (log x)^(-1/2)), rounded up.  Needs x >= 6."""
    if x < 6:
        raise DomainError(f"upper bound valid for x >= 6, got {x}")
    return _panaitopol(x, sign=-1, precision=precision)


def pi_lower_panaitopol(x: Real, precision: int = 64):
    """Lower bound x/(log x - 1 + (log x)^(-1/2)), rounded down.  Needs x >= 59."""
    if x < 59:
        raise DomainError(f"lower bound valid for x >= 59, got {x}")
    return _panaitopol(x, sign=+1, precision=precision)


# ---------------------------------------------------------------------------
# Prime-gap checks


@dataclass(frozen=True)
class GapCheckResult:
    """Outcome of checking k*p_{i+1} < (k+4)*p_i over i in [i_lo, i_hi]."""

    k: int
    i_lo: int
    i_hi: int
    all_pass: bool
    failures: tuple[int, ...]
    checked: int
    tightest_i: int
    tightest_lhs: int  # k * p_{i+1} at the tightest index
    tightest_rhs: int  # (k+4) * p_i at the tightest index


def gap_check(s: Sieve, k: int, i_lo: int, i_hi: int) -> GapCheckResult:
    """Exact integer verification of k*p_{i+1} < (k+4)*p_i for each i.

    Also reports the tightest index (largest lhs/rhs ratio), which is the
    natural audit witness for how much slack the inequality has.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if i_lo < 1 or i_lo > i_hi:
        raise DomainError(f"bad index range [{i_lo}, {i_hi}]")
    if i_hi + 1 > len(s.primes):
        raise SieveRangeError(
            f"gap check needs p_{i_hi + 1}; sieve holds only {len(s.primes)} primes"
        )
    failures = []
    tight_i = i_lo
    tight = (0, 1)  # running max of lhs/rhs as a cross-multiplied pair
    for i in range(i_lo, i_hi + 1):
        p_i = s.primes[i - 1]
        p_next = s.primes[i]
        lhs = k * p_next
        rhs = (k + 4) * p_i
        if lhs >= rhs:
            failures.append(i)
        if lhs * tight[1] > tight[0] * rhs:
            tight = (lhs, rhs)
            tight_i = i
    p_i = s.primes[tight_i - 1]
    p_next = s.primes[tight_i]
    return GapCheckResult(
        k=k,
        i_lo=i_lo,
        i_hi=i_hi,
        all_pass=not failures,
        failures=tuple(failures),
        checked=i_hi - i_lo + 1,
        tightest_i=tight_i,
        tightest_lhs=k * p_next,
        tightest_rhs=(k + 4) * p_i,
    )
