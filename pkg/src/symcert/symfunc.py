"""Elementary symmetric functions of 1, 1/2, ..., 1/n, exactly.

S(k,n) is the sum over all k-element subsets of {1, 1/2, ..., 1/n} of the
product of the subset.  The workhorse is a one-row DP on the recurrence

    S(k,n) = S(k,n-1) + (1/n) * S(k-1,n-1),     S(n,n) = (1/n) S(n-1,n-1)

optionally truncated at a caller-supplied k cap, since denominators grow
superpolynomially and memory — not time — is the binding constraint for
full tables.  Two independent algorithms (subset brute force, Newton's
identities over power sums) serve as oracles, and the closed forms for
S(k,k+t), t <= 3, provide the boundary values used by prime certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import gmpy2
from gmpy2 import mpz

from .errors import DomainError
from .rational import ONE, Rat, ZERO, factorial
from .rounding import Rounder

#: Above this n, exact H_n^k vs k! comparisons fall back to the directed
#: (log n + 1)^k < k! overestimate instead of clearing denominators.
EXACT_HARMONIC_LIMIT = 10**6

#: Brute-force subset enumeration refuses beyond this n (C(20,10) ~ 184k).
BRUTEFORCE_DEFAULT_CAP = 20


# ---------------------------------------------------------------------------
# DP row


class SymTable:
    """One DP row holding S(0,n) ... S(min(n, k_cap), n).

    values[0] is always 1 (the empty product); values[n] equals 1/n! when
    the row is not truncated.  advance() moves the row from n to n+1 in
    place; distinct tables are independent, so workers can each own one.
    """

    __slots__ = ("n", "k_cap", "_row")

    def __init__(self, k_cap: int | None = None):
        if k_cap is not None and k_cap < 1:
            raise DomainError(f"k_cap must be >= 1, got {k_cap}")
        self.n = 1
        self.k_cap = k_cap
        self._row: list[Rat] = [ONE, ONE]  # S(0,1), S(1,1)

    @property
    def top_k(self) -> int:
        """Largest k currently stored."""
        return len(self._row) - 1

    @property
    def values(self) -> tuple[Rat, ...]:
        return tuple(self._row)

    def value(self, k: int) -> Rat:
        if not 0 <= k <= self.top_k:
            raise DomainError(
                f"S({k},{self.n}) not in this row (stored k <= {self.top_k})"
            )
        return self._row[k]

    def advance(self) -> None:
        """Advance the row from n to n+1."""
        n = self.n + 1
        inv = Rat(1, n)
        row = self._row
        m = len(row) - 1
        if m < n and (self.k_cap is None or m < self.k_cap):
            row.append(row[m] * inv)  # the new diagonal S(n,n)
        for k in range(min(m, n - 1), 0, -1):
            row[k] += row[k - 1] * inv
        self.n = n

    def advance_to(self, n: int) -> None:
        if n < self.n:
            raise DomainError(f"cannot rewind row from n={self.n} to {n}")
        while self.n < n:
            self.advance()


def esym(k: int, n: int) -> Rat:
    """Exact S(k,n) by the row DP."""
    _check_kn(k, n)
    table = SymTable(k_cap=k)
    table.advance_to(n)
    return table.value(k)


def _check_kn(k: int, n: int) -> None:
    if k < 1 or k > n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")


# ---------------------------------------------------------------------------
# Independent algorithms (oracles)


def esym_bruteforce(k: int, n: int, cap: int = BRUTEFORCE_DEFAULT_CAP) -> Rat:
    """S(k,n) summed over all k-subsets directly.  Refuses n > cap."""
    _check_kn(k, n)
    if n > cap:
        raise DomainError(f"brute force refused: n={n} exceeds cap {cap}")
    total = ZERO
    for subset in itertools.combinations(range(1, n + 1), k):
        prod = 1
        for i in subset:
            prod *= i
        total += Rat(1, prod)
    return total


def power_sum(j: int, n: int) -> Rat:
    """p_j = sum_{i=1..n} (1/i)^j, exactly."""
    if j < 1 or n < 1:
        raise DomainError(f"need j >= 1 and n >= 1, got j={j}, n={n}")
    return sum((Rat(1, i**j) for i in range(1, n + 1)), start=ZERO)


def esym_newton(k: int, n: int) -> Rat:
    """S(k,n) via Newton's identities: m*e_m = sum_j (-1)^(j-1) e_(m-j) p_j.

    A genuinely different algorithm from the DP (power sums instead of
    subset recursion), kept for cross-validation and benchmarking.
    """
    _check_kn(k, n)
    p = [ZERO] + [power_sum(j, n) for j in range(1, k + 1)]
    e = [ONE] + [ZERO] * k
    for m in range(1, k + 1):
        acc = ZERO
        for j in range(1, m + 1):
            term = e[m - j] * p[j]
            acc += term if j % 2 == 1 else -term
        e[m] = acc / m
    return e[k]


# ---------------------------------------------------------------------------
# Generalized families (for the arithmetic-progression explorer)


@dataclass(frozen=True)
class ReciprocalFamily:
    """An explicit list of nonzero rationals whose symmetric functions we take."""

    terms: tuple[Rat, ...]
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if any(t == 0 for t in self.terms):
            raise DomainError("family terms must be nonzero")

    @classmethod
    def reciprocals_of_ap(cls, a: int, m: int, count: int) -> "ReciprocalFamily":
        """{1/(a+i*m)} for i = 0..count-1."""
        if count < 1:
            raise DomainError("count must be >= 1")
        denoms = [a + i * m for i in range(count)]
        if any(d == 0 for d in denoms):
            raise DomainError("arithmetic progression hits zero")
        return cls(
            terms=tuple(Rat(1, d) for d in denoms),
            description=f"1/({a}+i*{m}), i=0..{count - 1}",
        )


def esym_general(k: int, fam: ReciprocalFamily) -> Rat:
    """k-th elementary symmetric function of fam.terms by the same row DP."""
    if k < 1 or k > len(fam.terms):
        raise DomainError(f"k={k} out of range for {len(fam.terms)} terms")
    e = [ONE] + [ZERO] * k
    for t in fam.terms:
        for j in range(k, 0, -1):
            e[j] += t * e[j - 1]
    return e[k]


# ---------------------------------------------------------------------------
# Harmonic numbers

# Divide-and-conquer keeps the unreduced num/den pair small enough to be
# practical out to n = 10^6 (the den is ~n log n bits instead of n! bits
# from naive left-folding with reduction disabled, and no per-step gcd).


def _hsum(lo: int, hi: int) -> tuple[mpz, mpz]:
    if hi - lo < 32:
        num, den = mpz(0), mpz(1)
        for i in range(lo, hi + 1):
            num = num * i + den
            den *= i
        return num, den
    mid = (lo + hi) // 2
    a, b = _hsum(lo, mid)
    c, d = _hsum(mid + 1, hi)
    return a * d + c * b, b * d


@lru_cache(maxsize=8)
def _harmonic_num_den(n: int) -> tuple[mpz, mpz]:
    """Unreduced (num, den) with H_n = num/den."""
    return _hsum(1, n)


@lru_cache(maxsize=8)
def _harmonic_reduced(n: int) -> tuple[mpz, mpz]:
    a, b = _harmonic_num_den(n)
    g = gmpy2.gcd(a, b)
    return a // g, b // g


def harmonic(n: int) -> Rat:
    """Exact H_n = 1 + 1/2 + ... + 1/n = S(1,n)."""
    if n < 1:
        raise DomainError(f"harmonic needs n >= 1, got {n}")
    num, den = _harmonic_reduced(n)
    return Rat(int(num), int(den))


@lru_cache(maxsize=4096)
def harmonic_digit_counts(n: int) -> tuple[int, int]:
    """Decimal digit counts of the reduced numerator and denominator of H_n."""
    if n < 1:
        raise DomainError(f"harmonic needs n >= 1, got {n}")
    num, den = _harmonic_reduced(n)
    return len(num.digits(10)), len(den.digits(10))


# ---------------------------------------------------------------------------
# Closed-form sums and boundary values


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num} not divisible by {den}")
    return q


def closed_sum_linear(k: int) -> int:
    """sum of i over 1 <= i <= k+1  =  (k+1)(k+2)/2."""
    if k < 0:
        raise DomainError("k must be >= 0")
    return _exact_div((k + 1) * (k + 2), 2)


def closed_sum_quadratic(k: int) -> int:
    """sum of i*j over 1 <= i < j <= k+2  =  (k+1)(k+2)(k+3)(3k+8)/24."""
    if k < 0:
        raise DomainError("k must be >= 0")
    return _exact_div((k + 1) * (k + 2) * (k + 3) * (3 * k + 8), 24)


def closed_sum_cubic(k: int) -> int:
    """sum of i*j*s over 1 <= i < j < s <= k+3  =  (k+1)(k+2)(k+3)^2(k+4)^2/48."""
    if k < 0:
        raise DomainError("k must be >= 0")
    return _exact_div((k + 1) * (k + 2) * (k + 3) ** 2 * (k + 4) ** 2, 48)


def boundary_value(k: int, t: int) -> Rat:
    """S(k, k+t) in closed form for t in {0,1,2,3}.

    These are the values sitting just above the diagonal: 1/k!, then the
    three sums above divided by (k+t)!, which simplify to the forms below.
    """
    if k < 1:
        raise DomainError(f"boundary_value needs k >= 1, got {k}")
    kf = factorial(k)
    if t == 0:
        return Rat(1, kf)
    if t == 1:
        return Rat(k + 2, 2 * kf)
    if t == 2:
        return Rat((k + 3) * (3 * k + 8), 24 * kf)
    if t == 3:
        return Rat((k + 3) * (k + 4) ** 2, 48 * kf)
    raise DomainError(f"boundary_value needs t in 0..3, got {t}")


# ---------------------------------------------------------------------------
# The smallness comparison H_n^k < k!


@lru_cache(maxsize=8192)
def _ctx_pair(precision: int):
    return (
        gmpy2.context(precision=precision, round=gmpy2.RoundDown),
        gmpy2.context(precision=precision, round=gmpy2.RoundUp),
    )


@lru_cache(maxsize=8192)
def _log2_harmonic_raw(n: int, precision: int):
    """Certified (lo, hi) bracket of log2(H_n), from the unreduced pair."""
    a, b = _harmonic_num_den(n)
    dn, up = _ctx_pair(precision)
    lo = dn.sub(dn.log2(a), up.log2(b))
    hi = up.sub(up.log2(a), dn.log2(b))
    return lo, hi


@lru_cache(maxsize=8192)
def _log2_factorial_raw(k: int, precision: int):
    """Certified (lo, hi) bracket of log2(k!), via lngamma."""
    if k < 2:
        z = gmpy2.mpfr(0)
        return z, z
    dn, up = _ctx_pair(precision)
    return (
        dn.div(dn.lngamma(k + 1), up.log(2)),
        up.div(up.lngamma(k + 1), dn.log(2)),
    )


def log2_harmonic_interval(n: int, rounder: Rounder):
    lo, hi = _log2_harmonic_raw(n, rounder.precision)
    return rounder.point(lo, hi)


def log2_factorial_interval(k: int, rounder: Rounder):
    lo, hi = _log2_factorial_raw(k, rounder.precision)
    return rounder.point(lo, hi)


def _compare_by_logs(k: int, n: int, precision: int):
    """True/False when k*log2(H_n) vs log2(k!) separates; None if not."""
    h_lo, h_hi = _log2_harmonic_raw(n, precision)
    f_lo, f_hi = _log2_factorial_raw(k, precision)
    dn, up = _ctx_pair(precision)
    if up.mul(h_hi, k) < f_lo:
        return True
    if dn.mul(h_lo, k) > f_hi:
        return False
    return None


def smallness_bound_holds(k: int, n: int, precision: int = 64) -> bool:
    """Decide H_n^k < k! — true implies 0 < S(k,n) < 1.

    For n up to EXACT_HARMONIC_LIMIT the answer is exact: a directed log
    comparison decides almost every case instantly, and the rare
    near-ties fall back to clearing denominators in integer arithmetic.
    Beyond the limit the overestimate (log n + 1)^k < k! is evaluated
    with directed rounding; True is still sound (H_n < log n + 1) and
    an unprovable case conservatively returns False.
    """
    _check_kn(k, n)
    if n <= EXACT_HARMONIC_LIMIT:
        prec = precision
        for _ in range(3):
            decided = _compare_by_logs(k, n, prec)
            if decided is not None:
                return decided
            prec *= 2
        a, b = _harmonic_num_den(n)
        return a**k < mpz(factorial(k)) * b**k
    prec = precision
    for _ in range(3):
        r = Rounder(prec)
        log_bound = r.log2(r.log(r.make(n)) + 1)  # log2(log n + 1), log n + 1 > 1
        lhs = log_bound * k
        rhs = r.log2_factorial(k)
        if lhs.certainly_lt(rhs):
            return True
        if lhs.certainly_gt(rhs):
            return False
        prec *= 2
    return False
