"""Exception hierarchy shared across the package."""

from __future__ import annotations


class SymcertError(Exception):
    """Base class for all symcert-specific errors."""


class DomainError(SymcertError, ValueError):
    """An argument violates an operation's precondition."""


class SieveRangeError(SymcertError, LookupError):
    """A query needs primes beyond the sieve's limit; extend the sieve."""


class PrecisionError(SymcertError, ArithmeticError):
    """A directed-rounding comparison stayed ambiguous at maximum precision."""


class CertificateInconsistency(SymcertError):
    """Internal consistency failure while building a certificate.

    Raised when conditions that provably imply a claim are met but the
    claim's arithmetic cross-check fails; this would contradict the
    identity the claim rests on, so it is a hard error rather than a
    refusal.
    """


class SmallnessNotApplicable(DomainError):
    """H_n^k < k! does not hold, so no smallness certificate exists."""


class CounterexampleFound(SymcertError):
    """S(k,n) turned out to be an integer.

    Expected only for the classical small cases (k,n) = (1,1) and (2,3);
    anywhere with n >= 4 this contradicts the theorem being certified.
    """

    def __init__(self, k: int, n: int, value):
        self.k = k
        self.n = n
        self.value = value
        super().__init__(f"S({k},{n}) = {value} is an integer")


class IncompleteCoverage(SymcertError):
    """verify_theorem could not certify some pairs; lists them."""

    def __init__(self, pairs, report=None):
        self.pairs = list(pairs)
        self.report = report
        shown = ", ".join(f"({k},{n})" for k, n in self.pairs[:8])
        more = "" if len(self.pairs) <= 8 else f", ... ({len(self.pairs)} total)"
        super().__init__(f"no certificate for: {shown}{more}")
