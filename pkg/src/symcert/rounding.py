"""Directed-rounding interval evaluation on top of gmpy2/MPFR.

Every transcendental comparison in the package (Panaitopol bounds, the
e·log n + e threshold, the analytic region checks) is made sound by
evaluating the expression twice — once rounding every operation toward
-inf and once toward +inf — so the true real value is bracketed.  A sign
or comparison conclusion drawn from the bracket is then provably correct
at the working precision; an inconclusive bracket means "widen and
retry", never "guess".

MPFR guarantees correct rounding per operation, which is what makes the
endpoints trustworthy.  ``Interval`` is a small value class carrying its
rounder; arithmetic overloads keep formula-heavy call sites readable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

import gmpy2

from .errors import DomainError, PrecisionError

Number = Union[int, Fraction, str, "Interval"]

MIN_PRECISION = 53


class Rounder:
    """A pair of MPFR contexts at one precision, rounding down and up."""

    def __init__(self, precision: int = 64):
        if precision < MIN_PRECISION:
            raise DomainError(f"precision {precision} < minimum {MIN_PRECISION}")
        self.precision = precision
        self.down = gmpy2.context(precision=precision, round=gmpy2.RoundDown)
        self.up = gmpy2.context(precision=precision, round=gmpy2.RoundUp)

    # -- construction -------------------------------------------------

    def make(self, x: Number) -> "Interval":
        """Enclose an exact value (int, Fraction, decimal string)."""
        if isinstance(x, Interval):
            if x.rounder.precision != self.precision:
                raise DomainError("mixing intervals of different precision")
            return x
        if isinstance(x, Fraction):
            lo = self.down.div(gmpy2.mpz(x.numerator), gmpy2.mpz(x.denominator))
            hi = self.up.div(gmpy2.mpz(x.numerator), gmpy2.mpz(x.denominator))
        else:
            if isinstance(x, str):
                x = gmpy2.mpq(x)  # exact decimal -> rational, no binary fuzz
            lo = self.down.add(x, 0)
            hi = self.up.add(x, 0)
        return Interval(self, lo, hi)

    def e(self) -> "Interval":
        """Euler's number, correctly rounded both ways."""
        return Interval(self, self.down.exp(1), self.up.exp(1))

    def point(self, lo, hi) -> "Interval":
        return Interval(self, lo, hi)

    # -- monotone transcendentals on intervals -------------------------

    def log(self, x: "Interval") -> "Interval":
        if not x.lo > 0:
            raise DomainError("log needs a certainly-positive interval")
        return Interval(self, self.down.log(x.lo), self.up.log(x.hi))

    def log2(self, x: "Interval") -> "Interval":
        if not x.lo > 0:
            raise DomainError("log2 needs a certainly-positive interval")
        return Interval(self, self.down.log2(x.lo), self.up.log2(x.hi))

    def exp(self, x: "Interval") -> "Interval":
        return Interval(self, self.down.exp(x.lo), self.up.exp(x.hi))

    def sqrt(self, x: "Interval") -> "Interval":
        if not x.lo >= 0:
            raise DomainError("sqrt needs a certainly-nonnegative interval")
        return Interval(self, self.down.sqrt(x.lo), self.up.sqrt(x.hi))

    def log2_of_int(self, m: int) -> "Interval":
        """log2 of a (possibly huge) positive integer, both-rounded.

        The int->mpfr conversion itself rounds per context; since log2 is
        increasing, rounding the argument the same way as the operation
        keeps each endpoint on the safe side.
        """
        if m <= 0:
            raise DomainError("log2_of_int needs a positive integer")
        z = gmpy2.mpz(m)
        return Interval(self, self.down.log2(z), self.up.log2(z))

    def log2_factorial(self, k: int) -> "Interval":
        """Certified bracket of log2(k!), via correctly-rounded lngamma."""
        if k < 0:
            raise DomainError("negative factorial")
        if k < 2:
            return self.make(0)
        ln_lo = self.down.lngamma(k + 1)
        ln_hi = self.up.lngamma(k + 1)
        ln2_lo = self.down.log(2)
        ln2_hi = self.up.log(2)
        return Interval(self, self.down.div(ln_lo, ln2_hi), self.up.div(ln_hi, ln2_lo))


class Interval:
    """Closed interval [lo, hi] of MPFR floats certified to contain a real."""

    __slots__ = ("rounder", "lo", "hi")

    def __init__(self, rounder: Rounder, lo, hi):
        assert lo <= hi, f"inverted interval [{lo}, {hi}]"
        self.rounder = rounder
        self.lo = lo
        self.hi = hi

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other: Number) -> "Interval":
        return self.rounder.make(other)

    def __add__(self, other: Number) -> "Interval":
        o = self._coerce(other)
        r = self.rounder
        return Interval(r, r.down.add(self.lo, o.lo), r.up.add(self.hi, o.hi))

    __radd__ = __add__

    def __sub__(self, other: Number) -> "Interval":
        o = self._coerce(other)
        r = self.rounder
        return Interval(r, r.down.sub(self.lo, o.hi), r.up.sub(self.hi, o.lo))

    def __rsub__(self, other: Number) -> "Interval":
        return self._coerce(other).__sub__(self)

    def __mul__(self, other: Number) -> "Interval":
        o = self._coerce(other)
        r = self.rounder
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(r.down.mul(a, b) for a, b in pairs)
        hi = max(r.up.mul(a, b) for a, b in pairs)
        return Interval(r, lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "Interval":
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval straddles zero")
        r = self.rounder
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(r.down.div(a, b) for a, b in pairs)
        hi = max(r.up.div(a, b) for a, b in pairs)
        return Interval(r, lo, hi)

    def __rtruediv__(self, other: Number) -> "Interval":
        return self._coerce(other).__truediv__(self)

    def __neg__(self) -> "Interval":
        # Bare `-x` on an mpfr re-rounds through the *default* context
        # (53-bit, to-nearest), which can pull an endpoint onto the wrong
        # side; negate through the directed contexts instead.
        r = self.rounder
        return Interval(r, r.down.minus(self.hi), r.up.minus(self.lo))

    def powi(self, e: int) -> "Interval":
        """Integer power by repeated interval multiplication (e >= 0)."""
        if e < 0:
            raise DomainError("powi needs e >= 0")
        out = self.rounder.make(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def rpow(self, exponent: Number) -> "Interval":
        """self**exponent for certainly-positive self, via exp(e*log(b))."""
        r = self.rounder
        return r.exp(r.log(self) * r.make(exponent))

    # -- certified queries ----------------------------------------------

    def sign(self) -> Optional[int]:
        """+1 / -1 when the sign is certain, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def certainly_lt(self, other: Number) -> bool:
        return self.hi < self._coerce(other).lo

    def certainly_le(self, other: Number) -> bool:
        return self.hi <= self._coerce(other).lo

    def certainly_gt(self, other: Number) -> bool:
        return self.lo > self._coerce(other).hi

    def width_str(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"Interval({self.lo}, {self.hi})"


def certified_sign(evaluate, precision: int = 64, max_precision: int = 4096) -> tuple[int, "Interval", int]:
    """Evaluate ``evaluate(Rounder) -> Interval`` at widening precisions.

    Returns (sign, interval, precision_used) for the first precision at
    which the sign is determinate; raises PrecisionError past the cap.
    """
    prec = precision
    while prec <= max_precision:
        iv = evaluate(Rounder(prec))
        s = iv.sign()
        if s is not None:
            return s, iv, prec
        prec *= 2
    raise PrecisionError(
        f"sign still ambiguous at {max_precision} bits: {iv.width_str()}"
    )
