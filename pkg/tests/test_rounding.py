"""Directed-rounding interval layer: containment and certified queries.

The soundness property under test: for any expression built from exact
inputs, the true real value lies in [lo, hi].  We exercise it against
expressions whose exact value is known or is computable as a rational.
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from symcert import DomainError, Interval, PrecisionError, Rounder, certified_sign


rationals = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=997
)


@pytest.fixture(scope="module")
def r64():
    return Rounder(64)


class TestRounderBasics:
    def test_min_precision_enforced(self):
        with pytest.raises(DomainError):
            Rounder(52)

    def test_make_exact_int_is_point(self, r64):
        iv = r64.make(12)
        assert iv.lo == iv.hi == 12

    def test_make_fraction_contains(self, r64):
        iv = r64.make(Fraction(1, 3))
        assert iv.lo < iv.hi
        assert iv.lo < Fraction(1, 3) < iv.hi

    def test_make_decimal_string(self, r64):
        iv = r64.make("3.47603")
        assert iv.lo <= Fraction("3.47603") <= iv.hi

    def test_e_brackets_eulers_number(self, r64):
        iv = r64.e()
        # 2.718281828459045235360287 < e < ...236
        assert iv.lo < Fraction("2.7182818284590452354") < iv.hi
        assert iv.hi - iv.lo < 1e-15


class TestIntervalArithmetic:
    @given(rationals, rationals)
    def test_add_contains(self, a, b):
        r = Rounder(64)
        iv = r.make(a) + r.make(b)
        assert iv.lo <= a + b <= iv.hi

    @given(rationals, rationals)
    def test_sub_contains(self, a, b):
        r = Rounder(64)
        iv = r.make(a) - r.make(b)
        assert iv.lo <= a - b <= iv.hi

    @given(rationals, rationals)
    def test_mul_contains(self, a, b):
        r = Rounder(64)
        iv = r.make(a) * r.make(b)
        assert iv.lo <= a * b <= iv.hi

    @given(rationals, rationals.filter(lambda q: abs(q) > Fraction(1, 100)))
    def test_div_contains(self, a, b):
        r = Rounder(64)
        iv = r.make(a) / r.make(b)
        assert iv.lo <= a / b <= iv.hi

    @given(rationals, st.integers(min_value=0, max_value=8))
    def test_powi_contains(self, a, e):
        r = Rounder(64)
        iv = r.make(a).powi(e)
        assert iv.lo <= a**e <= iv.hi

    def test_div_by_straddling_zero(self, r64):
        z = r64.make(Fraction(-1, 3)) + r64.make(Fraction(1, 3))
        with pytest.raises(ZeroDivisionError):
            r64.make(1) / z

    def test_neg(self, r64):
        iv = -r64.make(Fraction(1, 3))
        assert iv.lo <= Fraction(-1, 3) <= iv.hi

    def test_scalar_coercion(self, r64):
        iv = 1 + r64.make(Fraction(1, 2)) * 2
        assert iv.lo <= 2 <= iv.hi


class TestTranscendentals:
    def test_log_of_e_is_one(self, r64):
        iv = r64.log(r64.e())
        assert iv.lo < 1 < iv.hi or (iv.lo <= 1 <= iv.hi)

    def test_log2_of_int_exact_power(self, r64):
        iv = r64.log2_of_int(2**100)
        assert iv.lo <= 100 <= iv.hi

    def test_log2_of_huge_int(self, r64):
        m = 10**5000
        iv = r64.log2_of_int(m)
        # log2(10^5000) = 5000*log2(10) ~ 16609.6
        assert Fraction(16609) < iv.lo < iv.hi < Fraction(16611)

    def test_log2_factorial_matches_exact(self, r64):
        import math

        for k in (2, 5, 10, 50, 170, 1000):
            iv = r64.log2_factorial(k)
            exact = math.factorial(k)
            # Compare against the integer bracket 2^lo <= k! <= 2^hi
            assert iv.lo <= r64.log2_of_int(exact).hi
            assert iv.hi >= r64.log2_of_int(exact).lo

    def test_sqrt(self, r64):
        iv = r64.sqrt(r64.make(2))
        assert iv.lo**2 <= 2 <= iv.hi**2

    def test_log_rejects_nonpositive(self, r64):
        with pytest.raises(DomainError):
            r64.log(r64.make(0))


class TestCertifiedQueries:
    def test_sign_positive(self, r64):
        assert r64.make(Fraction(1, 3)).sign() == 1

    def test_sign_negative(self, r64):
        assert r64.make(Fraction(-1, 3)).sign() == -1

    def test_sign_ambiguous(self, r64):
        wide = r64.point(r64.make(-1).lo, r64.make(1).hi)
        assert wide.sign() is None

    def test_certainly_lt(self, r64):
        assert r64.make(Fraction(1, 3)).certainly_lt(Fraction(1, 2))
        assert not r64.make(Fraction(1, 3)).certainly_lt(Fraction(1, 3))

    def test_certainly_gt(self, r64):
        assert r64.make(Fraction(1, 2)).certainly_gt(Fraction(1, 3))


class TestCertifiedSign:
    def test_widens_until_determinate(self):
        # e^(e*log x) - x^e == 0 exactly; an additive nudge of 2^-100
        # cannot be separated at 64 bits but is at higher precision.
        def evaluate(r):
            x = r.make(3)
            lhs = r.exp(r.log(x) * r.e())
            rhs = x.rpow(r.e())
            return lhs - rhs + r.make(Fraction(1, 2**100))

        sign, _, prec = certified_sign(evaluate, precision=64)
        assert sign == 1
        assert prec > 64

    def test_raises_past_cap(self):
        def evaluate(r):
            one = r.make(1)
            return r.log(r.exp(one)) - one  # exactly 0, never separable

        with pytest.raises(PrecisionError):
            certified_sign(evaluate, precision=64, max_precision=256)
