"""Symmetric-function engine: DP, oracles, closed forms, harmonic numbers."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symcert import (
    DomainError,
    Rat,
    ReciprocalFamily,
    Rounder,
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
    v_p,
)
from symcert.rational import factorial


class TestKnownValues:
    """The six classical small values, exact."""

    @pytest.mark.parametrize(
        "k,n,expect",
        [
            (1, 1, Rat(1)),
            (1, 2, Rat(3, 2)),
            (2, 2, Rat(1, 2)),
            (1, 3, Rat(11, 6)),
            (2, 3, Rat(1)),
            (3, 3, Rat(1, 6)),
        ],
    )
    def test_intro_table(self, k, n, expect):
        assert esym(k, n) == expect

    def test_s24(self):
        assert esym(2, 4) == Rat(35, 24)

    def test_diagonal_is_inverse_factorial(self):
        for n in (1, 2, 5, 10, 40):
            assert esym(n, n) == Rat(1, factorial(n))

    def test_bad_args(self):
        with pytest.raises(DomainError):
            esym(0, 5)
        with pytest.raises(DomainError):
            esym(6, 5)


class TestOracles:
    def test_three_engines_agree_sample(self):
        for k, n in [(1, 7), (3, 9), (5, 11), (7, 12), (12, 12), (2, 10)]:
            v = esym(k, n)
            assert v == esym_bruteforce(k, n)
            assert v == esym_newton(k, n)

    def test_bruteforce_cap(self):
        with pytest.raises(DomainError):
            esym_bruteforce(2, 25)

    @given(st.integers(min_value=1, max_value=10))
    @settings(max_examples=25, deadline=None)
    def test_dp_equals_bruteforce_whole_row(self, n):
        table = SymTable()
        table.advance_to(n)
        for k in range(1, n + 1):
            assert table.value(k) == esym_bruteforce(k, n)

    def test_power_sum_values(self):
        assert power_sum(1, 4) == harmonic(4)
        assert power_sum(2, 2) == Rat(5, 4)
        assert power_sum(3, 2) == Rat(9, 8)


class TestSymTable:
    def test_incremental_matches_fresh(self):
        t = SymTable(k_cap=6)
        t.advance_to(17)
        for k in range(1, 7):
            assert t.value(k) == esym(k, 17)

    def test_k_cap_truncates(self):
        t = SymTable(k_cap=3)
        t.advance_to(10)
        assert t.top_k == 3
        with pytest.raises(DomainError):
            t.value(4)

    def test_row_positive(self):
        t = SymTable()
        t.advance_to(25)
        assert all(v > 0 for v in t.values[1:])

    def test_advance_to_backwards_rejected(self):
        t = SymTable()
        t.advance_to(5)
        with pytest.raises(DomainError):
            t.advance_to(4)


class TestGeneralFamilies:
    def test_plain_reciprocals_match_esym(self):
        fam = ReciprocalFamily.reciprocals_of_ap(1, 1, 9)
        for k in (1, 3, 9):
            assert esym_general(k, fam) == esym(k, 9)

    def test_odd_reciprocals(self):
        fam = ReciprocalFamily.reciprocals_of_ap(1, 2, 3)  # 1, 1/3, 1/5
        assert esym_general(1, fam) == Rat(23, 15)
        assert esym_general(3, fam) == Rat(1, 15)

    def test_zero_term_rejected(self):
        with pytest.raises(DomainError):
            ReciprocalFamily(terms=(Rat(1), Rat(0)))

    def test_constant_family(self):
        # m=0: `count` copies of 1/a; e_k = C(count,k) / a^k
        fam = ReciprocalFamily.reciprocals_of_ap(2, 0, 5)
        assert esym_general(2, fam) == Rat(math.comb(5, 2), 4)


class TestHarmonic:
    def test_small_values(self):
        assert harmonic(1) == Rat(1)
        assert harmonic(2) == Rat(3, 2)
        assert harmonic(4) == Rat(25, 12)

    def test_equals_esym_row(self):
        for n in (1, 5, 30, 100):
            assert harmonic(n) == esym(1, n)

    def test_row_edge_identities_to_300(self):
        # S(1,n) = H_n and S(n,n) = 1/n! along one incrementally
        # advanced full row.
        t = SymTable()
        h = Rat(0)
        nfact = 1
        for n in range(1, 301):
            if n > 1:
                t.advance()
            h += Rat(1, n)
            nfact *= n
            assert t.value(1) == h == harmonic(n)
            assert t.value(n) == Rat(1, nfact)

    @pytest.mark.parametrize("n", [2, 3, 4, 7, 8, 100, 1023, 1024, 9999])
    def test_two_adic_valuation(self, n):
        # v_2(H_n) = -floor(log2 n): the largest power of two in 1..n
        # is the unique term of minimal 2-adic valuation.
        assert v_p(harmonic(n), 2).valuation == -(n.bit_length() - 1)

    def test_digit_counts_match_reduced(self):
        h = harmonic(500)
        nd, dd = harmonic_digit_counts(500)
        assert nd == len(str(h.numerator))
        assert dd == len(str(h.denominator))

    def test_million_term_harmonic(self):
        # The largest n the exact path serves; ~0.4M digits each side.
        h6 = harmonic(10**6)
        assert v_p(h6, 2).valuation == -19
        nd, dd = harmonic_digit_counts(10**6)
        assert nd > 400000 and dd > 400000

    def test_log2_bracket_contains_true_value(self):
        # Exact-rational comparison (bare mpfr arithmetic would re-round
        # through the default context and defeat the point of the test).
        def exact(m):
            return Fraction(*m.as_integer_ratio())

        r = Rounder(64)
        for n in (2, 10, 1000, 99991):
            iv = log2_harmonic_interval(n, r)
            h = harmonic(n)
            lg_num = r.log2_of_int(h.numerator)
            lg_den = r.log2_of_int(h.denominator)
            assert exact(iv.lo) <= exact(lg_num.hi) - exact(lg_den.lo)
            assert exact(iv.hi) >= exact(lg_num.lo) - exact(lg_den.hi)

    def test_log2_factorial_bracket(self):
        r = Rounder(64)
        for k in (2, 10, 400):
            iv = log2_factorial_interval(k, r)
            lg = r.log2_of_int(factorial(k))
            assert iv.lo <= lg.hi and iv.hi >= lg.lo


class TestClosedSums:
    def _linear_enum(self, k):
        return sum(range(1, k + 2))

    def _quadratic_enum(self, k):
        import itertools

        return sum(i * j for i, j in itertools.combinations(range(1, k + 3), 2))

    def _cubic_enum(self, k):
        import itertools

        return sum(
            i * j * s for i, j, s in itertools.combinations(range(1, k + 4), 3)
        )

    @pytest.mark.parametrize("k", [0, 1, 2, 3, 10, 37])
    def test_match_enumeration(self, k):
        assert closed_sum_linear(k) == self._linear_enum(k)
        assert closed_sum_quadratic(k) == self._quadratic_enum(k)
        assert closed_sum_cubic(k) == self._cubic_enum(k)

    def test_first_values(self):
        assert closed_sum_linear(1) == 3  # 1 + 2
        assert closed_sum_quadratic(1) == 11  # 1*2 + 1*3 + 2*3
        # Enumeration over 1 <= i < j < s <= 4: 6 + 8 + 12 + 24 = 50,
        # and the formula (k+1)(k+2)(k+3)^2(k+4)^2/48 = 2400/48 agrees.
        assert closed_sum_cubic(1) == 50

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            closed_sum_linear(-1)


class TestBoundaryValues:
    @pytest.mark.parametrize("k", [1, 2, 3, 7, 15])
    @pytest.mark.parametrize("t", [0, 1, 2, 3])
    def test_equals_esym(self, k, t):
        assert boundary_value(k, t) == esym(k, k + t)

    def test_t0_is_diagonal(self):
        assert boundary_value(5, 0) == Rat(1, 120)

    def test_t_out_of_range(self):
        with pytest.raises(DomainError):
            boundary_value(3, 4)

    @pytest.mark.parametrize("t", [0, 1, 2, 3])
    def test_numerator_times_factorials(self, t):
        # The closed sums are the boundary values scaled by (k+t)!:
        # S(k,k+t)*(k+t)! enumerates products of (t)-subsets' complements.
        k = 6
        scaled = boundary_value(k, t) * factorial(k + t)
        assert scaled == {
            0: Rat(1),
            1: Rat(closed_sum_linear(k)),
            2: Rat(closed_sum_quadratic(k)),
            3: Rat(closed_sum_cubic(k)),
        }[t]


class TestSmallness:
    def test_holds_cases(self):
        # H_4^4 = (25/12)^4 < 24 = 4!
        assert smallness_bound_holds(4, 4)
        # a point deep in the asymptotic regime (k > e*log n + e)
        assert smallness_bound_holds(38, 300000)

    def test_fails_cases(self):
        assert not smallness_bound_holds(1, 2)  # 3/2 > 1
        assert not smallness_bound_holds(2, 4)  # (25/12)^2 > 2

    def test_matches_exact_comparison(self):
        for k in range(1, 12):
            for n in (k, k + 3, 2 * k + 1, 50):
                if n < k:
                    continue
                want = harmonic(n) ** k < factorial(k)
                assert smallness_bound_holds(k, n) == want

    def test_beyond_exact_limit_is_conservative(self):
        # n = 10^6 + 1 takes the (log n + 1)^k overestimate path; for
        # large k it certifies, and it must never claim smallness that
        # the true H_n bound would refute (overestimate soundness).
        n = 10**6 + 1
        assert smallness_bound_holds(60, n)
        assert not smallness_bound_holds(2, n)

    def test_implies_value_below_one(self):
        for k, n in [(4, 4), (9, 12), (13, 40), (20, 100)]:
            if smallness_bound_holds(k, n):
                v = esym(k, n)
                assert 0 < v < 1
