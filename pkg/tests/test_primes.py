"""Sieve, nth prime, pi(x), Panaitopol bounds, interval search, gap checks."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symcert import (
    DomainError,
    SieveRangeError,
    gap_check,
    nth_prime,
    pi_lower_panaitopol,
    pi_upper_panaitopol,
    prime_count,
    prime_in_interval,
    sieve_upto,
)

SMALL = sieve_upto(2000)


def _is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class TestSieve:
    def test_first_primes(self):
        assert sieve_upto(10).primes == (2, 3, 5, 7)

    def test_matches_trial_division(self, sieve_small):
        for n in range(10**4 + 1):
            assert (n in sieve_small) == _is_prime_trial(n)

    def test_prime_list_consistent_with_table(self, sieve_small):
        assert list(sieve_small.primes) == [
            n for n in range(2, sieve_small.limit + 1) if n in sieve_small
        ]

    def test_membership_beyond_limit_raises(self):
        with pytest.raises(SieveRangeError):
            10**5 in SMALL

    def test_limit_below_two_rejected(self):
        with pytest.raises(DomainError):
            sieve_upto(1)

    def test_inclusive_limit(self):
        assert sieve_upto(13).primes[-1] == 13


class TestNthPrime:
    def test_first(self):
        assert nth_prime(SMALL, 1) == 2

    def test_p21_is_73(self):
        assert nth_prime(SMALL, 21) == 73

    def test_p34_is_139(self):
        assert nth_prime(SMALL, 34) == 139

    def test_p1271_exceeds_gap_bound(self, sieve_1m):
        # 29 * p_1271 > 300000: the pivot that closes the k=37 case.
        assert 29 * nth_prime(sieve_1m, 1271) > 300000

    def test_beyond_sieve(self):
        with pytest.raises(SieveRangeError):
            nth_prime(SMALL, 10**6)

    def test_bad_index(self):
        with pytest.raises(DomainError):
            nth_prime(SMALL, 0)


class TestPrimeCount:
    @pytest.mark.parametrize("x,expect", [(10, 4), (59, 17), (139, 34), (2, 1), (1, 0)])
    def test_values(self, x, expect):
        assert prime_count(SMALL, x) == expect

    def test_noninteger_arguments(self):
        assert prime_count(SMALL, Fraction(29, 2)) == 6  # primes <= 14.5
        assert prime_count(SMALL, 10.9) == 4

    def test_equals_prime_list_length_at_limit(self, sieve_small):
        assert prime_count(sieve_small, sieve_small.limit) == len(sieve_small.primes)

    def test_beyond_limit(self):
        with pytest.raises(SieveRangeError):
            prime_count(SMALL, 10**5)


class TestPanaitopol:
    def test_bracket_at_59(self):
        assert pi_lower_panaitopol(59) < 17 < pi_upper_panaitopol(59)

    def test_bracket_at_1e5(self, sieve_1m):
        pi = prime_count(sieve_1m, 10**5)
        assert pi_lower_panaitopol(10**5) < pi < pi_upper_panaitopol(10**5)

    def test_upper_domain_edge(self):
        u = pi_upper_panaitopol(6)
        assert u >= 3  # pi(6) = 3

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            pi_upper_panaitopol(5)
        with pytest.raises(DomainError):
            pi_lower_panaitopol(58)

    def test_sampled_bracketing(self, sieve_1m):
        # 20 log-spaced points; the acceptance suite runs the full 200.
        for j in range(20):
            x = round(59 * (10**6 / 59) ** (j / 19))
            pi = prime_count(sieve_1m, x)
            assert pi_lower_panaitopol(x) < pi < pi_upper_panaitopol(x)

    def test_directed_rounding_orders_endpoints(self):
        # The same formula evaluated down/up must straddle its float value.
        x = 31_337
        lo = pi_lower_panaitopol(x)
        naive = x / (math.log(x) - 1 + math.log(x) ** -0.5)
        assert float(lo) <= naive * (1 + 1e-12)


class TestPrimeInInterval:
    def test_worked_example_hit(self):
        # (26/6, 13]: candidates 5, 7, 11, 13; exclude_min=6 drops 5;
        # avoid 14 drops 7; largest survivor 13.
        assert prime_in_interval(SMALL, Fraction(26, 6), 13, 6, 14) == 13

    def test_worked_example_miss(self):
        # (20/6, 10]: candidates 5, 7; exclude_min=6 drops 5, 7 | 14.
        assert prime_in_interval(SMALL, Fraction(20, 6), 10, 6, 14) is None

    def test_trivial(self):
        assert prime_in_interval(SMALL, 2, 3) == 3

    def test_open_lower_end(self):
        assert prime_in_interval(SMALL, 13, 14) is None
        assert prime_in_interval(SMALL, 12, 13) == 13

    def test_beyond_sieve(self):
        with pytest.raises(SieveRangeError):
            prime_in_interval(SMALL, 2, 10**5)

    def test_empty_interval_rejected(self):
        with pytest.raises(DomainError):
            prime_in_interval(SMALL, 5, 5)

    @given(
        lo=st.integers(min_value=0, max_value=998),
        width=st.integers(min_value=1, max_value=300),
        exclude=st.integers(min_value=0, max_value=30),
        avoid=st.integers(min_value=1, max_value=400),
    )
    @settings(max_examples=200, deadline=None)
    def test_matches_enumeration(self, lo, width, exclude, avoid):
        hi = lo + width
        want = [
            p
            for p in SMALL.primes
            if lo < p <= hi and p > exclude and avoid % p != 0
        ]
        got = prime_in_interval(SMALL, lo, hi, exclude, avoid)
        assert got == (max(want) if want else None)


class TestGapCheck:
    def test_single_index_worked_values(self, sieve_1m):
        r = gap_check(sieve_1m, 37, 34, 34)
        assert r.all_pass
        assert (r.tightest_lhs, r.tightest_rhs) == (37 * 149, 41 * 139)
        assert r.tightest_lhs == 5513 and r.tightest_rhs == 5699

    def test_monotone_in_k(self, sieve_1m):
        # If the check passes at k it passes at any smaller k.
        assert gap_check(sieve_1m, 37, 34, 1270).all_pass
        assert gap_check(sieve_1m, 36, 34, 1270).all_pass

    def test_failure_recorded(self):
        # k=100 at i=4: 100*11 = 1100 >= 104*7 = 728.
        r = gap_check(SMALL, 100, 4, 4)
        assert not r.all_pass
        assert r.failures == (4,)
        assert r.checked == 1

    def test_tightest_is_max_ratio(self, sieve_1m):
        r = gap_check(sieve_1m, 37, 34, 300)
        best = max(
            range(34, 301),
            key=lambda i: Fraction(sieve_1m.primes[i], sieve_1m.primes[i - 1]),
        )
        assert r.tightest_i == best

    def test_needs_one_extra_prime(self):
        n_primes = len(SMALL.primes)
        with pytest.raises(SieveRangeError):
            gap_check(SMALL, 2, n_primes, n_primes)
        assert gap_check(SMALL, 2, n_primes - 1, n_primes - 1).checked == 1

    def test_bad_args(self):
        with pytest.raises(DomainError):
            gap_check(SMALL, 0, 1, 2)
        with pytest.raises(DomainError):
            gap_check(SMALL, 2, 5, 4)
