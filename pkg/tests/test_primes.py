from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldbach_circle.errors import DomainError, PreconditionError
from goldbach_circle.primes import is_prime, segment_sieve, sieve_upto

from oracles import td_prime


@pytest.fixture(scope="module")
def table_1e6():
    return sieve_upto(10**6)


def test_sieve_smallest():
    assert sieve_upto(2).primes.tolist() == [2]


def test_sieve_30():
    t = sieve_upto(30)
    assert t.primes.tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(t) == 10


def test_pi_1e6(table_1e6):
    assert len(table_1e6) == 78498


@pytest.mark.parametrize("limit", [2, 3, 4, 9, 15, 16, 17, 63, 64, 65, 1000, 4097])
def test_sieve_matches_trial_division(limit):
    t = sieve_upto(limit)
    assert t.primes.tolist() == [x for x in range(limit + 1) if td_prime(x)]
    assert [x for x in range(-2, limit + 3) if x in t] == t.primes.tolist()


def test_small_segment_span_gives_same_table():
    a = sieve_upto(100_000)
    b = sieve_upto(100_000, segment_span=24)
    assert np.array_equal(a.primes, b.primes)
    assert np.array_equal(a.bits, b.bits)


def test_sieve_idempotent(table_1e6):
    assert np.array_equal(sieve_upto(10**6).primes, table_1e6.primes)


@pytest.mark.parametrize("limit", [0, 1, 2**32 + 1, -5])
def test_sieve_range_error(limit):
    with pytest.raises(DomainError):
        sieve_upto(limit)


def test_vectorized_membership(table_1e6):
    xs = np.arange(-3, 10**6 + 10)
    hits = table_1e6.contains(xs)
    assert np.array_equal(xs[hits], table_1e6.primes)


def test_is_prime_examples():
    assert is_prime(1) is False
    assert is_prime(0) is False
    assert is_prime(2) is True
    assert is_prime(2147483647) is True


def test_is_prime_agrees_with_table(table_1e6):
    flags = [is_prime(x) for x in range(10**6 + 1)]
    assert np.array_equal(np.flatnonzero(flags), table_1e6.primes)


@pytest.mark.parametrize(
    "x, expected",
    [
        (2**61 - 1, True),  # Mersenne prime
        (2**64 - 59, True),  # largest prime below 2**64
        (2**64 - 1, False),
        (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
        (3825123056546413051, False),  # strong pseudoprime to bases 2..23
        (318665857834031151167461 % 2**64, False),
        (1_000_000_007, True),
        (4_294_967_291, True),  # largest 32-bit prime
        (4_294_967_297, False),  # F5 = 641 * 6700417
    ],
)
def test_is_prime_hard_cases(x, expected):
    assert is_prime(x) is expected


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=10**12))
def test_is_prime_matches_trial_division(x):
    assert is_prime(x) == td_prime(x)


def test_is_prime_domain():
    with pytest.raises(DomainError):
        is_prime(-1)
    with pytest.raises(DomainError):
        is_prime(2**64)


def test_segment_examples():
    base = sieve_upto(10**4)
    assert segment_sieve(100, 120, base).odd_primes().tolist() == [101, 103, 107, 109, 113]
    assert segment_sieve(2, 4, base).odd_primes().tolist() == [3]
    assert segment_sieve(0, 12, base).odd_primes().tolist() == [3, 5, 7, 11]


def test_segment_at_1e8_matches_pointwise():
    lo, hi = 10**8, 10**8 + 2**16
    seg = segment_sieve(lo, hi, sieve_upto(10_003))
    expected = [x for x in range(lo + 1, hi, 2) if is_prime(x)]
    assert seg.odd_primes().tolist() == expected
    assert seg.count() == len(expected)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5 * 10**6 - 2), st.integers(1, 3000))
def test_segment_agrees_with_is_prime(lo, width):
    lo -= lo & 1
    hi = lo + width
    seg = segment_sieve(lo, hi, sieve_upto(4000))
    for x in range(lo, hi):
        assert (x in seg) == (x & 1 == 1 and is_prime(x))
    xs = np.arange(lo - 5, hi + 5)
    assert np.array_equal(xs[seg.contains(xs)], seg.odd_primes())


def test_segment_preconditions():
    base = sieve_upto(100)
    with pytest.raises(PreconditionError):
        segment_sieve(11, 20, base)  # odd start
    with pytest.raises(PreconditionError):
        segment_sieve(20, 20, base)  # empty
    with pytest.raises(PreconditionError):
        segment_sieve(0, 10**5, base)  # base too small
