from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldbach_circle.errors import DomainError
from goldbach_circle.partitions import (
    CometPoint,
    GoldbachPartition,
    all_partitions,
    comet,
    comet_counts,
    count_partitions,
    minimal_partition,
)
from goldbach_circle.primes import segment_sieve, sieve_upto

from oracles import naive_minimal_p1, naive_partition_map, naive_partitions, td_table


def pairs(parts):
    return [(p.p1, p.p2) for p in parts]


@pytest.mark.parametrize("e, expected", [(6, (3, 3)), (12, (5, 7)), (98, (19, 79))])
def test_minimal_partition_examples(e, expected):
    p = minimal_partition(e)
    assert (p.p1, p.p2) == expected


def test_all_partitions_examples():
    assert pairs(all_partitions(6)) == [(3, 3)]
    assert pairs(all_partitions(10)) == [(3, 7), (5, 5)]
    assert pairs(all_partitions(22)) == [(3, 19), (5, 17), (11, 11)]


def test_count_partitions_examples():
    assert count_partitions(6) == 1
    assert count_partitions(10) == 2
    assert count_partitions(100) == 6


def test_comet_examples():
    assert list(comet(6, 12)) == [CometPoint(6, 1), CometPoint(8, 1), CometPoint(10, 2)]
    assert list(comet(6, 8)) == [CometPoint(6, 1)]


def test_comet_total_to_1000():
    # double-loop oracle total over [6, 1000)
    assert sum(pt.count for pt in comet(6, 1000)) == 8193
    table = td_table(1000)
    assert sum(len(naive_partitions(e, table)) for e in range(6, 1000, 2)) == 8193


@pytest.mark.parametrize("lo, hi", [(6, 3000), (1000, 1200), (4996, 5000)])
def test_comet_matches_counts(lo, hi):
    assert [pt.count for pt in comet(lo, hi)] == [count_partitions(e) for e in range(lo, hi, 2)]


def test_comet_windowing_is_invisible():
    whole = list(comet(6, 4000))
    assert list(comet(6, 4000, window=500)) == whole
    assert list(comet(6, 106, window=2)) == whole[:50]


def test_comet_blocked_fft_matches_direct():
    # forces several convolution blocks
    lo, hi = 2**19 + 6, 2**19 + 406
    counts = comet_counts(lo, hi).tolist()
    assert counts == [count_partitions(e) for e in range(lo, hi, 2)]


@pytest.mark.parametrize("e", [5, 4, 7, 0, -2, 99])
def test_domain_errors(e):
    for fn in (minimal_partition, all_partitions, count_partitions):
        with pytest.raises(DomainError):
            fn(e)


@pytest.mark.parametrize("lo, hi", [(4, 10), (7, 11), (6, 6), (10, 6), (6, 9)])
def test_comet_bad_bounds_raise_immediately(lo, hi):
    with pytest.raises(DomainError):
        comet(lo, hi)


def test_oracle_equivalence_to_3000():
    oracle = naive_partition_map(3000)
    for e in range(6, 3001, 2):
        expected = oracle[e]
        assert naive_partitions(e) == expected
        assert pairs(all_partitions(e)) == expected
        assert count_partitions(e) == len(expected)
        m = minimal_partition(e)
        assert (m.p1, m.p2) == expected[0]


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 10**9).map(lambda n: 2 * n))
def test_minimal_partition_matches_naive(e):
    p = minimal_partition(e)
    assert p.p1 == naive_minimal_p1(e)
    assert p.p1 >= 3 and p.p1 + p.p2 == e


def test_minimal_is_min_of_all():
    for e in range(6, 3000, 2):
        assert minimal_partition(e) == all_partitions(e)[0]


def test_no_partition_contains_two():
    for e in range(6, 3000, 2):
        assert all(p.p1 >= 3 and p.p1 % 2 == 1 and p.p2 % 2 == 1 for p in all_partitions(e))


def test_contexts_give_the_same_answer():
    table = sieve_upto(200_000)
    seg = segment_sieve(100_000, 100_500, sieve_upto(400))
    for e in range(100_200, 100_500, 2):
        plain = minimal_partition(e)
        assert minimal_partition(e, table) == plain
        assert minimal_partition(e, seg) == plain
        assert all_partitions(e, table) == all_partitions(e)


def test_partition_validates():
    GoldbachPartition(10, 3, 7)
    for args in [(10, 7, 3), (10, 1, 9), (20, 9, 11), (8, 2, 6), (4, 2, 2), (9, 2, 7), (12, 5, 5)]:
        with pytest.raises(DomainError):
            GoldbachPartition(*args)


def test_large_even_uses_is_prime():
    e = 2 * (2**62 + 1)
    p = minimal_partition(e)
    assert p.p1 + p.p2 == e and p.p1 < 10_000
