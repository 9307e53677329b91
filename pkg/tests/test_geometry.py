from __future__ import annotations

import dataclasses

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from goldbach_circle.errors import CertificateMismatch, DomainError
from goldbach_circle.geometry import (
    GoldbachCertificate,
    build_certificate,
    check_version,
    fermat_like,
    is_square,
    verify_batch,
    verify_certificate,
)
from goldbach_circle.partitions import GoldbachPartition, all_partitions, count_partitions, minimal_partition
from goldbach_circle.primes import is_prime


def cert(n, p1, p2):
    return build_certificate(n, GoldbachPartition(2 * n, p1, p2))


@pytest.mark.parametrize(
    "n, p1, p2, ad_sq, bd_sq, de_sq, ec",
    [
        (3, 3, 3, 18, 18, 9, 0),
        (5, 3, 7, 30, 70, 21, 2),
        (8, 3, 13, 48, 208, 39, 5),
    ],
)
def test_build_examples(n, p1, p2, ad_sq, bd_sq, de_sq, ec):
    c = cert(n, p1, p2)
    assert (c.ad_sq, c.bd_sq, c.de_sq, c.ec) == (ad_sq, bd_sq, de_sq, ec)
    assert c.e == 2 * n


def test_version_examples():
    c = cert(5, 3, 7)
    v3 = check_version(c, 3)
    assert (v3.lhs, v3.rhs, v3.holds) == (25, 25, True)
    v4 = check_version(c, 4)
    assert (v4.lhs, v4.rhs, v4.holds) == (100, 100, True)
    d = check_version(cert(3, 3, 3), 3)
    assert (d.lhs, d.rhs, d.holds) == (9, 9, True)


def test_version_out_of_range():
    for k in (0, 6, -1):
        with pytest.raises(DomainError):
            check_version(cert(5, 3, 7), k)


def test_build_errors():
    with pytest.raises(CertificateMismatch):
        build_certificate(6, GoldbachPartition(10, 3, 7))
    with pytest.raises(DomainError):
        build_certificate(2**31 + 1, GoldbachPartition(6, 3, 3))
    with pytest.raises(DomainError):
        build_certificate(2, GoldbachPartition(6, 3, 3))


def test_radius_bound_is_inclusive():
    n = 2**31
    c = build_certificate(n, minimal_partition(2 * n))
    assert verify_certificate(c)


def test_tampered_de_sq():
    c = dataclasses.replace(cert(5, 3, 7), de_sq=22)
    held = {k: check_version(c, k).holds for k in range(1, 6)}
    assert held == {1: False, 2: False, 3: False, 4: True, 5: False}
    assert not verify_certificate(c)


def test_composite_decoy_fails_only_on_primality():
    c = GoldbachCertificate.from_values(10, 9, 11)
    assert all(check_version(c, k).holds for k in (1, 2, 3, 4))
    v5 = check_version(c, 5)
    assert not v5.holds and v5.lhs == v5.rhs - 1
    assert not verify_certificate(c)


def test_version_check_invariant():
    c = dataclasses.replace(cert(8, 3, 13), ec=4)
    for k in range(1, 6):
        v = check_version(c, k)
        assert v.holds == (v.lhs == v.rhs)


odd = st.integers(1, 2**31).map(lambda k: 2 * k + 1)


@settings(max_examples=500)
@given(odd, odd)
def test_identities_1_to_4_are_polynomial(a, b):
    p1, p2 = min(a, b), max(a, b)
    c = GoldbachCertificate.from_values((p1 + p2) // 2, p1, p2)
    assert all(check_version(c, k).holds for k in (1, 2, 3, 4))
    assert check_version(c, 5).holds == (is_prime(p1) and is_prime(p2))


@settings(max_examples=300)
@given(st.integers(3, 10**6))
def test_separation_sum_condition(n):
    part = minimal_partition(2 * n)
    c = cert(n, part.p1, part.p2)
    assert verify_certificate(c)
    assert not check_version(dataclasses.replace(c, n=n + 1), 5).holds
    assert not check_version(dataclasses.replace(c, e=c.e + 2), 5).holds


@settings(max_examples=300)
@given(st.integers(5, 10**6), st.integers(1, 10**5))
def test_separation_composite_decoys(n, k):
    p1 = 2 * (k % (n - 1)) + 3
    p2 = 2 * n - p1
    assume(p1 <= p2 and not (is_prime(p1) and is_prime(p2)))
    c = GoldbachCertificate.from_values(n, p1, p2)
    assert all(check_version(c, j).holds for j in (1, 2, 3, 4))
    assert not check_version(c, 5).holds


def test_record_form():
    rec = cert(5, 3, 7).to_record()
    assert list(rec) == ["n", "e", "p1", "p2", "ad_sq", "bd_sq", "de_sq", "ec", "v1", "v2", "v3", "v4", "v5"]
    assert rec["de_sq"] == 21 and rec["v5"] is True


def test_fermat_examples():
    assert [(d.g_sq, d.h) for d in fermat_like(3)] == [(9, 0)]
    assert [(d.g_sq, d.h) for d in fermat_like(5)] == [(25, 0), (21, 2)]
    # partitions of 22: (3,19) (5,17) (11,11)
    assert [(d.g_sq, d.h) for d in fermat_like(11)] == [(121, 0), (85, 6), (57, 8)]


def test_fermat_domain():
    with pytest.raises(DomainError):
        fermat_like(2)


def test_fermat_properties_to_1000():
    for n in range(3, 1001):
        decomps = fermat_like(n)
        assert len(decomps) == count_partitions(2 * n)
        assert len({(d.g_sq, d.h) for d in decomps}) == len(decomps)
        assert [d.h for d in decomps] == sorted(d.h for d in decomps)
        for d in decomps:
            assert n * n == d.g_sq + d.h * d.h
            assert 0 <= d.h <= n - 3
            assert is_square(d.g_sq) == (d.source.p1 == d.source.p2)


def test_perfect_square_both_directions_to_1e4():
    for e in range(6, 10_001, 2):
        for p in all_partitions(e):
            assert is_square(p.p1 * p.p2) == (p.p1 == p.p2)


def test_verify_batch_agrees_with_scalar():
    rng = np.random.default_rng(7)
    e = 2 * rng.integers(3, 10**8, size=300)
    p1 = np.array([minimal_partition(int(x)).p1 for x in e])
    ones = np.ones(e.size, dtype=bool)
    assert verify_batch(e, p1, ones, ones).all()
    bad = p1.copy()
    bad[::3] += 2  # p2 follows from e - p1, so only primality can break
    flags = np.array([is_prime(int(x)) and is_prime(int(y)) for x, y in zip(bad, e - bad)])
    got = verify_batch(e, bad, flags, ones)
    want = [verify_certificate(GoldbachCertificate.from_values(int(x) // 2, int(a), int(x - a))) for x, a in zip(e, bad)]
    assert got.tolist() == want


def test_verify_batch_wide_inputs_use_python_ints():
    n = 2**31
    p = minimal_partition(2 * n)
    ones = np.ones(1, dtype=bool)
    assert verify_batch(np.array([2 * n]), np.array([p.p1]), ones, ones).tolist() == [True]
    assert not verify_batch(np.array([2 * n]), np.array([p.p1]), ones, ~ones).any()
