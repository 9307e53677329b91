"""Exact-integer certificates for the Goldbach Circle.

The circle has diameter AB = 2n and centre C.  D lies on the circle above
AB, and E is the foot of the altitude from D, so that AE = p1 and EB = p2.
Every length that would be irrational is carried as its square.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import CertificateMismatch, DomainError
from .partitions import GoldbachPartition, all_partitions
from .primes import is_prime

MAX_RADIUS = 2**31
VERSIONS = (1, 2, 3, 4, 5)


@dataclass(frozen=True)
class GoldbachCertificate:
    n: int
    e: int
    p1: int
    p2: int
    ad_sq: int
    bd_sq: int
    de_sq: int
    ec: int

    @classmethod
    def from_values(cls, n: int, p1: int, p2: int) -> GoldbachCertificate:
        """Compute every derived field from (n, p1, p2) with no validation.

        Used to build decoys; :func:`build_certificate` is the checked path.
        """
        e = 2 * n
        return cls(
            n=n,
            e=e,
            p1=p1,
            p2=p2,
            ad_sq=p1 * (p1 + p2),
            bd_sq=p2 * (p1 + p2),
            de_sq=p1 * p2,
            ec=(p2 - p1) // 2,
        )

    def to_record(self) -> dict[str, int | bool]:
        """Flat key/value form: the fields followed by ``v1`` .. ``v5``."""
        record: dict[str, int | bool] = {
            "n": self.n,
            "e": self.e,
            "p1": self.p1,
            "p2": self.p2,
            "ad_sq": self.ad_sq,
            "bd_sq": self.bd_sq,
            "de_sq": self.de_sq,
            "ec": self.ec,
        }
        for k in VERSIONS:
            record[f"v{k}"] = check_version(self, k).holds
        return record


@dataclass(frozen=True)
class VersionCheck:
    version: int
    holds: bool
    lhs: int
    rhs: int


@dataclass(frozen=True)
class FermatLikeDecomposition:
    n: int
    g_sq: int
    h: int
    source: GoldbachPartition


def build_certificate(n: int, p: GoldbachPartition) -> GoldbachCertificate:
    n = int(n)
    if n < 3:
        raise DomainError(f"radius must be >= 3, got {n}")
    if n > MAX_RADIUS:
        raise DomainError(f"radius {n} exceeds 2**31")
    if p.e != 2 * n:
        raise CertificateMismatch(f"partition of {p.e} does not match diameter 2n = {2 * n}")
    return GoldbachCertificate.from_values(n, p.p1, p.p2)


def _sum_clause(c: GoldbachCertificate) -> bool:
    return c.p1 + c.p2 == 2 * c.n == c.e


def _odd_prime(x: int) -> bool:
    return x >= 3 and x & 1 == 1 and x < 2**64 and is_prime(x)


def check_version(c: GoldbachCertificate, k: int) -> VersionCheck:
    """Test one version's identity in exact integer arithmetic.

    Versions 1-4 compare the two sides of a right-triangle identity over
    squared lengths:

    1. ADE, right angle at E: AE^2 + DE^2 = AD^2
    2. BDE, right angle at E: BE^2 + DE^2 = BD^2
    3. DEC, right angle at E: DE^2 + EC^2 = CD^2
    4. ADB, right angle at D: AD^2 + BD^2 = AB^2

    Version 5 (the circle exists) is the conjunction of 1-4, primality of
    p1 and p2, and p1 + p2 = 2n; its ``lhs`` counts the clauses that hold
    and ``rhs`` is the number of clauses.
    """
    if k == 1:
        lhs, rhs = c.p1 * c.p1 + c.de_sq, c.ad_sq
    elif k == 2:
        lhs, rhs = c.p2 * c.p2 + c.de_sq, c.bd_sq
    elif k == 3:
        lhs, rhs = c.de_sq + c.ec * c.ec, c.n * c.n
    elif k == 4:
        lhs, rhs = c.ad_sq + c.bd_sq, c.e * c.e
    elif k == 5:
        clauses = [check_version(c, j).holds for j in (1, 2, 3, 4)]
        clauses += [_odd_prime(c.p1), _odd_prime(c.p2), _sum_clause(c)]
        lhs, rhs = sum(clauses), len(clauses)
    else:
        raise DomainError(f"version must be in 1..5, got {k}")
    return VersionCheck(version=k, holds=lhs == rhs, lhs=lhs, rhs=rhs)


def verify_certificate(c: GoldbachCertificate) -> bool:
    return all(check_version(c, k).holds for k in VERSIONS)


def fermat_like(n: int) -> list[FermatLikeDecomposition]:
    """Decompositions n^2 = g^2 + h^2 with g^2 = p1*p2 and h = (p2 - p1)/2,
    one per partition of 2n, ascending in h."""
    n = int(n)
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    out = [
        FermatLikeDecomposition(n=n, g_sq=p.p1 * p.p2, h=(p.p2 - p.p1) // 2, source=p)
        for p in all_partitions(2 * n)
    ]
    out.reverse()  # p1 ascending -> h descending
    return out


def is_square(x: int) -> bool:
    return x >= 0 and isqrt(x) ** 2 == x


def verify_batch(
    e: np.ndarray,
    p1: np.ndarray,
    p1_prime: np.ndarray,
    p2_prime: np.ndarray,
) -> np.ndarray:
    """Vectorized version-5 verdicts for many minimal partitions at once.

    ``e`` and ``p1`` are int64 arrays; ``p2 = e - p1``.  The primality masks
    come from the caller's own tables.  Identities are evaluated in int64,
    which is exact while (e)^2 < 2**63; larger inputs go through Python ints.
    """
    e = np.asarray(e, dtype=np.int64)
    if e.size and int(e.max()) >= 3_037_000_499:
        e = e.astype(object)
        p1 = np.asarray(p1).astype(object)
    else:
        p1 = np.asarray(p1, dtype=np.int64)
    p2 = e - p1
    n = e // 2
    ad_sq = p1 * e
    bd_sq = p2 * e
    de_sq = p1 * p2
    ec = (p2 - p1) // 2
    ok = p1 * p1 + de_sq == ad_sq
    ok &= p2 * p2 + de_sq == bd_sq
    ok &= de_sq + ec * ec == n * n
    ok &= ad_sq + bd_sq == e * e
    ok &= (p1 & 1 == 1) & (p2 & 1 == 1) & (p1 >= 3) & (p1 <= p2) & (p1 + p2 == 2 * n)
    return np.asarray(ok, dtype=bool) & p1_prime & p2_prime
