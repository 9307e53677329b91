"""Primality substrate: odd-only sieves and a deterministic 64-bit test.

Flags are stored for odd integers only.  In a window ``[lo, hi)`` with
``lo`` even, flag ``i`` describes ``lo + 2*i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import DomainError, PreconditionError

SIEVE_LIMIT_MAX = 2**32
DEFAULT_SEGMENT_SPAN = 2**21  # odd candidates per window

# Trial divisors applied before Miller-Rabin.
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# (bound, witnesses): the witness set makes the strong-pseudoprime test exact
# for every n < bound.
_MR_WITNESS_TABLE = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)


def is_prime(x: int) -> bool:
    """Exact primality for ``0 <= x < 2**64`` (deterministic Miller-Rabin)."""
    x = int(x)
    if x < 0 or x >= 2**64:
        raise DomainError(f"is_prime is defined on [0, 2**64), got {x}")
    if x < 2:
        return False
    for p in _SMALL_PRIMES:
        if x % p == 0:
            return x == p
    if x < 53 * 53:
        return True

    d = x - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for bound, witnesses in _MR_WITNESS_TABLE:
        if x < bound:
            break
    for a in witnesses:
        y = pow(a, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(s - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=8)
def small_primes(limit: int) -> np.ndarray:
    """All primes <= limit via a plain byte sieve.  Intended for limit <= ~2**24."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    out = np.flatnonzero(flags).astype(np.int64)
    out.flags.writeable = False
    return out


def _sieve_odd_window(lo: int, hi: int, odd_base: np.ndarray) -> np.ndarray:
    """Odd-only primality flags for [lo, hi); ``odd_base`` must hold every odd
    prime <= isqrt(hi - 1)."""
    flags = np.ones((hi - lo) // 2, dtype=bool)
    if flags.size == 0:
        return flags
    if lo == 0:
        flags[0] = False  # 1
    for p in odd_base.tolist():
        pp = p * p
        if pp >= hi:
            break
        start = max(pp, -(-lo // p) * p)
        if not start & 1:
            start += p
        if start >= hi:
            continue
        flags[(start - lo - 1) >> 1 :: p] = False
    return flags


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Every prime <= ``limit``, with a bit-packed odd-only membership index."""

    limit: int
    primes: np.ndarray
    bits: np.ndarray  # packbits(bitorder="little") of odd flags; bit i <-> 2*i + 1

    def __len__(self) -> int:
        return int(self.primes.size)

    def __contains__(self, x: int) -> bool:
        x = int(x)
        if x == 2:
            return self.limit >= 2
        if x < 3 or not x & 1 or x > self.limit:
            return False
        i = x >> 1
        return bool((self.bits[i >> 3] >> (i & 7)) & 1)

    def contains(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized membership; entries outside [0, limit] map to False."""
        xs = np.asarray(xs, dtype=np.int64)
        ok = (xs >= 3) & (xs <= self.limit) & ((xs & 1) == 1)
        i = np.where(ok, xs, 1) >> 1
        hit = ((self.bits[i >> 3] >> (i & 7).astype(np.uint8)) & 1).astype(bool)
        return (hit & ok) | ((xs == 2) & (self.limit >= 2))

    def odd_flags(self) -> np.ndarray:
        """Unpacked odd-only flags over [0, limit + 1)."""
        return np.unpackbits(self.bits, count=(self.limit + 1) // 2, bitorder="little").astype(bool)

    def odd_primes_upto(self, bound: int) -> np.ndarray:
        k = int(np.searchsorted(self.primes, bound, side="right"))
        return self.primes[1:k] if k else self.primes[:0]


def sieve_upto(limit: int, *, segment_span: int = DEFAULT_SEGMENT_SPAN) -> PrimeTable:
    """Build the :class:`PrimeTable` of all primes <= ``limit``."""
    limit = int(limit)
    if not 2 <= limit <= SIEVE_LIMIT_MAX:
        raise DomainError(f"sieve limit must lie in [2, 2**32], got {limit}")
    # whole bytes per window keeps the packed chunks concatenable
    span = max(8, segment_span - segment_span % 8)
    odd_base = small_primes(isqrt(limit))[1:]
    total_odd = (limit + 1) // 2
    primes = [np.array([2], dtype=np.int64)]
    packed = []
    for i0 in range(0, total_odd, span):
        i1 = min(i0 + span, total_odd)
        flags = _sieve_odd_window(2 * i0, 2 * i1, odd_base)
        primes.append(2 * (np.flatnonzero(flags).astype(np.int64) + i0) + 1)
        packed.append(np.packbits(flags, bitorder="little"))
    table_primes = np.concatenate(primes)
    bits = np.concatenate(packed) if packed else np.zeros(0, dtype=np.uint8)
    table_primes.flags.writeable = False
    bits.flags.writeable = False
    return PrimeTable(limit=limit, primes=table_primes, bits=bits)


@dataclass(frozen=True, eq=False)
class SegmentBitmap:
    """Odd-prime flags for one window ``[lo, hi)``; even integers (2 included)
    are never flagged."""

    lo: int
    hi: int
    flags: np.ndarray

    def __contains__(self, x: int) -> bool:
        x = int(x)
        if not self.lo <= x < self.hi or not x & 1:
            return False
        return bool(self.flags[(x - self.lo) >> 1])

    def contains(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ok = (xs >= self.lo) & (xs < self.hi) & ((xs & 1) == 1)
        idx = np.where(ok, (xs - self.lo) >> 1, 0)
        return ok & self.flags[idx] if self.flags.size else ok

    def odd_primes(self) -> np.ndarray:
        return self.lo + 2 * np.flatnonzero(self.flags).astype(np.int64) + 1

    def count(self) -> int:
        return int(np.count_nonzero(self.flags))


def segment_sieve(lo: int, hi: int, base: PrimeTable) -> SegmentBitmap:
    """Sieve the odd integers of ``[lo, hi)`` using the primes of ``base``."""
    lo, hi = int(lo), int(hi)
    if lo < 0 or lo & 1:
        raise PreconditionError(f"window start must be a non-negative even integer, got {lo}")
    if lo >= hi:
        raise PreconditionError(f"empty window [{lo}, {hi})")
    need = isqrt(hi - 1)
    if base.limit < need:
        raise PreconditionError(f"base table limit {base.limit} < isqrt(hi - 1) = {need}")
    flags = _sieve_odd_window(lo, hi, base.odd_primes_upto(need))
    return SegmentBitmap(lo=lo, hi=hi, flags=flags)
