"""Goldbach partitions of even numbers into two odd primes."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

import numpy as np

from .errors import DomainError
from .primes import PrimeTable, SegmentBitmap, is_prime, sieve_upto

PROBE_LIMIT = 10**5
COMET_WINDOW = 2**22  # integers per comet window
_MIN_FFT_BLOCK = 2**18

PrimeContext = Union[PrimeTable, SegmentBitmap]


@lru_cache(maxsize=4)
def probe_table(limit: int = PROBE_LIMIT) -> PrimeTable:
    """Shared small-prime table used to probe candidate values of p1."""
    return sieve_upto(limit)


@lru_cache(maxsize=4)
def _probe_list(limit: int = PROBE_LIMIT) -> list[int]:
    return probe_table(limit).primes[1:].tolist()


_cover_lock = threading.Lock()
_cover: PrimeTable | None = None


def covering_table(limit: int) -> PrimeTable:
    """A cached :class:`PrimeTable` with ``limit`` at least the one requested.

    Grows by doubling so repeated queries over rising ``e`` reuse one table.
    """
    global _cover
    with _cover_lock:
        if _cover is None or _cover.limit < limit:
            size = 1 << 16
            while size < limit:
                size <<= 1
            _cover = sieve_upto(min(size, 2**32))
            if _cover.limit < limit:
                raise DomainError(f"no prime table can cover {limit}")
        return _cover


def _prime(x: int) -> bool:
    return x in probe_table() if x <= PROBE_LIMIT else is_prime(x)


def _check_even(e: int) -> int:
    e = int(e)
    if e < 6 or e & 1:
        raise DomainError(f"expected an even number >= 6, got {e}")
    return e


@dataclass(frozen=True, order=True)
class GoldbachPartition:
    e: int
    p1: int
    p2: int

    def __post_init__(self) -> None:
        e, p1, p2 = self.e, self.p1, self.p2
        if e < 6 or e & 1:
            raise DomainError(f"partition of {e}: expected an even number >= 6")
        if p1 + p2 != e or not 3 <= p1 <= p2:
            raise DomainError(f"({p1}, {p2}) is not an ordered odd split of {e}")
        if not (p1 & 1 and p2 & 1 and _prime(p1) and _prime(p2)):
            raise DomainError(f"({p1}, {p2}) is not a pair of odd primes")

    @property
    def n(self) -> int:
        return self.e // 2


@dataclass(frozen=True)
class CometPoint:
    e: int
    count: int


def _membership(primes: PrimeContext | None, q: int) -> bool:
    if isinstance(primes, PrimeTable) and q <= primes.limit:
        return q in primes
    if isinstance(primes, SegmentBitmap) and primes.lo <= q < primes.hi:
        return q in primes
    return is_prime(q)


def minimal_partition(e: int, primes: PrimeContext | None = None) -> GoldbachPartition | None:
    """Partition of ``e`` with the smallest p1, or ``None`` if none exists.

    ``primes`` optionally answers primality of ``e - p1``; values it does not
    cover fall back to :func:`is_prime`.
    """
    e = _check_even(e)
    half = e // 2
    for p in _probe_list():
        if p > half:
            return None
        if _membership(primes, e - p):
            return GoldbachPartition(e, p, e - p)
    p = PROBE_LIMIT + 1
    while p <= half:
        if is_prime(p) and _membership(primes, e - p):
            return GoldbachPartition(e, p, e - p)
        p += 2
    return None


def _partition_mask(e: int, primes: PrimeTable | None) -> tuple[np.ndarray, np.ndarray]:
    table = primes if primes is not None and primes.limit >= e else covering_table(e)
    p1 = table.odd_primes_upto(e // 2)
    return p1, table.contains(e - p1)


def all_partitions(e: int, primes: PrimeTable | None = None) -> list[GoldbachPartition]:
    """Every partition of ``e`` with p1 <= p2, ascending in p1."""
    e = _check_even(e)
    p1, mask = _partition_mask(e, primes)
    return [GoldbachPartition(e, p, e - p) for p in p1[mask].tolist()]


def count_partitions(e: int, primes: PrimeTable | None = None) -> int:
    e = _check_even(e)
    _, mask = _partition_mask(e, primes)
    return int(np.count_nonzero(mask))


def _fft_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    size = a.size + b.size - 1
    nfft = 1 << (size - 1).bit_length()
    out = np.fft.irfft(np.fft.rfft(a, nfft) * np.fft.rfft(b, nfft), nfft)[:size]
    return out


def comet_counts(lo: int, hi: int, primes: PrimeTable | None = None) -> np.ndarray:
    """Partition counts for the even numbers of ``[lo, hi)`` as an int64 array.

    Ordered pairs of odd primes summing to each ``e`` come from a blocked
    FFT convolution of the odd-prime indicator with itself; each float result
    must sit within 0.25 of an integer or the computation is rejected.
    """
    lo, hi = int(lo), int(hi)
    if lo & 1 or hi & 1 or lo < 6 or lo >= hi:
        raise DomainError(f"comet bounds must be even with 6 <= lo < hi, got [{lo}, {hi})")
    table = primes if primes is not None and primes.limit >= hi else covering_table(hi)
    flags = table.odd_flags()
    ind = np.zeros(hi, dtype=np.float64)
    ind[1::2] = flags[: hi // 2]

    width = hi - lo
    block = max(width, _MIN_FFT_BLOCK)
    ordered = np.zeros(width, dtype=np.float64)
    for a0 in range(0, hi, block):
        a1 = min(a0 + block, hi)
        b0 = max(0, lo - a1 + 1)
        b1 = hi - a0
        if b0 >= b1 or not ind[a0:a1].any():
            continue
        conv = _fft_convolve(ind[a0:a1], ind[b0:b1])
        # conv[k] collects sums a0 + b0 + k
        k0 = lo - a0 - b0
        k1 = min(hi - a0 - b0, conv.size)
        start = max(k0, 0)
        if start < k1:
            ordered[start - k0 : k1 - k0] += conv[start:k1]

    ordered = ordered[::2]
    rounded = np.rint(ordered)
    err = float(np.max(np.abs(ordered - rounded))) if ordered.size else 0.0
    if err >= 0.25:
        raise ArithmeticError(f"FFT rounding residue {err} too large for exact counts")
    halves = np.arange(lo // 2, hi // 2, dtype=np.int64)
    mid = table.contains(halves) & ((halves & 1) == 1)
    return (rounded.astype(np.int64) + mid) // 2


def comet(lo: int, hi: int, *, window: int = COMET_WINDOW) -> Iterator[CometPoint]:
    """Stream one :class:`CometPoint` per even ``e`` in ``[lo, hi)``, ascending."""
    lo, hi = int(lo), int(hi)
    if lo & 1 or hi & 1 or lo < 6 or lo >= hi:
        raise DomainError(f"comet bounds must be even with 6 <= lo < hi, got [{lo}, {hi})")
    if window < 2 or window & 1:
        raise DomainError(f"comet window must be a positive even integer, got {window}")

    def points() -> Iterator[CometPoint]:
        for w0 in range(lo, hi, window):
            counts = comet_counts(w0, min(w0 + window, hi))
            for i, c in enumerate(counts.tolist()):
                yield CometPoint(w0 + 2 * i, c)

    return points()
