"""Range verification sweeps.

The range ``[lo, hi)`` is cut into chunks of ``segment_span`` even numbers.
Each chunk sieves its own window, widened downwards by the probe limit so
that ``e - p1`` is always inside it, and finds the minimal partition of
every even number in vectorized passes over the probe primes.  Chunk
reports are merged strictly in range order, which makes the result
independent of chunk size and worker count.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import isqrt
from pathlib import Path
from typing import Callable, Iterable, Iterator, NamedTuple

import numpy as np

from .errors import DomainError
from .geometry import verify_batch
from .partitions import PROBE_LIMIT, CometPoint, comet_counts, minimal_partition, probe_table
from .primes import DEFAULT_SEGMENT_SPAN, PrimeTable, is_prime, segment_sieve, sieve_upto

log = logging.getLogger(__name__)

DEFAULT_CHECKPOINT_INTERVAL = 10**7


class RecordEntry(NamedTuple):
    e: int
    min_p1: int


@dataclass(frozen=True)
class SweepConfig:
    lo: int
    hi: int
    segment_span: int = DEFAULT_SEGMENT_SPAN
    workers: int = 1
    certify: bool = True
    collect_comet: bool = False
    checkpoint_path: Path | None = None
    checkpoint_interval: int = DEFAULT_CHECKPOINT_INTERVAL
    probe_limit: int = PROBE_LIMIT

    def __post_init__(self) -> None:
        if self.lo < 6 or self.lo & 1:
            raise DomainError(f"--from must be an even number >= 6, got {self.lo}")
        if self.hi <= self.lo or self.hi & 1:
            raise DomainError(f"--to must be an even number > {self.lo}, got {self.hi}")
        if self.segment_span < 2:
            raise DomainError(f"segment span must be >= 2, got {self.segment_span}")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")
        if self.checkpoint_interval < 1:
            raise DomainError(f"checkpoint interval must be >= 1, got {self.checkpoint_interval}")
        if not 3 <= self.probe_limit <= 2**26:
            raise DomainError(f"probe limit must lie in [3, 2**26], got {self.probe_limit}")


@dataclass
class RangeReport:
    lo: int
    hi: int
    verified_count: int = 0
    failures: list[int] = field(default_factory=list)
    records: list[RecordEntry] = field(default_factory=list)
    comet: list[CometPoint] | None = None
    wall_time: float = field(default=0.0, compare=False)

    @property
    def evens(self) -> int:
        return (self.hi - self.lo) // 2

    def to_dict(self, *, wall_time: bool = True) -> dict:
        out: dict = {
            "lo": self.lo,
            "hi": self.hi,
            "verified_count": self.verified_count,
            "failures": list(self.failures),
            "records": [[r.e, r.min_p1] for r in self.records],
            "comet": None if self.comet is None else [[c.e, c.count] for c in self.comet],
        }
        if wall_time:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> RangeReport:
        comet = d.get("comet")
        return cls(
            lo=int(d["lo"]),
            hi=int(d["hi"]),
            verified_count=int(d["verified_count"]),
            failures=[int(x) for x in d["failures"]],
            records=[RecordEntry(int(e), int(p)) for e, p in d["records"]],
            comet=None if comet is None else [CometPoint(int(e), int(c)) for e, c in comet],
            wall_time=float(d.get("wall_time", 0.0)),
        )

    def canonical_json(self) -> str:
        """Serialized report without wall time; equal reports give equal bytes."""
        return json.dumps(self.to_dict(wall_time=False), separators=(",", ":"))


def empty_report(at: int) -> RangeReport:
    return RangeReport(lo=at, hi=at)


def merge_reports(a: RangeReport, b: RangeReport) -> RangeReport:
    """Report for ``[a.lo, b.hi)`` from reports on adjacent ranges."""
    if a.hi != b.lo:
        raise DomainError(f"reports are not adjacent: [{a.lo}, {a.hi}) then [{b.lo}, {b.hi})")
    best = a.records[-1].min_p1 if a.records else 0
    records = a.records + [r for r in b.records if r.min_p1 > best]
    if (a.comet is None and a.evens) or (b.comet is None and b.evens):
        comet = None
    elif a.comet is None and b.comet is None:
        comet = None
    else:
        comet = (a.comet or []) + (b.comet or [])
    return RangeReport(
        lo=a.lo,
        hi=b.hi,
        verified_count=a.verified_count + b.verified_count,
        failures=a.failures + b.failures,
        records=records,
        comet=comet,
        wall_time=a.wall_time + b.wall_time,
    )


@lru_cache(maxsize=4)
def _base_table(limit: int) -> PrimeTable:
    size = 1 << 12
    while size < limit:
        size <<= 1
    return sieve_upto(size)


def _minimal_p1(lo: int, hi: int, probe_limit: int):
    """Minimal p1 for every even in [lo, hi) (0 where none was found below
    the probe limit), plus the sieved window."""
    margin = probe_limit + 2 - (probe_limit & 1)  # even, > probe_limit
    wlo = max(0, lo - margin)
    seg = segment_sieve(wlo, hi, _base_table(isqrt(hi - 1)))
    flags = seg.flags
    m = (hi - lo) // 2
    minp = np.zeros(m, dtype=np.int64)
    pending = np.ones(m, dtype=bool)
    left = m
    sparse: np.ndarray | None = None
    half_lo = lo // 2

    for p in probe_table(probe_limit).primes[1:].tolist():
        j0 = max(0, p - half_lo)  # first index with e >= 2p
        if left == 0 or j0 >= m:
            break
        off = (lo - p - wlo - 1) >> 1  # flags index of e - p at j = 0
        if sparse is None:
            hit = flags[off + j0 : off + m] & pending[j0:]
            idx = np.flatnonzero(hit)
            if idx.size:
                idx += j0
                minp[idx] = p
                pending[idx] = False
                left -= idx.size
            if left < m >> 5:
                sparse = np.flatnonzero(pending)
        else:
            k = int(np.searchsorted(sparse, j0))
            cand = sparse[k:]
            hit = flags[cand + off]
            if hit.any():
                minp[cand[hit]] = p
                sparse = np.concatenate((sparse[:k], cand[~hit]))
                left = sparse.size
    return minp, seg


def scan_chunk(lo: int, hi: int, certify: bool, collect_comet: bool, probe_limit: int) -> RangeReport:
    """Report for one chunk ``[lo, hi)``; the unit of parallel work."""
    t0 = time.perf_counter()
    minp, seg = _minimal_p1(lo, hi, probe_limit)
    evens = np.arange(lo, hi, 2, dtype=np.int64)

    for j in np.flatnonzero(minp == 0).tolist():
        e = lo + 2 * j
        if e // 2 > probe_limit:
            log.warning("probe table exhausted at e=%d; extending search with is_prime", e)
            part = minimal_partition(e, seg)
            if part is not None:
                minp[j] = part.p1

    found = minp > 0
    if certify and found.any():
        e_f, p1 = evens[found], minp[found]
        p1_prime = probe_table(probe_limit).contains(p1)
        p2_prime = seg.contains(e_f - p1)
        # fallback partitions: p1 beyond the table, p2 possibly below the window
        for i in np.flatnonzero(p1 > probe_limit).tolist():
            p1_prime[i] = is_prime(int(p1[i]))
            p2_prime[i] = is_prime(int(e_f[i] - p1[i]))
        ok = verify_batch(e_f, p1, p1_prime, p2_prime)
        if not ok.all():
            bad = int(e_f[np.flatnonzero(~ok)[0]])
            raise RuntimeError(f"certificate verification failed at e={bad}")

    running = np.maximum.accumulate(minp)
    is_record = minp > np.concatenate(([0], running[:-1]))
    records = [RecordEntry(e, p) for e, p in zip(evens[is_record].tolist(), minp[is_record].tolist())]

    comet = None
    if collect_comet:
        counts = comet_counts(lo, hi)
        comet = [CometPoint(e, c) for e, c in zip(evens.tolist(), counts.tolist())]

    return RangeReport(
        lo=lo,
        hi=hi,
        verified_count=int(np.count_nonzero(found)),
        failures=evens[~found].tolist(),
        records=records,
        comet=comet,
        wall_time=time.perf_counter() - t0,
    )


def _scan_task(args: tuple) -> RangeReport:
    return scan_chunk(*args)


def chunk_bounds(lo: int, hi: int, span: int) -> Iterator[tuple[int, int]]:
    step = 2 * span
    for c0 in range(lo, hi, step):
        yield c0, min(c0 + step, hi)


@dataclass
class SweepProgress:
    """State needed to continue a sweep: its config, where to continue, and
    the merged report for ``[config.lo, next_e)``."""

    config: SweepConfig
    next_e: int
    report: RangeReport

    @property
    def done(self) -> bool:
        return self.next_e >= self.config.hi


def _chunk_reports(cfg: SweepConfig, start: int) -> Iterable[RangeReport]:
    tasks = [
        (c0, c1, cfg.certify, cfg.collect_comet, cfg.probe_limit)
        for c0, c1 in chunk_bounds(start, cfg.hi, cfg.segment_span)
    ]
    if cfg.workers == 1 or len(tasks) <= 1:
        for t in tasks:
            yield _scan_task(t)
        return
    with ProcessPoolExecutor(max_workers=min(cfg.workers, len(tasks))) as pool:
        yield from pool.map(_scan_task, tasks)


def verify_range(
    cfg: SweepConfig,
    *,
    progress: SweepProgress | None = None,
    on_chunk: Callable[[SweepProgress], None] | None = None,
) -> RangeReport:
    """Verify every even number in ``[cfg.lo, cfg.hi)``.

    ``progress`` resumes a previous sweep over the same range.  ``on_chunk``
    sees the running progress after each merged chunk (and after any
    checkpoint write it triggered).
    """
    from .checkpoint import checkpoint_save

    t0 = time.perf_counter()
    if progress is None:
        state = SweepProgress(cfg, cfg.lo, empty_report(cfg.lo))
    else:
        if (progress.config.lo, progress.config.hi) != (cfg.lo, cfg.hi):
            raise DomainError("progress belongs to a different range")
        state = SweepProgress(cfg, progress.next_e, progress.report)
        if cfg.collect_comet and state.report.comet is None and state.report.evens:
            # comet data is not persisted in checkpoints; rebuild the prefix
            counts = comet_counts(cfg.lo, state.next_e)
            state.report.comet = [
                CometPoint(cfg.lo + 2 * i, c) for i, c in enumerate(counts.tolist())
            ]
    if state.done:
        return state.report

    if cfg.checkpoint_path is not None:
        Path(cfg.checkpoint_path).parent.mkdir(parents=True, exist_ok=True)
        if not os.access(Path(cfg.checkpoint_path).parent, os.W_OK):
            raise OSError(f"checkpoint directory is not writable: {cfg.checkpoint_path}")

    since_save = 0
    for chunk in _chunk_reports(cfg, state.next_e):
        state.report = merge_reports(state.report, chunk)
        state.next_e = chunk.hi
        since_save += chunk.evens
        if cfg.checkpoint_path is not None and (since_save >= cfg.checkpoint_interval or state.done):
            checkpoint_save(state, cfg.checkpoint_path)
            since_save = 0
        if on_chunk is not None:
            on_chunk(state)
        log.debug("chunk [%d, %d) merged", chunk.lo, chunk.hi)

    report = replace(state.report, wall_time=time.perf_counter() - t0)
    return report


def resume(path: str | os.PathLike, **overrides) -> RangeReport:
    """Continue the sweep stored at ``path``; ``overrides`` replace config
    fields such as ``workers``."""
    from .checkpoint import checkpoint_resume

    progress = checkpoint_resume(path)
    cfg = replace(progress.config, checkpoint_path=Path(path), **overrides)
    return verify_range(cfg, progress=progress)
