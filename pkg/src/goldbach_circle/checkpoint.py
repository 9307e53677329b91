"""Line-oriented ``key=value`` checkpoints for sweeps.

Example::

    schema=goldbach-sweep/1
    lo=6
    hi=10000
    next_e=5002
    verified=2498
    failures=
    records=6:3,12:5,30:7,98:19,...
    segment_span=2097152
    certify=1
    collect_comet=0
    checkpoint_interval=1000
    checksum=sha256:<hex digest of every line above, newline-terminated>
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

from .engine import RangeReport, RecordEntry, SweepConfig, SweepProgress
from .errors import CheckpointError

SCHEMA = "goldbach-sweep/1"
_KEYS = (
    "schema",
    "lo",
    "hi",
    "next_e",
    "verified",
    "failures",
    "records",
    "segment_span",
    "certify",
    "collect_comet",
    "checkpoint_interval",
)


def _digest(body: str) -> str:
    return "sha256:" + hashlib.sha256(body.encode("utf-8")).hexdigest()


def dumps(progress: SweepProgress) -> str:
    cfg, rep = progress.config, progress.report
    values = {
        "schema": SCHEMA,
        "lo": cfg.lo,
        "hi": cfg.hi,
        "next_e": progress.next_e,
        "verified": rep.verified_count,
        "failures": ",".join(str(e) for e in rep.failures),
        "records": ",".join(f"{r.e}:{r.min_p1}" for r in rep.records),
        "segment_span": cfg.segment_span,
        "certify": int(cfg.certify),
        "collect_comet": int(cfg.collect_comet),
        "checkpoint_interval": cfg.checkpoint_interval,
    }
    body = "".join(f"{k}={values[k]}\n" for k in _KEYS)
    return body + f"checksum={_digest(body)}\n"


def checkpoint_save(progress: SweepProgress, path: str | os.PathLike) -> None:
    """Write atomically: a crash mid-write leaves the previous checkpoint."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(dumps(progress), encoding="utf-8")
    os.replace(tmp, path)


def _int(fields: dict[str, str], key: str) -> int:
    try:
        return int(fields[key])
    except ValueError:
        raise CheckpointError(key, f"not an integer: {fields[key]!r}") from None


def _int_list(fields: dict[str, str], key: str) -> list[int]:
    raw = fields[key]
    try:
        return [int(x) for x in raw.split(",")] if raw else []
    except ValueError:
        raise CheckpointError(key, f"malformed integer list: {raw!r}") from None


def _flag(fields: dict[str, str], key: str) -> bool:
    if fields[key] not in ("0", "1"):
        raise CheckpointError(key, f"expected 0 or 1, got {fields[key]!r}")
    return fields[key] == "1"


def loads(text: str, path: Path | None = None) -> SweepProgress:
    lines = text.splitlines(keepends=True)
    fields: dict[str, str] = {}
    for lineno, line in enumerate(lines, 1):
        key, sep, value = line.rstrip("\n").partition("=")
        if not sep:
            raise CheckpointError(key or f"line {lineno}", "expected key=value")
        if key in fields:
            raise CheckpointError(key, "duplicate key")
        if key not in _KEYS and key != "checksum":
            raise CheckpointError(key, "unknown key")
        fields[key] = value
    if fields.get("schema", SCHEMA) != SCHEMA:
        raise CheckpointError("schema", f"unsupported version {fields['schema']!r}, expected {SCHEMA!r}")
    for key in (*_KEYS, "checksum"):
        if key not in fields:
            raise CheckpointError(key, "missing")
    if not lines[-1].startswith("checksum="):
        raise CheckpointError("checksum", "must be the last line")

    lo, hi, next_e = _int(fields, "lo"), _int(fields, "hi"), _int(fields, "next_e")
    verified = _int(fields, "verified")
    failures = _int_list(fields, "failures")
    records = []
    if fields["records"]:
        for item in fields["records"].split(","):
            e, sep, p = item.partition(":")
            try:
                records.append(RecordEntry(int(e), int(p)))
            except ValueError:
                raise CheckpointError("records", f"malformed entry {item!r}") from None
    if lo < 6 or lo & 1:
        raise CheckpointError("lo", f"{lo} is not an even number >= 6")
    if hi <= lo or hi & 1:
        raise CheckpointError("hi", f"{hi} is not an even number > lo")
    for key in ("segment_span", "checkpoint_interval"):
        if _int(fields, key) < (2 if key == "segment_span" else 1):
            raise CheckpointError(key, f"out of range: {fields[key]}")
    cfg = SweepConfig(
        lo=lo,
        hi=hi,
        segment_span=_int(fields, "segment_span"),
        certify=_flag(fields, "certify"),
        collect_comet=_flag(fields, "collect_comet"),
        checkpoint_interval=_int(fields, "checkpoint_interval"),
        checkpoint_path=path,
    )

    if next_e & 1 or not lo <= next_e <= hi:
        raise CheckpointError("next_e", f"{next_e} is not an even number in [{lo}, {hi}]")
    if verified + len(failures) != (next_e - lo) // 2:
        raise CheckpointError("verified", "verified + failures does not cover [lo, next_e)")
    if any(b.e <= a.e or b.min_p1 <= a.min_p1 for a, b in zip(records, records[1:])):
        raise CheckpointError("records", "entries must strictly ascend in e and min_p1")

    body = "".join(lines[:-1])
    if fields["checksum"] != _digest(body):
        raise CheckpointError("checksum", "digest mismatch; file is corrupt")

    report = RangeReport(lo=lo, hi=next_e, verified_count=verified, failures=failures, records=records)
    return SweepProgress(config=cfg, next_e=next_e, report=report)


def checkpoint_resume(path: str | os.PathLike) -> SweepProgress:
    path = Path(path)
    return loads(path.read_text(encoding="utf-8"), path)
