"""Goldbach range verification with exact geometric certificates."""

from .engine import RangeReport, RecordEntry, SweepConfig, merge_reports, resume, verify_range
from .errors import CertificateMismatch, CheckpointError, DomainError, PreconditionError
from .geometry import (
    FermatLikeDecomposition,
    GoldbachCertificate,
    VersionCheck,
    build_certificate,
    check_version,
    fermat_like,
    verify_certificate,
)
from .partitions import (
    CometPoint,
    GoldbachPartition,
    all_partitions,
    comet,
    count_partitions,
    minimal_partition,
)
from .primes import PrimeTable, SegmentBitmap, is_prime, segment_sieve, sieve_upto
from .render import SceneCoordinates, StyleOptions, emit_svg, layout

__version__ = "0.1.0"

__all__ = [
    "CertificateMismatch",
    "CheckpointError",
    "CometPoint",
    "DomainError",
    "FermatLikeDecomposition",
    "GoldbachCertificate",
    "GoldbachPartition",
    "PreconditionError",
    "PrimeTable",
    "RangeReport",
    "RecordEntry",
    "SceneCoordinates",
    "SegmentBitmap",
    "StyleOptions",
    "SweepConfig",
    "VersionCheck",
    "all_partitions",
    "build_certificate",
    "check_version",
    "comet",
    "count_partitions",
    "emit_svg",
    "fermat_like",
    "is_prime",
    "layout",
    "merge_reports",
    "minimal_partition",
    "resume",
    "segment_sieve",
    "sieve_upto",
    "verify_certificate",
    "verify_range",
]
