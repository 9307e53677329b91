"""Command-line interface.

Exit codes: 0 success, 1 a Goldbach failure was found (some even number had
no partition), 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import os
import sys
from pathlib import Path
from typing import IO, Iterator, Sequence

from . import __version__
from .engine import RangeReport, SweepConfig, resume, verify_range
from .errors import CheckpointError, DomainError
from .geometry import VERSIONS, GoldbachCertificate, build_certificate, check_version, fermat_like
from .partitions import GoldbachPartition, all_partitions, comet, minimal_partition
from .primes import DEFAULT_SEGMENT_SPAN
from .render import StyleOptions, emit_svg, layout

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2
_INT_MAX = 2**63


class _Failure(Exception):
    """A conjecture failure was reported; maps to exit code 1."""


def _nonneg_int(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value <= _INT_MAX:
        raise argparse.ArgumentTypeError(f"must lie in [0, 2**63], got {value}")
    return value


def _positive_int(text: str) -> int:
    value = _nonneg_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return text == "on"


def _version_arg(text: str) -> tuple[int, ...]:
    if text == "all":
        return VERSIONS
    try:
        k = int(text)
    except ValueError:
        k = 0
    if k not in VERSIONS:
        raise argparse.ArgumentTypeError("expected 1..5 or 'all'")
    return (k,)


def format_certificate(c: GoldbachCertificate, fmt: str = "text", versions: Sequence[int] = VERSIONS) -> str:
    """Certificate fields then version verdicts, in a fixed order.

    ``text`` gives one ``key=value`` line per field, one line per version and
    a closing summary; ``jsonl`` gives a single JSON object line.
    """
    record = c.to_record()
    fields = {k: v for k, v in record.items() if not k.startswith("v")}
    checks = [check_version(c, k) for k in versions]
    if fmt == "jsonl":
        out: dict = dict(fields)
        for chk in checks:
            out[f"v{chk.version}"] = chk.holds
        if len(checks) == 1:
            out["lhs"], out["rhs"] = checks[0].lhs, checks[0].rhs
        return _jsonl(out)
    if fmt != "text":
        raise DomainError(f"certificate output supports text or jsonl, not {fmt}")
    lines = [f"{k}={v}" for k, v in fields.items()]
    for chk in checks:
        verdict = "PASS" if chk.holds else "FAIL"
        lines.append(f"V{chk.version}={verdict} lhs={chk.lhs} rhs={chk.rhs}")
    label = "V1..V5" if len(checks) == len(VERSIONS) else ",".join(f"V{k}" for k in versions)
    lines.append(f"{label} {'PASS' if all(c.holds for c in checks) else 'FAIL'}")
    return "\n".join(lines)


def _jsonl(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"))


@contextlib.contextmanager
def _output(path: str | None) -> Iterator[IO[str]]:
    if path is None or path == "-":
        with contextlib.suppress(AttributeError, ValueError):
            sys.stdout.reconfigure(line_buffering=True)
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", buffering=1) as fh:
        yield fh


def _summary(report: RangeReport, fmt: str) -> str:
    if fmt == "jsonl":
        return _jsonl(report.to_dict())
    last = report.records[-1] if report.records else None
    parts = [
        f"range=[{report.lo},{report.hi})",
        f"verified_count={report.verified_count}",
        f"failures={len(report.failures)}",
        f"records={len(report.records)}",
        f"last_record={f'{last.e}:{last.min_p1}' if last else '-'}",
        f"wall_time={report.wall_time:.3f}s",
    ]
    if fmt == "csv":
        return ",".join(p.split("=", 1)[0] for p in parts) + "\n" + ",".join(p.split("=", 1)[1] for p in parts)
    return " ".join(parts)


def _emit_report(report: RangeReport, args: argparse.Namespace) -> int:
    with _output(args.out) as out:
        print(_summary(report, args.format), file=out)
        if report.failures and args.format == "text":
            print("FAILURES " + " ".join(map(str, report.failures)), file=out)
    return EXIT_FAILURE if report.failures else EXIT_OK


def _sweep_config(args: argparse.Namespace, **extra) -> SweepConfig:
    return SweepConfig(
        lo=getattr(args, "from"),
        hi=args.to,
        segment_span=args.segment_span,
        workers=args.workers,
        certify=args.certify,
        checkpoint_path=Path(args.checkpoint) if args.checkpoint else None,
        checkpoint_interval=args.checkpoint_interval,
        **extra,
    )


def cmd_verify(args: argparse.Namespace) -> int:
    report = verify_range(_sweep_config(args))
    return _emit_report(report, args)


def cmd_records(args: argparse.Namespace) -> int:
    report = verify_range(_sweep_config(args))
    with _output(args.out) as out:
        for r in report.records:
            if args.format == "jsonl":
                print(_jsonl({"e": r.e, "min_p1": r.min_p1}), file=out)
            elif args.format == "csv":
                print(f"{r.e},{r.min_p1}", file=out)
            else:
                print(f"{r.e} {r.min_p1}", file=out)
    for e in report.failures:
        print(f"no Goldbach partition for {e}", file=sys.stderr)
    return EXIT_FAILURE if report.failures else EXIT_OK


def cmd_resume(args: argparse.Namespace) -> int:
    overrides = {}
    if args.workers is not None:
        overrides["workers"] = args.workers
    report = resume(args.path, **overrides)
    return _emit_report(report, args)


def _print_partition(p: GoldbachPartition, fmt: str, out: IO[str]) -> None:
    if fmt == "jsonl":
        print(_jsonl({"e": p.e, "p1": p.p1, "p2": p.p2}), file=out)
    elif fmt == "csv":
        print(f"{p.p1},{p.p2}", file=out)
    else:
        print(f"{p.p1} {p.p2}", file=out)


def cmd_partition(args: argparse.Namespace) -> int:
    if args.all:
        parts = all_partitions(args.e)
    else:
        found = minimal_partition(args.e)
        parts = [found] if found is not None else []
    if not parts:
        raise _Failure(f"no Goldbach partition for {args.e}")
    with _output(args.out) as out:
        for p in parts:
            _print_partition(p, args.format, out)
    return EXIT_OK


def _certificate_for(n: int, p1: int | None) -> GoldbachCertificate:
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    if p1 is None:
        part = minimal_partition(2 * n)
        if part is None:
            raise _Failure(f"no Goldbach partition for {2 * n}")
    else:
        p2 = 2 * n - p1
        part = GoldbachPartition(2 * n, min(p1, p2), max(p1, p2))
    return build_certificate(n, part)


def cmd_certificate(args: argparse.Namespace) -> int:
    cert = _certificate_for(args.n, args.p1)
    fmt = "text" if args.format == "text" else "jsonl"
    with _output(args.out) as out:
        print(format_certificate(cert, fmt, args.version), file=out)
    return EXIT_OK


def cmd_fermat(args: argparse.Namespace) -> int:
    decomps = fermat_like(args.n)
    if not decomps:
        raise _Failure(f"no Goldbach partition for {2 * args.n}")
    with _output(args.out) as out:
        for d in decomps:
            g = f"{d.g_sq ** 0.5:.12g}" if args.float else None
            if args.format == "jsonl":
                rec = {"n": d.n, "g_sq": d.g_sq, "h": d.h}
                if g is not None:
                    rec["g"] = float(g)
                print(_jsonl(rec), file=out)
            else:
                sep = "," if args.format == "csv" else " "
                cols = [d.n, d.g_sq, d.h] + ([g] if g is not None else [])
                print(sep.join(map(str, cols)), file=out)
    return EXIT_OK


def cmd_comet(args: argparse.Namespace) -> int:
    points = comet(getattr(args, "from"), args.to)
    failed = False
    with _output(args.out) as out:
        for pt in points:
            if args.format == "jsonl":
                print(_jsonl({"e": pt.e, "count": pt.count}), file=out)
            else:
                print(f"{pt.e},{pt.count}", file=out)
            if pt.count == 0:
                print(f"no Goldbach partition for {pt.e}", file=sys.stderr)
                failed = True
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    cert = _certificate_for(args.n, args.p1)
    svg = emit_svg(layout(cert), StyleOptions(canvas=args.canvas))
    if args.out is None or args.out == "-":
        sys.stdout.write(svg)
    else:
        Path(args.out).write_text(svg, encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goldbach-circle",
        description="Verify Goldbach's conjecture over ranges and certify each instance geometrically.",
    )
    parser.add_argument("-V", "--program-version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def out_flags(p: argparse.ArgumentParser, formats: Sequence[str] = ("text", "jsonl", "csv")) -> None:
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")

    def sweep_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--from", type=_nonneg_int, required=True, metavar="E", help="first even number")
        p.add_argument("--to", type=_nonneg_int, required=True, metavar="E", help="end, exclusive")
        p.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1)
        p.add_argument("--segment-span", type=_positive_int, default=DEFAULT_SEGMENT_SPAN,
                       help="even numbers per work chunk")
        p.add_argument("--certify", type=_on_off, default=True, metavar="{on,off}")
        p.add_argument("--checkpoint", metavar="PATH")
        p.add_argument("--checkpoint-interval", type=_positive_int, default=10**7, metavar="EVENS")

    p = sub.add_parser("verify", help="verify every even number in a range")
    sweep_flags(p)
    out_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("records", help="list record minimal p1 values over a range")
    sweep_flags(p)
    out_flags(p)
    p.set_defaults(func=cmd_records)

    p = sub.add_parser("resume", help="continue a checkpointed sweep")
    p.add_argument("path", metavar="CHECKPOINT")
    p.add_argument("--workers", type=_positive_int)
    out_flags(p)
    p.set_defaults(func=cmd_resume)

    p = sub.add_parser("partition", help="Goldbach partitions of one even number")
    p.add_argument("e", type=_nonneg_int)
    p.add_argument("--all", action="store_true", help="list every partition, not just the minimal one")
    out_flags(p)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("certificate", help="exact Goldbach Circle certificate for radius n")
    p.add_argument("n", type=_nonneg_int)
    p.add_argument("--p1", type=_nonneg_int, help="use this partition instead of the minimal one")
    p.add_argument("--version", type=_version_arg, default=VERSIONS, metavar="{1..5,all}")
    out_flags(p, ("text", "jsonl"))
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("fermat", help="decompositions n^2 = g^2 + h^2, printed as 'n g_sq h'")
    p.add_argument("n", type=_nonneg_int)
    p.add_argument("--float", action="store_true", help="append g to 12 significant digits")
    out_flags(p)
    p.set_defaults(func=cmd_fermat)

    p = sub.add_parser("comet", help="partition counts 'e,count' for every even number in a range")
    p.add_argument("--from", type=_nonneg_int, required=True, metavar="E")
    p.add_argument("--to", type=_nonneg_int, required=True, metavar="E")
    out_flags(p, ("csv", "jsonl"))
    p.set_defaults(func=cmd_comet)

    p = sub.add_parser("render", help="SVG drawing of the Goldbach Circle for radius n")
    p.add_argument("n", type=_nonneg_int)
    p.add_argument("--p1", type=_nonneg_int)
    p.add_argument("--canvas", type=_positive_int, default=800, metavar="PX")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_render)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"goldbach-circle: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (DomainError, CheckpointError) as exc:
        print(f"goldbach-circle {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"goldbach-circle {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("goldbach-circle: interrupted", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # exit-code contract is total
        print(f"goldbach-circle {args.command}: internal error: {exc!r}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
