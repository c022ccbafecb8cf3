"""Command line entry point.

    smellscan scan ROOT [ROOT ...] [--format json|text] [-o OUT] [options]
    smellscan stats REPORT [REPORT ...] [--format json|text]

Exit codes: 0 success, 1 usage or I/O error, 2 files skipped under --strict.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .analytics import CorpusStatistics
from .detectors import ALL_KINDS, DetectorConfig, SmellKind
from .report import ReportFormatError, dumps, load_reports, render_corpus, serialize_report
from .scanner import scan

log = logging.getLogger("smellscan")

CONFIG_ENV = "SMELL_CONFIG"
_CONFIG_KEYS = {"cohesion_threshold", "setup_threshold", "only", "exclude", "strict", "jobs", "format"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default; 2 is reserved for --strict
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _kinds(value: str) -> list[SmellKind]:
    try:
        return [SmellKind.parse(v) for v in value.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _jobs(value: str) -> int:
    if value == "auto":
        return 0
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'auto', got {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'auto', got {value!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="smellscan", description="Detect test smells in Python unittest suites.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("scan", help="scan directories and write a report")
    p.add_argument("roots", nargs="+", metavar="ROOT")
    p.add_argument("-o", "--output", default=None, help="output file, '-' for stdout (default)")
    p.add_argument("--format", choices=("json", "text"), default=None)
    p.add_argument("--cohesion-threshold", type=float, default=None, metavar="FLOAT")
    p.add_argument("--setup-threshold", type=int, default=None, metavar="INT")
    p.add_argument("--only", type=_kinds, default=None, metavar="KINDS", help="comma-separated smell kinds to run")
    p.add_argument("--exclude", type=_kinds, default=None, metavar="KINDS", help="comma-separated smell kinds to skip")
    p.add_argument("--strict", action="store_true", default=None, help="exit 2 if any file had a syntax error")
    p.add_argument("--jobs", type=_jobs, default=None, metavar="N", help="worker processes, or 'auto'")

    p = sub.add_parser("stats", help="merge reports into corpus statistics")
    p.add_argument("reports", nargs="*", metavar="REPORT")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(subparser=p)
    return parser


def load_config_file(path: str | os.PathLike) -> dict:
    """Settings from a JSON file; keys match the scan flags (dashes or underscores)."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must be a JSON object")
    out = {}
    for key, value in data.items():
        norm = key.replace("-", "_")
        if norm not in _CONFIG_KEYS:
            raise UsageError(f"config {path}: unknown key {key!r}")
        out[norm] = value
    for key in ("only", "exclude"):
        if key in out:
            value = out[key]
            items = value.split(",") if isinstance(value, str) else value
            try:
                out[key] = [SmellKind.parse(v) for v in items]
            except (ValueError, AttributeError) as exc:
                raise UsageError(f"config {path}: {exc}") from None
    if "jobs" in out:
        try:
            out["jobs"] = _jobs(str(out["jobs"]))
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"config {path}: {exc}") from None
    return out


def _settings(args: argparse.Namespace) -> dict:
    settings = {"format": "json", "strict": False, "jobs": 1}
    env = os.environ.get(CONFIG_ENV)
    if env:
        settings.update(load_config_file(env))
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if args.output is not None:
        settings["output"] = args.output
    return settings


def detector_config(settings: dict) -> DetectorConfig:
    enabled = set(settings.get("only") or ALL_KINDS)
    enabled -= set(settings.get("exclude") or ())
    try:
        return DetectorConfig(
            cohesion_threshold=float(settings.get("cohesion_threshold", 0.4)),
            obscure_setup_threshold=settings.get("setup_threshold", 10),
            enabled=frozenset(enabled),
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _write(data: bytes, output: str) -> None:
    if output == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(output).write_bytes(data)


def cmd_scan(args: argparse.Namespace) -> int:
    settings = _settings(args)
    config = detector_config(settings)
    if settings["format"] not in ("json", "text"):
        raise UsageError(f"unknown format {settings['format']!r}")
    for root in args.roots:
        if not Path(root).is_dir():
            raise UsageError(f"no such directory: {root}")
    reports = [scan(root, config, jobs=settings["jobs"]) for root in args.roots]
    payload = serialize_report(reports[0] if len(reports) == 1 else reports, settings["format"])
    _write(payload, settings.get("output", "-"))
    if settings["strict"] and any(r.skipped for r in reports):
        for r in reports:
            for path, reason in r.skipped:
                print(f"skipped {path}: {reason}", file=sys.stderr)
        return 2
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    if not args.reports:
        args.subparser.print_usage(sys.stderr)
        print("smellscan stats: error: at least one report is required", file=sys.stderr)
        return 1
    reports = []
    for path in args.reports:
        reports.extend(load_reports(path))
    stats = CorpusStatistics.of(reports)
    if args.format == "json":
        payload = dumps(stats.to_dict())
    else:
        payload = render_corpus(stats).encode("utf-8")
    _write(payload, args.output)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        if args.command == "scan":
            return cmd_scan(args)
        return cmd_stats(args)
    except (UsageError, ReportFormatError, OSError) as exc:
        print(f"smellscan: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
