"""JSON and text rendering of project reports."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

import jsonschema

from . import __version__
from .analytics import (
    CorpusStatistics,
    FileReport,
    ProjectReport,
    SuiteReport,
    statistics,
)
from .detectors import ALL_KINDS, Finding, SmellKind
from .frontend import Span

_RATIO = {
    "type": "object",
    "required": ["count", "total", "percent"],
    "properties": {"count": {"type": "integer"}, "total": {"type": "integer"}, "percent": {"type": "number"}},
}

_SPAN = {
    "type": "object",
    "required": ["start_line", "start_col", "end_line", "end_col"],
    "properties": {k: {"type": "integer"} for k in ("start_line", "start_col", "end_line", "end_col")},
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["tool_version", "scan_root", "config", "totals", "files", "statistics"],
    "properties": {
        "tool_version": {"type": "string"},
        "scan_root": {"type": "string"},
        "config": {"type": "object"},
        "totals": {
            "type": "object",
            "required": ["files", "suites", "cases", "skipped"],
            "properties": {k: {"type": "integer"} for k in ("files", "suites", "cases", "skipped")},
        },
        "files": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["path", "suites"],
                "properties": {
                    "path": {"type": "string"},
                    "suites": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["name", "line", "cases", "findings"],
                            "properties": {
                                "name": {"type": "string"},
                                "line": {"type": "integer"},
                                "cases": {"type": "array", "items": {"type": "string"}},
                                "findings": {
                                    "type": "array",
                                    "items": {
                                        "type": "object",
                                        "required": ["kind", "case", "span", "evidence"],
                                        "properties": {
                                            "kind": {"enum": [k.value for k in ALL_KINDS]},
                                            "case": {"type": "string"},
                                            "span": _SPAN,
                                            "evidence": {"type": "string", "minLength": 1},
                                            "fix": {"type": "string"},
                                        },
                                    },
                                },
                            },
                        },
                    },
                },
            },
        },
        "skipped": {"type": "array"},
        "excluded": {"type": "array"},
        "diagnostics": {"type": "array", "items": {"type": "string"}},
        "statistics": {
            "type": "object",
            "required": ["prevalence_by_kind", "histogram", "co_occurrence"],
            "properties": {
                "prevalence_by_kind": {"type": "object", "additionalProperties": _RATIO},
                "histogram": {"type": "object", "additionalProperties": {"type": "integer"}},
                "co_occurrence": {"type": "object"},
            },
        },
    },
}


class ReportFormatError(ValueError):
    """A JSON document is not a report produced by this tool."""


# ---------------------------------------------------------------------------
# dict conversion
# ---------------------------------------------------------------------------


def _finding_to_dict(f: Finding) -> dict:
    out = {"kind": f.kind.value, "case": f.case, "span": f.span.to_dict(), "evidence": f.evidence}
    if f.recommended_fix:
        out["fix"] = f.recommended_fix
    return out


def report_to_dict(report: ProjectReport) -> dict:
    return {
        "tool_version": __version__,
        "scan_root": report.scan_root,
        "config": dict(report.config),
        "totals": report.totals,
        "files": [
            {
                "path": f.path,
                "suites": [
                    {
                        "name": s.name,
                        "line": s.line,
                        "cases": list(s.cases),
                        "findings": [_finding_to_dict(x) for x in s.findings],
                    }
                    for s in f.suites
                ],
            }
            for f in report.files
        ],
        "skipped": [{"path": p, "reason": r} for p, r in report.skipped],
        "excluded": [{"path": p, "suite": s, "reason": r} for p, s, r in report.excluded],
        "diagnostics": list(report.diagnostics),
        "statistics": statistics(report),
    }


def report_from_dict(data: dict) -> ProjectReport:
    try:
        jsonschema.validate(data, REPORT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ReportFormatError(f"at {where}: {exc.message}") from None
    files = []
    for f in data["files"]:
        suites = []
        for s in f["suites"]:
            findings = tuple(
                Finding(
                    kind=SmellKind(x["kind"]),
                    path=f["path"],
                    suite=s["name"],
                    case=x["case"],
                    span=Span(**x["span"]),
                    evidence=x["evidence"],
                    recommended_fix=x.get("fix"),
                    suite_line=s["line"],
                )
                for x in s["findings"]
            )
            suites.append(SuiteReport(f["path"], s["name"], s["line"], tuple(s["cases"]), findings))
        files.append(FileReport(f["path"], tuple(suites)))
    return ProjectReport(
        scan_root=data["scan_root"],
        config=data["config"],
        files=tuple(files),
        skipped=tuple((x["path"], x["reason"]) for x in data.get("skipped", [])),
        excluded=tuple((x["path"], x["suite"], x["reason"]) for x in data.get("excluded", [])),
        diagnostics=tuple(data.get("diagnostics", [])),
    )


def dumps(data: object) -> bytes:
    return (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------


def serialize_report(report: ProjectReport | Sequence[ProjectReport], fmt: str = "json") -> bytes:
    """Render one report, or a list of reports (one per scan root)."""
    reports = [report] if isinstance(report, ProjectReport) else list(report)
    if fmt == "json":
        if isinstance(report, ProjectReport):
            return dumps(report_to_dict(report))
        return dumps([report_to_dict(r) for r in reports])
    if fmt == "text":
        return "\n".join(render_text(r) for r in reports).encode("utf-8")
    raise ValueError(f"unknown format: {fmt!r}")


def parse_reports(raw: bytes | str, name: str = "<report>") -> list[ProjectReport]:
    """Reports from a JSON document holding one report or a list of them."""
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ReportFormatError(f"{name}: not JSON ({exc})") from None
    items = data if isinstance(data, list) else [data]
    out = []
    for item in items:
        try:
            out.append(report_from_dict(item))
        except ReportFormatError as exc:
            raise ReportFormatError(f"{name}: {exc}") from None
    return out


def load_reports(path: str | Path) -> list[ProjectReport]:
    path = Path(path)
    return parse_reports(path.read_bytes(), str(path))


def _table(rows: list[tuple], header: tuple) -> list[str]:
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    fmt = "  ".join(f"{{:<{w}}}" if i == 0 else f"{{:>{w}}}" for i, w in enumerate(widths))
    return [fmt.format(*header), fmt.format(*("-" * w for w in widths)), *(fmt.format(*r) for r in rows)]


def _render_stats(stats: dict, by_project: dict | None = None) -> list[str]:
    lines = []
    header: tuple = ("smell", "suites", "%")
    rows = []
    for kind in ALL_KINDS:
        r = stats["prevalence_by_kind"][kind.value]
        row: tuple = (kind.value, f"{r['count']}/{r['total']}", f"{r['percent']:.1f}")
        if by_project is not None:
            p = by_project[kind.value]
            row += (f"{p['count']}/{p['total']}", f"{p['percent']:.1f}")
        rows.append(row)
    if by_project is not None:
        header += ("projects", "%")
    lines += ["Prevalence", *_table(rows, header), ""]
    hist = stats["histogram"]
    lines += ["Distinct smells per suite", *_table([(n, c) for n, c in hist.items()], ("smells", "suites")), ""]
    pairs = [
        (f"{x} -> {y}", f"{r['count']}/{r['total']}", f"{r['percent']:.1f}")
        for x, row in stats["co_occurrence"].items()
        for y, r in row.items()
        if x != y and r["count"]
    ]
    lines += ["Co-occurrence (suites with X that also have Y)", *_table(pairs, ("pair", "suites", "%"))]
    return lines


def render_text(report: ProjectReport) -> str:
    t = report.totals
    lines = [
        f"scan root: {report.scan_root}",
        f"test files: {t['files']}  suites: {t['suites']}  cases: {t['cases']}  skipped: {t['skipped']}",
        "",
    ]
    for f in report.files:
        for s in f.suites:
            for x in s.findings:
                where = f"{f.path}:{x.span.start_line}"
                owner = f"{s.name}.{x.case}" if x.case else s.name
                fix = f" -> {x.recommended_fix}" if x.recommended_fix else ""
                lines.append(f"{where}  {x.kind.value}  {owner}: {x.evidence}{fix}")
    if report.files:
        lines.append("")
    for path, reason in report.skipped:
        lines.append(f"skipped {path}: {reason}")
    lines += _render_stats(statistics(report))
    return "\n".join(lines) + "\n"


def render_corpus(stats: CorpusStatistics) -> str:
    data = stats.to_dict()
    lines = [f"projects: {stats.projects}", ""]
    lines += _render_stats(data, data["prevalence_by_project"])
    return "\n".join(lines) + "\n"
