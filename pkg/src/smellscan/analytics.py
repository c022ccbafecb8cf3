"""Corpus statistics over detected smells.

Only suites with at least one test case, in files with at least one such
suite, are counted. A suite is smelly in a kind when it carries at least one
finding of that kind.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .detectors import ALL_KINDS, Finding, SmellKind


@dataclass(frozen=True)
class Ratio:
    count: int
    total: int

    @property
    def fraction(self) -> Fraction | None:
        return Fraction(self.count, self.total) if self.total else None

    @property
    def percent(self) -> float:
        return round(100.0 * self.count / self.total, 1) if self.total else 0.0

    def to_dict(self) -> dict:
        return {"count": self.count, "total": self.total, "percent": self.percent}


@dataclass(frozen=True)
class SuiteReport:
    path: str
    name: str
    line: int
    cases: tuple[str, ...]
    findings: tuple[Finding, ...] = ()

    @property
    def case_count(self) -> int:
        return len(self.cases)

    @property
    def kinds(self) -> frozenset[SmellKind]:
        return frozenset(f.kind for f in self.findings)

    def smelly(self, kind: SmellKind) -> bool:
        return kind in self.kinds


@dataclass(frozen=True)
class FileReport:
    path: str
    suites: tuple[SuiteReport, ...]


@dataclass(frozen=True)
class ProjectReport:
    scan_root: str
    config: Mapping
    files: tuple[FileReport, ...] = ()
    skipped: tuple[tuple[str, str], ...] = ()  # (path, reason)
    excluded: tuple[tuple[str, str, str], ...] = ()  # (path, suite, reason)
    diagnostics: tuple[str, ...] = ()

    @property
    def suites(self) -> list[SuiteReport]:
        return [s for f in self.files for s in f.suites]

    @property
    def totals(self) -> dict[str, int]:
        suites = self.suites
        return {
            "files": len(self.files),
            "suites": len(suites),
            "cases": sum(s.case_count for s in suites),
            "skipped": len(self.skipped),
        }


def aggregate_project(
    scan_root: str,
    config: Mapping,
    files: Iterable[FileReport],
    skipped: Iterable[tuple[str, str]] = (),
    diagnostics: Iterable[str] = (),
    excluded: Iterable[tuple[str, str, str]] = (),
) -> ProjectReport:
    """Assemble a report, moving case-less suites and suite-less files to ``excluded``."""
    kept = []
    dropped = list(excluded)
    for f in files:
        suites = []
        for s in f.suites:
            if s.case_count:
                suites.append(s)
            else:
                dropped.append((f.path, s.name, "no test cases"))
        if suites:
            kept.append(FileReport(f.path, tuple(sorted(suites, key=lambda s: (s.line, s.name)))))
        elif not f.suites:
            dropped.append((f.path, "", "no test suites"))
        else:
            dropped.append((f.path, "", "no suite with test cases"))
    return ProjectReport(
        scan_root=scan_root,
        config=dict(config),
        files=tuple(sorted(kept, key=lambda f: f.path)),
        skipped=tuple(sorted(set(skipped))),
        excluded=tuple(sorted(set(dropped))),
        diagnostics=tuple(sorted(set(diagnostics))),
    )


def merge_reports(reports: Sequence[ProjectReport]) -> ProjectReport:
    """Union of reports over disjoint file sets of the same project."""
    if not reports:
        raise ValueError("nothing to merge")
    first = reports[0]
    return ProjectReport(
        scan_root=first.scan_root,
        config=first.config,
        files=tuple(sorted((f for r in reports for f in r.files), key=lambda f: f.path)),
        skipped=tuple(sorted({s for r in reports for s in r.skipped})),
        excluded=tuple(sorted({e for r in reports for e in r.excluded})),
        diagnostics=tuple(sorted({d for r in reports for d in r.diagnostics})),
    )


def _suite_kind_sets(reports: Iterable[ProjectReport]) -> list[frozenset[SmellKind]]:
    return [s.kinds for r in reports for s in r.suites]


def prevalence(report: ProjectReport | Sequence[ProjectReport]) -> dict[SmellKind, Ratio]:
    """Fraction of counted suites smelly in each kind."""
    sets = _suite_kind_sets(_as_list(report))
    counts = Counter(k for s in sets for k in s)
    return {k: Ratio(counts[k], len(sets)) for k in ALL_KINDS}


def project_prevalence(reports: Sequence[ProjectReport]) -> dict[SmellKind, Ratio]:
    """Fraction of projects (reports with at least one suite) smelly in each kind."""
    projects = [frozenset().union(*_suite_kind_sets([r])) for r in reports if r.suites]
    counts = Counter(k for p in projects for k in p)
    return {k: Ratio(counts[k], len(projects)) for k in ALL_KINDS}


def smell_histogram(report: ProjectReport | Sequence[ProjectReport]) -> dict[int, int]:
    """Number of suites per count of distinct smell kinds."""
    counts = Counter(len(s) for s in _suite_kind_sets(_as_list(report)))
    return dict(sorted(counts.items()))


def co_occurrence(report: ProjectReport | Sequence[ProjectReport]) -> dict[SmellKind, dict[SmellKind, Ratio]]:
    """``[x][y]``: share of suites smelly in ``x`` that are also smelly in ``y``.

    Rows whose antecedent never occurs are omitted.
    """
    sets = _suite_kind_sets(_as_list(report))
    matrix: dict[SmellKind, dict[SmellKind, Ratio]] = {}
    for x in ALL_KINDS:
        with_x = [s for s in sets if x in s]
        if not with_x:
            continue
        matrix[x] = {y: Ratio(sum(1 for s in with_x if y in s), len(with_x)) for y in ALL_KINDS}
    return matrix


def smelly_suites(report: ProjectReport | Sequence[ProjectReport]) -> Ratio:
    sets = _suite_kind_sets(_as_list(report))
    return Ratio(sum(1 for s in sets if s), len(sets))


def statistics(report: ProjectReport | Sequence[ProjectReport]) -> dict:
    """All by-suite statistics in serializable form."""
    return {
        "prevalence_by_kind": {k.value: r.to_dict() for k, r in prevalence(report).items()},
        "smelly_suites": smelly_suites(report).to_dict(),
        "histogram": {str(n): c for n, c in smell_histogram(report).items()},
        "co_occurrence": {
            x.value: {y.value: r.to_dict() for y, r in row.items()} for x, row in co_occurrence(report).items()
        },
    }


def _as_list(report: ProjectReport | Sequence[ProjectReport]) -> list[ProjectReport]:
    return [report] if isinstance(report, ProjectReport) else list(report)


@dataclass(frozen=True)
class CorpusStatistics:
    """Statistics over several projects, one report each."""

    projects: int
    by_suite: dict = field(default_factory=dict)
    by_project: dict[SmellKind, Ratio] = field(default_factory=dict)

    @classmethod
    def of(cls, reports: Sequence[ProjectReport]) -> CorpusStatistics:
        return cls(len(reports), statistics(reports), project_prevalence(reports))

    def to_dict(self) -> dict:
        return {
            "projects": self.projects,
            "prevalence_by_project": {k.value: r.to_dict() for k, r in self.by_project.items()},
            **self.by_suite,
        }
