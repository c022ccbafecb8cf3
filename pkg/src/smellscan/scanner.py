"""End-to-end scan of a directory tree.

Runs in three phases: parse every test file, build the project class index
from the parsed facts, then extract suites and run the detectors per file.
With ``jobs > 1`` the first and last phases run in a process pool; results are
collected in path order, so the report does not depend on ``jobs``.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .analytics import FileReport, ProjectReport, SuiteReport, aggregate_project
from .detectors import DetectorConfig, run_all
from .frontend import SourceFile, SourceSyntaxError, extract_comments, parse_source, read_source
from .model import ModuleFacts, ModuleInfo, build_class_index, discover_test_files, module_info, resolve_test_suites

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Parsed:
    path: str
    facts: ModuleFacts | None
    error: str | None


@dataclass(frozen=True)
class _Analyzed:
    path: str
    report: FileReport
    diagnostics: tuple[str, ...]


def load_module(path: Path, root: Path) -> ModuleInfo:
    """Read, parse and summarize one file. Raises OSError or SourceSyntaxError."""
    source = read_source(path, root)
    tree = parse_source(source)
    return module_info(tree, extract_comments(source))


def analyze_module(info: ModuleInfo, chains: Mapping, config: DetectorConfig) -> _Analyzed:
    diagnostics: list[str] = []
    suites = []
    for suite in resolve_test_suites(info, chains):
        findings = run_all(suite, config, diagnostics)
        suites.append(SuiteReport(suite.path, suite.name, suite.line, tuple(c.name for c in suite.cases), tuple(findings)))
    return _Analyzed(info.path, FileReport(info.path, tuple(suites)), tuple(diagnostics))


def _parse_task(path: str, root: str) -> _Parsed:
    rel = Path(path).relative_to(root).as_posix()
    try:
        return _Parsed(rel, load_module(Path(path), Path(root)).facts, None)
    except SourceSyntaxError as exc:
        return _Parsed(rel, None, f"syntax error at line {exc.line}: {exc.message}")
    except OSError as exc:
        return _Parsed(rel, None, f"unreadable: {exc.strerror or exc}")


def _analyze_task(path: str, root: str, chains: Mapping, config: DetectorConfig) -> _Analyzed:
    return analyze_module(load_module(Path(path), Path(root)), chains, config)


def _jobs(jobs: int | None) -> int:
    if jobs is None or jobs <= 0:
        return os.cpu_count() or 1
    return jobs


def scan(root: str | Path, config: DetectorConfig | None = None, jobs: int | None = 1) -> ProjectReport:
    """Scan ``root`` and return its :class:`ProjectReport`."""
    config = config or DetectorConfig()
    root_path = Path(root)
    if not root_path.is_dir():
        raise NotADirectoryError(f"not a directory: {root}")
    diagnostics: list[str] = []
    paths = discover_test_files(root_path, diagnostics)
    workers = min(_jobs(jobs), max(len(paths), 1))

    skipped: list[tuple[str, str]] = []
    if workers == 1:
        modules: list[ModuleInfo] = []
        for path in paths:
            rel = path.relative_to(root_path).as_posix()
            try:
                modules.append(load_module(path, root_path))
            except SourceSyntaxError as exc:
                skipped.append((rel, f"syntax error at line {exc.line}: {exc.message}"))
            except OSError as exc:
                skipped.append((rel, f"unreadable: {exc.strerror or exc}"))
        index = build_class_index(modules)
        results = [analyze_module(m, index.chains, config) for m in modules]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parsed = list(pool.map(_parse_task, map(str, paths), [str(root_path)] * len(paths)))
            skipped = [(p.path, p.error) for p in parsed if p.error is not None]
            facts = [p.facts for p in parsed if p.facts is not None]
            index = build_class_index(facts)
            per_file: dict[str, dict] = {f.path: {} for f in facts}
            for key, chain in index.chains.items():
                per_file[key[0]][key] = chain
            good = [(root_path / f.path) for f in facts]
            results = list(
                pool.map(
                    _analyze_task,
                    map(str, good),
                    [str(root_path)] * len(good),
                    [per_file[f.path] for f in facts],
                    [config] * len(good),
                    chunksize=max(1, len(good) // (workers * 4)),
                )
            )
    for msg in skipped:
        log.info("skipped %s: %s", *msg)
    diagnostics.extend(index.diagnostics)
    for r in results:
        diagnostics.extend(r.diagnostics)
    return aggregate_project(
        scan_root=root_path.as_posix(),
        config=config.to_dict(),
        files=[r.report for r in results],
        skipped=skipped,
        diagnostics=diagnostics,
    )


def scan_source(text: str, path: str = "test_snippet.py", config: DetectorConfig | None = None):
    """Suites and findings for a single in-memory file; handy in notebooks and tests.

    Returns ``(suites, findings)``.
    """
    source = SourceFile(path, text)
    info = module_info(parse_source(source), extract_comments(source))
    index = build_class_index([info])
    suites = resolve_test_suites(info, index)
    config = config or DetectorConfig()
    findings = [f for s in suites for f in run_all(s, config)]
    return suites, findings
