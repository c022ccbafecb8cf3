"""Static detection of test smells in Python ``unittest`` suites."""

__version__ = "0.1.0"

from .analytics import (  # noqa: E402
    CorpusStatistics,
    ProjectReport,
    co_occurrence,
    merge_reports,
    prevalence,
    smell_histogram,
)
from .detectors import DetectorConfig, Finding, SmellKind, run_all  # noqa: E402
from .report import load_reports, serialize_report  # noqa: E402
from .scanner import scan, scan_source  # noqa: E402

__all__ = [
    "CorpusStatistics",
    "DetectorConfig",
    "Finding",
    "ProjectReport",
    "SmellKind",
    "co_occurrence",
    "load_reports",
    "merge_reports",
    "prevalence",
    "run_all",
    "scan",
    "scan_source",
    "serialize_report",
    "smell_histogram",
]
