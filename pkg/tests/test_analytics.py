import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smellscan.analytics import (
    CorpusStatistics,
    FileReport,
    ProjectReport,
    SuiteReport,
    aggregate_project,
    co_occurrence,
    merge_reports,
    prevalence,
    project_prevalence,
    smell_histogram,
    smelly_suites,
    statistics,
)
from smellscan.detectors import ALL_KINDS, Finding, SmellKind
from smellscan.frontend import Span

K = SmellKind
SPAN = Span(1, 0, 1, 1)


def suite(name: str, *kinds: SmellKind, cases=("test_a",), path="test_x.py") -> SuiteReport:
    findings = tuple(Finding(k, path, name, "" if k.suite_level else cases[0], SPAN, "e") for k in kinds)
    return SuiteReport(path, name, 1, tuple(cases), findings)


def project(*suites: SuiteReport, root="root") -> ProjectReport:
    files = {}
    for s in suites:
        files.setdefault(s.path, []).append(s)
    return aggregate_project(root, {}, [FileReport(p, tuple(ss)) for p, ss in files.items()])


def test_single_suite_single_kind():
    prev = prevalence(project(suite("A", K.EmptyTest)))
    assert prev[K.EmptyTest].fraction == 1
    assert all(prev[k].count == 0 for k in ALL_KINDS if k is not K.EmptyTest)


def test_half_of_four_suites():
    report = project(suite("A", K.AssertionRoulette), suite("B", K.AssertionRoulette), suite("C"), suite("D", K.EmptyTest))
    assert prevalence(report)[K.AssertionRoulette].to_dict() == {"count": 2, "total": 4, "percent": 50.0}


def test_caseless_suites_and_suiteless_files_are_excluded():
    report = aggregate_project(
        "root",
        {},
        [
            FileReport("test_a.py", (suite("A", path="test_a.py"), SuiteReport("test_a.py", "Empty", 9, ()))),
            FileReport("test_b.py", ()),
            FileReport("test_c.py", (SuiteReport("test_c.py", "NoCases", 1, ()),)),
        ],
    )
    assert report.totals == {"files": 1, "suites": 1, "cases": 1, "skipped": 0}
    assert {(p, s) for p, s, _ in report.excluded} == {("test_a.py", "Empty"), ("test_b.py", ""), ("test_c.py", ""), ("test_c.py", "NoCases")}


def test_histogram():
    assert smell_histogram(project(suite("A"), suite("B"))) == {0: 2}
    assert smell_histogram(project(suite("A", K.EmptyTest, K.UnknownTest, K.RedundantPrint), suite("B"))) == {0: 1, 3: 1}


def test_co_occurrence_rows_and_diagonal():
    report = project(suite("A", K.EmptyTest, K.UnknownTest), suite("B", K.UnknownTest))
    matrix = co_occurrence(report)
    assert matrix[K.EmptyTest][K.UnknownTest].fraction == 1
    assert matrix[K.UnknownTest][K.EmptyTest].to_dict() == {"count": 1, "total": 2, "percent": 50.0}
    assert K.DefaultTest not in matrix
    for x, row in matrix.items():
        assert row[x].fraction == 1


def test_by_project_prevalence():
    smelly = project(suite("A", K.DefaultTest), suite("B"), root="p1")
    clean = project(suite("C"), root="p2")
    by_project = project_prevalence([smelly, clean])
    assert by_project[K.DefaultTest].to_dict() == {"count": 1, "total": 2, "percent": 50.0}
    assert CorpusStatistics.of([smelly]).to_dict()["prevalence_by_kind"] == statistics(smelly)["prevalence_by_kind"]


def test_rounding_to_one_decimal():
    report = project(suite("A", K.EmptyTest), suite("B"), suite("C"))
    assert prevalence(report)[K.EmptyTest].percent == 33.3


def test_merge_requires_input():
    with pytest.raises(ValueError):
        merge_reports([])


kind_sets = st.lists(st.sets(st.sampled_from(ALL_KINDS), max_size=5), min_size=1, max_size=25)


@settings(max_examples=80)
@given(kind_sets, st.integers(1, 4), st.integers(0, 1000))
def test_merge_linearity_and_consistency(sets, parts, seed):
    suites = [suite(f"S{i}", *sorted(s, key=lambda k: k.value), path=f"test_{i}.py") for i, s in enumerate(sets)]
    whole = project(*suites)
    rng = random.Random(seed)
    buckets = [[] for _ in range(parts)]
    for s in suites:
        buckets[rng.randrange(parts)].append(s)
    pieces = [project(*b) if b else project() for b in buckets]
    merged = merge_reports(pieces)
    assert statistics(merged) == statistics(whole)
    assert merged.totals == whole.totals

    hist = smell_histogram(whole)
    assert sum(hist.values()) == len(suites)
    clean = len(suites) - smelly_suites(whole).count
    assert hist.get(0, 0) == clean
    for row in co_occurrence(whole).values():
        for ratio in row.values():
            assert 0 <= ratio.count <= ratio.total
