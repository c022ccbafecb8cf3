"""The eighteen test smell detectors.

Every detector is a pure function ``(suite, config) -> list[Finding]`` reading
only the extracted :class:`~smellscan.model.TestSuite`.
"""

from __future__ import annotations

import enum
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import catalog, cohesion
from .frontend import Node, Span
from .model import VARIADIC_ASSERTS, AssertionCall, TestCase, TestSuite

log = logging.getLogger(__name__)


class SmellKind(str, enum.Enum):
    AssertionRoulette = "AssertionRoulette"
    ConditionalTestLogic = "ConditionalTestLogic"
    ConstructorInitialization = "ConstructorInitialization"
    DefaultTest = "DefaultTest"
    DuplicateAssert = "DuplicateAssert"
    EmptyTest = "EmptyTest"
    ExceptionHandling = "ExceptionHandling"
    GeneralFixture = "GeneralFixture"
    IgnoredTest = "IgnoredTest"
    LackOfCohesion = "LackOfCohesion"
    MagicNumberTest = "MagicNumberTest"
    ObscureInLineSetup = "ObscureInLineSetup"
    RedundantAssertion = "RedundantAssertion"
    RedundantPrint = "RedundantPrint"
    SleepyTest = "SleepyTest"
    SuboptimalAssert = "SuboptimalAssert"
    TestMaverick = "TestMaverick"
    UnknownTest = "UnknownTest"

    @property
    def suite_level(self) -> bool:
        return self in _SUITE_LEVEL

    @classmethod
    def parse(cls, name: str) -> SmellKind:
        try:
            return cls(name.strip())
        except ValueError:
            raise ValueError(f"unknown smell kind: {name!r}") from None

    def __str__(self) -> str:
        return self.value


_SUITE_LEVEL = frozenset(
    {
        SmellKind.ConstructorInitialization,
        SmellKind.DefaultTest,
        SmellKind.GeneralFixture,
        SmellKind.LackOfCohesion,
    }
)

ALL_KINDS: tuple[SmellKind, ...] = tuple(SmellKind)


@dataclass(frozen=True)
class Finding:
    kind: SmellKind
    path: str
    suite: str
    case: str
    span: Span
    evidence: str
    recommended_fix: str | None = None
    suite_line: int = 0

    def sort_key(self) -> tuple:
        return (self.span, self.kind.value, self.case, self.evidence)


@dataclass(frozen=True)
class DetectorConfig:
    cohesion_threshold: float = 0.4
    obscure_setup_threshold: int = 10
    enabled: frozenset[SmellKind] = field(default_factory=lambda: frozenset(SmellKind))
    nested_magic_numbers: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.cohesion_threshold <= 1.0:
            raise ValueError(f"cohesion_threshold must be in [0, 1], got {self.cohesion_threshold}")
        if isinstance(self.obscure_setup_threshold, bool) or int(self.obscure_setup_threshold) != self.obscure_setup_threshold:
            raise ValueError(f"obscure_setup_threshold must be an integer, got {self.obscure_setup_threshold!r}")
        if self.obscure_setup_threshold < 1:
            raise ValueError(f"obscure_setup_threshold must be >= 1, got {self.obscure_setup_threshold}")
        object.__setattr__(self, "enabled", frozenset(SmellKind(k) for k in self.enabled))

    def to_dict(self) -> dict:
        return {
            "cohesion_threshold": self.cohesion_threshold,
            "obscure_setup_threshold": self.obscure_setup_threshold,
            "enabled": sorted(k.value for k in self.enabled),
            "nested_magic_numbers": self.nested_magic_numbers,
        }

    @classmethod
    def from_dict(cls, data: dict) -> DetectorConfig:
        return cls(
            cohesion_threshold=float(data.get("cohesion_threshold", 0.4)),
            obscure_setup_threshold=data.get("obscure_setup_threshold", 10),
            enabled=frozenset(SmellKind.parse(k) for k in data.get("enabled", [k.value for k in SmellKind])),
            nested_magic_numbers=bool(data.get("nested_magic_numbers", False)),
        )


# cosine means are sums of square roots; allow for rounding at the boundary
_COHESION_EPS = 1e-9

_SKIP_DECORATORS = frozenset({"skip", "skipIf", "skipUnless"})
_EQUALITY_ASSERTS = frozenset(
    {
        "assertEqual",
        "assertNotEqual",
        "assertIs",
        "assertIsNot",
        "assertAlmostEqual",
        "assertNotAlmostEqual",
        "assertCountEqual",
        "assertMultiLineEqual",
        "assertSequenceEqual",
        "assertListEqual",
        "assertTupleEqual",
        "assertSetEqual",
        "assertDictEqual",
    }
)
_TRUTH_ASSERTS = frozenset({"assertTrue", "assertFalse"})


def _case_finding(kind: SmellKind, suite: TestSuite, case: TestCase, evidence: str, span: Span | None = None, fix: str | None = None) -> Finding:
    return Finding(kind, suite.path, suite.name, case.name, span or case.span, evidence, fix, suite.line)


def _suite_finding(kind: SmellKind, suite: TestSuite, evidence: str) -> Finding:
    return Finding(kind, suite.path, suite.name, "", suite.span, evidence, None, suite.line)


def _lines(nodes: Iterable) -> str:
    return ", ".join(str(n.span.start_line) for n in nodes)


def _case_nodes(case: TestCase) -> Iterable[Node]:
    for stmt in case.body:
        yield from stmt.walk()


# ---------------------------------------------------------------------------
# case-level detectors
# ---------------------------------------------------------------------------


def detect_assertion_roulette(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    out = []
    for case in suite.cases:
        bare = [a for a in case.assertions if a.message_known and not a.has_message and a.canonical not in VARIADIC_ASSERTS]
        if len(bare) >= 2:
            out.append(
                _case_finding(
                    SmellKind.AssertionRoulette, suite, case, f"{len(bare)} assertions without a message (lines {_lines(bare)})"
                )
            )
    return out


def detect_conditional_test_logic(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    out = []
    for case in suite.cases:
        hits = [n for n in _case_nodes(case) if n.category in ("if-stmt", "for-stmt", "while-stmt")]
        if hits:
            what = ", ".join(f"{n.category[:-5]} at line {n.span.start_line}" for n in hits)
            out.append(_case_finding(SmellKind.ConditionalTestLogic, suite, case, what))
    return out


def _duplicate_key(a: AssertionCall) -> tuple:
    keywords = tuple(sorted((k or "**", v) for k, v in a.keywords if k != "msg"))
    return (a.form, a.canonical, a.checked_lexemes, keywords)


def detect_duplicate_assert(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    out = []
    for case in suite.cases:
        groups: dict[tuple, list[AssertionCall]] = defaultdict(list)
        for a in case.assertions:
            if a.form != "fail-call":
                groups[_duplicate_key(a)].append(a)
        dups = [g for g in groups.values() if len(g) >= 2]
        if dups:
            evidence = "; ".join(f"{g[0].lexeme} at lines {_lines(g)}" for g in dups)
            out.append(_case_finding(SmellKind.DuplicateAssert, suite, case, evidence))
    return out


def detect_empty_test(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    return [
        _case_finding(SmellKind.EmptyTest, suite, case, "no executable statements")
        for case in suite.cases
        if case.executable_statement_count == 0
    ]


def detect_exception_handling(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    out = []
    for case in suite.cases:
        hits = [n for n in _case_nodes(case) if n.category in ("try-stmt", "raise-stmt")]
        if hits:
            what = ", ".join(f"{'try' if n.category == 'try-stmt' else 'raise'} at line {n.span.start_line}" for n in hits)
            out.append(_case_finding(SmellKind.ExceptionHandling, suite, case, what))
    return out


def _is_skip(decorator: str, suite: TestSuite) -> bool:
    return any(
        q.startswith("unittest.") and q.rpartition(".")[2] in _SKIP_DECORATORS and q.count(".") <= 2
        for q in suite.module.resolve(decorator)
    )


def detect_ignored_test(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    out = []
    class_skips = [d for d in suite.node["decorators"] if _is_skip(d["name"], suite)]
    for case in suite.cases:
        skips = [d for d in case.node["decorators"] if _is_skip(d["name"], suite)]
        if skips:
            out.append(_case_finding(SmellKind.IgnoredTest, suite, case, f"@{skips[0]['name']} at line {skips[0].span.start_line}"))
        elif class_skips:
            d = class_skips[0]
            out.append(_case_finding(SmellKind.IgnoredTest, suite, case, f"suite decorated with @{d['name']} at line {d.span.start_line}"))
    return out


def _is_numeric(node: Node) -> bool:
    if node.category == "literal":
        return node["literal_kind"] in ("int", "float", "complex")
    if node.kind == "UnaryOp" and node["op"] in ("-", "+"):
        return _is_numeric(node["operand"])
    return False


def detect_magic_number_test(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    out = []
    for case in suite.cases:
        hits = []
        for a in case.assertions:
            if a.form != "unittest-method":
                continue
            for arg, lexeme in zip(a.checked_args, a.checked_lexemes):
                nodes = arg.walk() if config.nested_magic_numbers else (arg,)
                if any(_is_numeric(n) for n in nodes):
                    hits.append(f"{lexeme} in {a.method} at line {a.span.start_line}")
        if hits:
            out.append(_case_finding(SmellKind.MagicNumberTest, suite, case, "; ".join(hits)))
    return out


def detect_obscure_inline_setup(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    out = []
    for case in suite.cases:
        n = len(case.local_variable_names)
        if n >= config.obscure_setup_threshold:
            out.append(
                _case_finding(
                    SmellKind.ObscureInLineSetup, suite, case, f"{n} local variables ({', '.join(sorted(case.local_variable_names))})"
                )
            )
    return out


def _is_constant(node: Node) -> bool:
    return node.category == "literal" and node["literal_kind"] != "fstring"


def detect_redundant_assertion(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    out = []
    for case in suite.cases:
        hits = []
        for a in case.assertions:
            if a.form != "unittest-method":
                continue
            args, lexemes = a.checked_args, a.checked_lexemes
            if a.canonical in _EQUALITY_ASSERTS and len(args) == 2 and lexemes[0] == lexemes[1]:
                hits.append(a)
            elif a.canonical in _TRUTH_ASSERTS and len(args) == 1 and _is_constant(args[0]):
                hits.append(a)
        if hits:
            evidence = "; ".join(f"{a.lexeme} at line {a.span.start_line}" for a in hits)
            out.append(_case_finding(SmellKind.RedundantAssertion, suite, case, evidence))
    return out


def detect_redundant_print(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    out = []
    for case in suite.cases:
        hits = [n for n in _case_nodes(case) if n.category == "call" and n["func"].kind == "Name" and n["callee"] == "print"]
        if hits:
            out.append(_case_finding(SmellKind.RedundantPrint, suite, case, f"print() at lines {_lines(hits)}"))
    return out


def detect_sleepy_test(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    out = []
    comments = suite.module.comments
    for case in suite.cases:
        hits = []
        for n in _case_nodes(case):
            if n.category != "call" or not n["name"]:
                continue
            if "time.sleep" not in suite.module.resolve(n["name"]):
                continue
            if not any(line in comments for line in range(n.span.start_line, n.span.end_line + 1)):
                hits.append(n)
        if hits:
            out.append(_case_finding(SmellKind.SleepyTest, suite, case, f"uncommented sleep at lines {_lines(hits)}"))
    return out


def detect_suboptimal_assert(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    out = []
    for case in suite.cases:
        for a in case.assertions:
            rule = catalog.match(a)
            if rule is not None:
                out.append(
                    _case_finding(
                        SmellKind.SuboptimalAssert,
                        suite,
                        case,
                        f"{a.lexeme} (rule {rule.number}: {rule.method} with '{rule.pattern}')",
                        span=a.span,
                        fix=rule.replacement,
                    )
                )
    return out


def detect_test_maverick(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    fixture = suite.fixture
    if fixture is None or not fixture.fields:
        return []
    return [
        _case_finding(SmellKind.TestMaverick, suite, case, f"uses none of the setUp fields {', '.join(sorted(fixture.fields))}")
        for case in suite.cases
        if not case.used_fixture_fields & fixture.fields
    ]


def detect_unknown_test(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    return [_case_finding(SmellKind.UnknownTest, suite, case, "no assertions") for case in suite.cases if not case.assertions]


# ---------------------------------------------------------------------------
# suite-level detectors
# ---------------------------------------------------------------------------


def detect_constructor_initialization(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    if not suite.constructor_present:
        return []
    return [_suite_finding(SmellKind.ConstructorInitialization, suite, "defines __init__")]


def detect_default_test(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    if suite.name != "MyTestCase":
        return []
    return [_suite_finding(SmellKind.DefaultTest, suite, "suite is named MyTestCase")]


def detect_general_fixture(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    fixture = suite.fixture
    if fixture is None or not fixture.fields:
        return []
    unused = {c.name: sorted(fixture.fields - c.used_fixture_fields) for c in suite.cases}
    unused = {k: v for k, v in unused.items() if v}
    if not unused:
        return []
    evidence = "; ".join(f"{name} ignores {', '.join(fields)}" for name, fields in unused.items())
    return [_suite_finding(SmellKind.GeneralFixture, suite, evidence)]


def suite_cohesion(suite: TestSuite) -> float | None:
    tree = suite.module.tree
    return cohesion.mean_pairwise_cosine(cohesion.case_terms(c, tree) for c in suite.cases)


def detect_lack_of_cohesion(suite: TestSuite, config: DetectorConfig) -> list[Finding]:
    mean = suite_cohesion(suite)
    if mean is None or mean > config.cohesion_threshold + _COHESION_EPS:
        return []
    return [_suite_finding(SmellKind.LackOfCohesion, suite, f"mean={mean:.2f}")]


DETECTORS: dict[SmellKind, Callable[[TestSuite, DetectorConfig], list[Finding]]] = {
    SmellKind.AssertionRoulette: detect_assertion_roulette,
    SmellKind.ConditionalTestLogic: detect_conditional_test_logic,
    SmellKind.ConstructorInitialization: detect_constructor_initialization,
    SmellKind.DefaultTest: detect_default_test,
    SmellKind.DuplicateAssert: detect_duplicate_assert,
    SmellKind.EmptyTest: detect_empty_test,
    SmellKind.ExceptionHandling: detect_exception_handling,
    SmellKind.GeneralFixture: detect_general_fixture,
    SmellKind.IgnoredTest: detect_ignored_test,
    SmellKind.LackOfCohesion: detect_lack_of_cohesion,
    SmellKind.MagicNumberTest: detect_magic_number_test,
    SmellKind.ObscureInLineSetup: detect_obscure_inline_setup,
    SmellKind.RedundantAssertion: detect_redundant_assertion,
    SmellKind.RedundantPrint: detect_redundant_print,
    SmellKind.SleepyTest: detect_sleepy_test,
    SmellKind.SuboptimalAssert: detect_suboptimal_assert,
    SmellKind.TestMaverick: detect_test_maverick,
    SmellKind.UnknownTest: detect_unknown_test,
}


def run_all(suite: TestSuite, config: DetectorConfig | None = None, diagnostics: list[str] | None = None) -> list[Finding]:
    """Findings of every enabled detector, sorted by span then kind.

    A detector that raises is skipped for this suite and reported through
    ``diagnostics``; the others still run.
    """
    config = config or DetectorConfig()
    findings: list[Finding] = []
    for kind, detector in DETECTORS.items():
        if kind not in config.enabled:
            continue
        try:
            findings.extend(detector(suite, config))
        except Exception as exc:  # isolate faulty detectors
            msg = f"{kind.value} failed on {suite.qualified_name}: {exc!r}"
            log.error(msg)
            if diagnostics is not None:
                diagnostics.append(msg)
    return sorted(findings, key=Finding.sort_key)
