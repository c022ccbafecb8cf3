"""Catalog of suboptimal assertions and their more specific replacements."""

from __future__ import annotations

from dataclasses import dataclass

from .frontend import Node
from .model import AssertionCall


@dataclass(frozen=True)
class SuboptimalRule:
    number: int
    method: str
    pattern: str
    replacement: str

    @property
    def example(self) -> str:
        """A minimal assertion matching this rule."""
        if self.pattern == "isinstance":
            return f"{self.method}(isinstance(a, B))"
        if self.pattern in ("is None", "is not None"):
            return f"{self.method}(a {self.pattern})"
        if self.pattern.startswith("== "):
            return f"{self.method}(a, {self.pattern[3:]})"
        return f"{self.method}(a {self.pattern} b)"


_TRUTH_PATTERNS = [
    # pattern, fix under assertTrue, fix under assertFalse
    ("==", "assertEqual", "assertNotEqual"),
    ("!=", "assertNotEqual", "assertEqual"),
    ("<", "assertLess", "assertGreaterEqual"),
    ("<=", "assertLessEqual", "assertGreater"),
    (">", "assertGreater", "assertLessEqual"),
    (">=", "assertGreaterEqual", "assertLess"),
    ("in", "assertIn", "assertNotIn"),
    ("not in", "assertNotIn", "assertIn"),
    ("is", "assertIs", "assertIsNot"),
    ("is not", "assertIsNot", "assertIs"),
    ("is None", "assertIsNone", "assertIsNotNone"),
    ("is not None", "assertIsNotNone", "assertIsNone"),
    ("isinstance", "assertIsInstance", "assertNotIsInstance"),
]

# Equivalent only when the operand is a bool or None: assertEqual(1, True) passes, assertTrue(1) too,
# but assertEqual(2, True) fails while assertTrue(2) passes.
_LITERAL_PATTERNS = [
    ("assertEqual", "== True", "assertTrue"),
    ("assertEqual", "== False", "assertFalse"),
    ("assertEqual", "== None", "assertIsNone"),
    ("assertNotEqual", "== True", "assertFalse"),
    ("assertNotEqual", "== False", "assertTrue"),
    ("assertNotEqual", "== None", "assertIsNotNone"),
]


def _build() -> tuple[SuboptimalRule, ...]:
    rules = []
    for pattern, fix, _ in _TRUTH_PATTERNS:
        rules.append(SuboptimalRule(len(rules) + 1, "assertTrue", pattern, fix))
    for pattern, _, fix in _TRUTH_PATTERNS:
        rules.append(SuboptimalRule(len(rules) + 1, "assertFalse", pattern, fix))
    for method, pattern, fix in _LITERAL_PATTERNS:
        rules.append(SuboptimalRule(len(rules) + 1, method, pattern, fix))
    return tuple(rules)


CATALOG: tuple[SuboptimalRule, ...] = _build()
_BY_KEY = {(r.method, r.pattern): r for r in CATALOG}
assert len(CATALOG) == 32 and len(_BY_KEY) == 32


def _is_none(node: Node) -> bool:
    return node.category == "literal" and node["literal_kind"] == "none"


def _truth_pattern(expr: Node) -> str | None:
    if expr.category == "comparison" and len(expr["ops"]) == 1:
        op = expr["ops"][0]
        left, right = expr["operands"]
        if op in ("is", "is not") and (_is_none(left) or _is_none(right)):
            return f"{op} None"
        return op
    if (
        expr.category == "call"
        and expr["name"] == "isinstance"
        and len(expr["args"]) == 2
        and not expr["keywords"]
        and not any(a.kind == "Starred" for a in expr["args"])
    ):
        return "isinstance"
    return None


def _literal_operand(node: Node) -> str | None:
    if node.category != "literal":
        return None
    if node["literal_kind"] == "bool":
        return "True" if node["value"] else "False"
    if node["literal_kind"] == "none":
        return "None"
    return None


def match(call: AssertionCall) -> SuboptimalRule | None:
    """The catalog rule ``call`` matches, if any."""
    if call.form != "unittest-method":
        return None
    method = call.canonical
    args = call.checked_args
    if method in ("assertTrue", "assertFalse") and len(args) == 1:
        pattern = _truth_pattern(args[0])
        return _BY_KEY.get((method, pattern)) if pattern else None
    if method in ("assertEqual", "assertNotEqual") and len(args) == 2:
        for operand in (args[1], args[0]):
            literal = _literal_operand(operand)
            if literal is not None:
                return _BY_KEY.get((method, f"== {literal}"))
    return None
