"""Test-suite model: discovery, suite resolution and case extraction.

A *suite* is any class whose base chain reaches ``unittest.TestCase``, either
directly, through an import alias, or through other classes anywhere in the
scanned project. A *case* is a method of a suite whose name starts with
``test``.
"""

from __future__ import annotations

import logging
import os
from collections import defaultdict
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .frontend import Node, Span, SyntaxTree, dotted_name

log = logging.getLogger(__name__)

TESTCASE_BASES = frozenset(
    {
        "unittest.TestCase",
        "unittest.case.TestCase",
        "unittest.IsolatedAsyncioTestCase",
        "unittest.async_case.IsolatedAsyncioTestCase",
    }
)

# position of the ``msg`` parameter; methods absent here have no decidable message
MESSAGE_POSITION = {
    "assertTrue": 1,
    "assertFalse": 1,
    "assertIsNone": 1,
    "assertIsNotNone": 1,
    "assertEqual": 2,
    "assertNotEqual": 2,
    "assertIs": 2,
    "assertIsNot": 2,
    "assertIn": 2,
    "assertNotIn": 2,
    "assertLess": 2,
    "assertLessEqual": 2,
    "assertGreater": 2,
    "assertGreaterEqual": 2,
    "assertIsInstance": 2,
    "assertNotIsInstance": 2,
    "assertRegex": 2,
    "assertNotRegex": 2,
    "assertCountEqual": 2,
    "assertMultiLineEqual": 2,
    "assertSequenceEqual": 2,
    "assertListEqual": 2,
    "assertTupleEqual": 2,
    "assertSetEqual": 2,
    "assertDictEqual": 2,
    "assertDictContainsSubset": 2,
    # (first, second, places=None, msg=None, delta=None)
    "assertAlmostEqual": 3,
    "assertNotAlmostEqual": 3,
    "fail": 0,
}

VARIADIC_ASSERTS = frozenset(
    {
        "assertRaises",
        "assertRaisesRegex",
        "assertWarns",
        "assertWarnsRegex",
        "assertLogs",
        "assertNoLogs",
    }
)

# deprecated spellings kept by unittest (some removed in 3.12)
ASSERT_ALIASES = {
    "assertEquals": "assertEqual",
    "failUnlessEqual": "assertEqual",
    "assertNotEquals": "assertNotEqual",
    "failIfEqual": "assertNotEqual",
    "assert_": "assertTrue",
    "failUnless": "assertTrue",
    "failIf": "assertFalse",
    "assertAlmostEquals": "assertAlmostEqual",
    "failUnlessAlmostEqual": "assertAlmostEqual",
    "assertNotAlmostEquals": "assertNotAlmostEqual",
    "failIfAlmostEqual": "assertNotAlmostEqual",
    "assertRegexpMatches": "assertRegex",
    "assertNotRegexpMatches": "assertNotRegex",
    "assertRaisesRegexp": "assertRaisesRegex",
    "assertItemsEqual": "assertCountEqual",
    "failUnlessRaises": "assertRaises",
}


def canonical_assert(name: str) -> str:
    return ASSERT_ALIASES.get(name, name)


def is_assert_method(name: str) -> bool:
    return name.startswith("assert") or name == "fail" or name in ASSERT_ALIASES


# ---------------------------------------------------------------------------
# data model
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AssertionCall:
    form: str  # "unittest-method" | "bare-assert" | "fail-call"
    method: str
    args: tuple[Node, ...]
    arg_lexemes: tuple[str, ...]
    keywords: tuple[tuple[str | None, str], ...]
    keyword_nodes: tuple[tuple[str | None, Node], ...]
    has_message: bool
    message_known: bool
    span: Span
    node: Node

    @property
    def canonical(self) -> str:
        return canonical_assert(self.method)

    @property
    def checked_args(self) -> tuple[Node, ...]:
        """Positional arguments with the message removed."""
        if self.form == "bare-assert":
            return self.args[:1]
        pos = MESSAGE_POSITION.get(self.canonical)
        return self.args if pos is None else self.args[:pos]

    @property
    def checked_lexemes(self) -> tuple[str, ...]:
        return self.arg_lexemes[: len(self.checked_args)]

    @property
    def lexeme(self) -> str:
        if self.form == "bare-assert":
            return f"assert {self.arg_lexemes[0]}"
        return f"{self.method}({', '.join(self.arg_lexemes)})"


@dataclass(frozen=True)
class Fixture:
    kind: str
    fields: frozenset[str]
    span: Span


@dataclass(frozen=True, eq=False)
class TestCase:
    __test__ = False  # keep pytest from collecting this class

    name: str
    span: Span
    node: Node
    body: tuple[Node, ...]
    self_name: str
    assertions: tuple[AssertionCall, ...] = ()
    local_variable_names: frozenset[str] = frozenset()
    decorators: tuple[str, ...] = ()
    used_fixture_fields: frozenset[str] = frozenset()
    executable_statement_count: int = 0

    @property
    def body_span(self) -> Span:
        first, last = self.body[0].span, self.body[-1].span
        return Span(first.start_line, first.start_col, last.end_line, last.end_col)


@dataclass(frozen=True, eq=False)
class ModuleFacts:
    """Per-file facts needed to resolve suites across the project."""

    path: str
    module: str
    bindings: dict[str, tuple[tuple[int, str], ...]]
    star_imports: tuple[str, ...]
    # (qualname, name, line, base names)
    classes: tuple[tuple[str, str, int, tuple[str | None, ...]], ...]

    def resolve(self, dotted: str) -> set[str]:
        """Every fully qualified spelling ``dotted`` may refer to via imports."""
        head, _, rest = dotted.partition(".")
        bound = self.bindings.get(head)
        if not bound:
            return {dotted}
        return {q + ("." + rest if rest else "") for _, q in bound}


@dataclass(frozen=True, eq=False)
class ModuleInfo(ModuleFacts):
    """Module facts plus the parsed tree and comments of the file."""

    tree: SyntaxTree
    comments: dict[int, str]

    @property
    def facts(self) -> ModuleFacts:
        return ModuleFacts(self.path, self.module, self.bindings, self.star_imports, self.classes)


@dataclass(frozen=True, eq=False)
class TestSuite:
    __test__ = False

    path: str
    name: str
    line: int
    span: Span
    node: Node
    module: ModuleInfo
    base_chain: tuple[str, ...]
    decorators: tuple[str, ...]
    constructor_present: bool
    fixture: Fixture | None = None
    cases: tuple[TestCase, ...] = ()

    @property
    def qualified_name(self) -> str:
        return f"{self.path}::{self.name}"


@dataclass(frozen=True, eq=False)
class TestFile:
    __test__ = False

    path: str
    suites: tuple[TestSuite, ...]


@dataclass(frozen=True)
class ClassInfo:
    key: tuple[str, str, int]  # (path, qualname, line)
    name: str
    qualname: str
    path: str
    line: int
    base_names: tuple[str | None, ...]


@dataclass
class ClassIndex:
    classes: dict[tuple[str, str, int], ClassInfo] = field(default_factory=dict)
    modules: dict[str, ModuleFacts] = field(default_factory=dict)
    by_module: dict[str, list[str]] = field(default_factory=lambda: defaultdict(list))
    by_name: dict[str, list[tuple[str, str, int]]] = field(default_factory=lambda: defaultdict(list))
    by_path: dict[str, list[tuple[str, str, int]]] = field(default_factory=lambda: defaultdict(list))
    # filled by resolve(): class key -> chain of base names ending at unittest.TestCase
    chains: dict[tuple[str, str, int], tuple[str, ...]] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# discovery
# ---------------------------------------------------------------------------


def is_test_filename(name: str) -> bool:
    return name.endswith(".py") and "test" in name.lower()


def discover_test_files(root: str | Path, diagnostics: list[str] | None = None) -> list[Path]:
    """All ``.py`` files under ``root`` whose file name contains ``test``."""
    root = Path(root)

    def onerror(exc: OSError) -> None:
        msg = f"unreadable directory skipped: {exc.filename}"
        log.warning(msg)
        if diagnostics is not None:
            diagnostics.append(msg)

    found = []
    for dirpath, dirnames, filenames in os.walk(root, onerror=onerror):
        dirnames.sort()
        for name in filenames:
            if is_test_filename(name):
                found.append(Path(dirpath, name))
    return sorted(found, key=lambda p: p.relative_to(root).as_posix())


# ---------------------------------------------------------------------------
# class index
# ---------------------------------------------------------------------------


def module_name(path: str) -> str:
    parts = Path(path).with_suffix("").parts
    if parts and parts[-1] == "__init__":
        parts = parts[:-1]
    return ".".join(parts)


def module_info(tree: SyntaxTree, comments: dict[int, str] | None = None) -> ModuleInfo:
    bindings: dict[str, list[tuple[int, str]]] = defaultdict(list)
    stars = []
    for node in tree.nodes("import"):
        for alias, qualified in node["bindings"]:
            bindings[alias].append((node.span.start_line, qualified))
        if node["star"]:
            stars.append(node["module"])
    classes = tuple(
        (qualname, node["name"], node.span.start_line, node["base_names"]) for qualname, node in _iter_classes(tree.root)
    )
    return ModuleInfo(
        path=tree.path,
        module=module_name(tree.path),
        bindings={k: tuple(v) for k, v in bindings.items()},
        star_imports=tuple(stars),
        classes=classes,
        tree=tree,
        comments=comments if comments is not None else {},
    )


def _iter_classes(node: Node, prefix: str = "") -> Iterator[tuple[str, Node]]:
    for child in node.children:
        if child.category == "class-def":
            qualname = f"{prefix}{child['name']}"
            yield qualname, child
            yield from _iter_classes(child, qualname + ".")
        elif child.category == "function-def":
            yield from _iter_classes(child, f"{prefix}{child['name']}.<locals>.")
        else:
            yield from _iter_classes(child, prefix)


def build_class_index(modules: Iterable[ModuleFacts]) -> ClassIndex:
    """Index every class definition and import binding of the scan set."""
    index = ClassIndex()
    for info in modules:
        index.modules[info.path] = info
        index.by_module[info.module].append(info.path)
        for qualname, name, line, base_names in info.classes:
            key = (info.path, qualname, line)
            index.classes[key] = ClassInfo(key, name, qualname, info.path, line, base_names)
            index.by_name[name].append(key)
            index.by_path[info.path].append(key)
    _resolve(index)
    return index


_TERMINAL = ("<terminal>", "", 0)


class _Resolver:
    def __init__(self, index: ClassIndex) -> None:
        self.index = index

    def _relative(self, qualified: str, info: ModuleFacts) -> str:
        level = len(qualified) - len(qualified.lstrip("."))
        if not level:
            return qualified
        package = info.module.split(".") if info.module else []
        if not info.path.endswith("__init__.py"):
            package = package[:-1]
        package = package[: len(package) - (level - 1)] if level > 1 else package
        rest = qualified[level:]
        return ".".join([*package, rest]) if rest else ".".join(package)

    def _project_modules(self, dotted: str) -> list[str]:
        out = []
        for mod, paths in self.index.by_module.items():
            if mod == dotted or mod.endswith("." + dotted):
                out.extend(paths)
        return out

    def qualified(self, qualified: str, info: ModuleFacts, seen: frozenset = frozenset()) -> set:
        """Targets for a fully qualified (possibly relative) class name."""
        full = self._relative(qualified, info)
        if full in TESTCASE_BASES:
            return {_TERMINAL}
        if (full, info.path) in seen:
            return set()
        seen = seen | {(full, info.path)}
        parts = full.split(".")
        out: set = set()
        for i in range(len(parts) - 1, 0, -1):
            mod, cls = ".".join(parts[:i]), ".".join(parts[i:])
            for path in self._project_modules(mod):
                keys = [k for k in self.index.by_path[path] if k[1] == cls]
                if keys:
                    out.update(keys)
                else:
                    # re-exported through an import in that module
                    target = self.index.modules[path]
                    out |= self.name(cls, target, line=None, exclude=None, seen=seen, fallback=False)
            if out:
                break
        return out

    def name(
        self,
        dotted: str,
        info: ModuleFacts,
        line: int | None,
        exclude,
        seen: frozenset = frozenset(),
        fallback: bool = True,
    ) -> set:
        """Targets for a base expression as written inside ``info``."""
        head, _, rest = dotted.partition(".")
        candidates: list[tuple[int, object]] = [
            (ln, ("import", q)) for ln, q in info.bindings.get(head, ())
        ]
        for key in self.index.by_path[info.path]:
            if key != exclude and key[1] == head:
                candidates.append((key[2], ("class", key)))
        if line is not None:
            before = [c for c in candidates if c[0] < line]
            candidates = before or candidates
        if candidates:
            _, (kind, value) = max(candidates, key=lambda c: c[0])
            if kind == "import":
                return self.qualified(value + ("." + rest if rest else ""), info, seen)
            if not rest:
                return {value}
            nested = f"{value[1]}.{rest}"
            return {k for k in self.index.by_path[info.path] if k[1] == nested}
        out = self.qualified(dotted, info, seen)
        if out:
            return out
        for star in info.star_imports:
            out |= self.qualified(f"{star}.{dotted}", info, seen)
        if out or not fallback:
            return out
        return {k for k in self.index.by_name.get(dotted.rpartition(".")[2], ()) if k != exclude}


def _resolve(index: ClassIndex) -> None:
    resolver = _Resolver(index)
    targets: dict[tuple, list[tuple[str, set]]] = {}
    for key, cls in index.classes.items():
        info = index.modules[cls.path]
        per_base = []
        for base in cls.base_names:
            if base is None:
                continue
            per_base.append((base, resolver.name(base, info, cls.line, key)))
        targets[key] = per_base

    chains: dict[tuple, tuple[str, ...]] = {}
    changed = True
    while changed:
        changed = False
        for key, per_base in targets.items():
            if key in chains:
                continue
            for base, tset in per_base:
                if _TERMINAL in tset:
                    chains[key] = ("unittest.TestCase",)
                    break
                hit = sorted(t for t in tset if t in chains)
                if hit:
                    chains[key] = (index.classes[hit[0]].qualname, *chains[hit[0]])
                    break
            if key in chains:
                changed = True
    index.chains = chains

    unresolved = {k for k in targets if k not in chains}
    edges = {k: {t for _, ts in targets[k] for t in ts if t in unresolved} for k in unresolved}
    for key in sorted(unresolved):
        stack, seen = list(edges[key]), set()
        while stack:
            cur = stack.pop()
            if cur == key:
                index.diagnostics.append(f"cyclic inheritance involving {key[0]}::{key[1]} excluded")
                break
            if cur not in seen:
                seen.add(cur)
                stack.extend(edges[cur])


# ---------------------------------------------------------------------------
# suites, cases, fixtures, assertions
# ---------------------------------------------------------------------------


def resolve_test_suites(info: ModuleInfo, index: ClassIndex | Mapping[tuple[str, str, int], tuple[str, ...]]) -> list[TestSuite]:
    """Suites defined in ``info`` with all fixtures and cases extracted.

    ``index`` may be the project :class:`ClassIndex` or just its ``chains``.
    """
    chains = index.chains if isinstance(index, ClassIndex) else index
    suites = []
    for qualname, node in _iter_classes(info.tree.root):
        chain = chains.get((info.path, qualname, node.span.start_line))
        if chain is None:
            continue
        methods = [n for n in node["body"] if n.category == "function-def"]
        suite = TestSuite(
            path=info.path,
            name=node["name"],
            line=node.span.start_line,
            span=node.span,
            node=node,
            module=info,
            base_chain=chain,
            decorators=tuple(d["name"] for d in node["decorators"]),
            constructor_present=any(m["name"] == "__init__" for m in methods),
        )
        suite = replace(suite, fixture=extract_fixture(suite))
        suite = replace(suite, cases=tuple(extract_test_cases(suite)))
        suites.append(suite)
    return suites


def _methods(suite: TestSuite) -> list[Node]:
    return [n for n in suite.node["body"] if n.category == "function-def"]


def _self_name(method: Node) -> str:
    params = method["params"]
    return params[0] if params else "self"


def _is_self_attr(node: Node, self_name: str) -> bool:
    return node.kind == "Attribute" and node["value"].kind == "Name" and node["value"]["id"] == self_name


def _target_names(target: Node) -> Iterator[Node]:
    """Name and self-attribute leaves of an assignment target."""
    if target.kind in ("Tuple", "List"):
        for elt in target["elts"]:
            yield from _target_names(elt)
    elif target.kind == "Starred":
        yield from _target_names(target["value"])
    elif target.kind in ("Name", "Attribute"):
        yield target


def _walk_scope(nodes: Iterable[Node]) -> Iterator[Node]:
    """Walk statements without entering nested function, class or lambda scopes."""
    stack = list(reversed(list(nodes)))
    while stack:
        node = stack.pop()
        yield node
        if node.category in ("function-def", "class-def") or node.kind == "Lambda":
            continue
        stack.extend(reversed(node.children))


def _walk_all(nodes: Iterable[Node]) -> Iterator[Node]:
    for node in nodes:
        yield from node.walk()


def extract_fixture(suite: TestSuite) -> Fixture | None:
    """Fields assigned on ``self`` inside the suite's own ``setUp``."""
    setup = [m for m in _methods(suite) if m["name"] == "setUp"]
    if not setup:
        return None
    method = setup[-1]
    self_name = _self_name(method)
    fields = set()
    for node in _walk_scope(method["body"]):
        if node.category == "assignment":
            for target in node["targets"]:
                for leaf in _target_names(target):
                    if _is_self_attr(leaf, self_name):
                        fields.add(leaf["attr"])
    return Fixture("setUp", frozenset(fields), method.span)


def extract_test_cases(suite: TestSuite) -> list[TestCase]:
    """``test*`` methods of the suite in source order, fully populated."""
    cases = []
    for method in _methods(suite):
        if not method["name"].startswith("test"):
            continue
        body = tuple(method["body"])
        self_name = _self_name(method)
        case = TestCase(
            name=method["name"],
            span=method.span,
            node=method,
            body=body,
            self_name=self_name,
            decorators=tuple(d["name"] for d in method["decorators"]),
            local_variable_names=_local_names(body),
            used_fixture_fields=frozenset(
                n["attr"] for n in _walk_all(body) if _is_self_attr(n, self_name) and n["ctx"] == "Load"
            ),
            executable_statement_count=sum(1 for s in body if _is_executable(s)),
        )
        cases.append(replace(case, assertions=tuple(extract_assertions(case, suite.module.tree))))
    return cases


def _is_executable(stmt: Node) -> bool:
    if stmt.category in ("docstring", "pass-stmt"):
        return False
    if stmt.category == "expression-stmt":
        value = stmt["value"]
        return not (value.category == "literal" and value["literal_kind"] == "ellipsis")
    return True


def _local_names(body: tuple[Node, ...]) -> frozenset[str]:
    names = set()
    for node in _walk_scope(body):
        if node.category == "assignment":
            targets = node["targets"]
        elif node.category == "for-stmt":
            targets = (node["target"],)
        elif node.kind in ("With", "AsyncWith"):
            targets = node["targets"]
        else:
            continue
        for target in targets:
            for leaf in _target_names(target):
                if leaf.kind == "Name":
                    names.add(leaf["id"])
    return frozenset(names)


def extract_assertions(case: TestCase, tree: SyntaxTree) -> list[AssertionCall]:
    """Every ``self.assert*``/``self.fail`` call and ``assert`` statement, in source order."""
    out = []
    for node in _walk_all(case.body):
        if node.category == "assert-stmt":
            test, msg = node["test"], node["msg"]
            out.append(
                AssertionCall(
                    form="bare-assert",
                    method="",
                    args=(test,) + ((msg,) if msg is not None else ()),
                    arg_lexemes=(tree.lexeme(test),) + ((tree.lexeme(msg),) if msg is not None else ()),
                    keywords=(),
                    keyword_nodes=(),
                    has_message=msg is not None,
                    message_known=True,
                    span=node.span,
                    node=node,
                )
            )
            continue
        if node.category != "call":
            continue
        func = node["func"]
        if not (_is_self_attr(func, case.self_name) and is_assert_method(func["attr"])):
            continue
        method = func["attr"]
        canonical = canonical_assert(method)
        args = node["args"]
        keywords = node["keywords"]
        pos = MESSAGE_POSITION.get(canonical)
        has_star = any(a.kind == "Starred" for a in args)
        if any(k == "msg" for k, _ in keywords):
            has_message = True
        elif pos is not None and not has_star:
            has_message = len(args) > pos
        else:
            has_message = False
        out.append(
            AssertionCall(
                form="fail-call" if canonical == "fail" else "unittest-method",
                method=method,
                args=args,
                arg_lexemes=tuple(tree.lexeme(a) for a in args),
                keywords=tuple((k, tree.lexeme(v)) for k, v in keywords),
                keyword_nodes=tuple(keywords),
                has_message=has_message,
                message_known=pos is not None and not has_star,
                span=node.span,
                node=node,
            )
        )
    return out


def build_test_files(modules: Iterable[ModuleInfo], index: ClassIndex) -> list[TestFile]:
    return [TestFile(m.path, tuple(resolve_test_suites(m, index))) for m in modules]
