"""Python source frontend.

Turns source text into a shallow tree of syntax facts (:class:`Node`) that the
rest of the package works on, plus a line-indexed map of ``#`` comments, which
the abstract syntax tree drops.
"""

from __future__ import annotations

import ast
import io
import logging
import re
import tokenize
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator, Mapping

log = logging.getLogger(__name__)

CATEGORIES = frozenset(
    {
        "class-def",
        "function-def",
        "assignment",
        "call",
        "comparison",
        "literal",
        "decorator",
        "import",
        "raise-stmt",
        "try-stmt",
        "if-stmt",
        "for-stmt",
        "while-stmt",
        "assert-stmt",
        "pass-stmt",
        "expression-stmt",
        "docstring",
        "other",
    }
)

_COMPARE_OPS = {
    ast.Eq: "==",
    ast.NotEq: "!=",
    ast.Lt: "<",
    ast.LtE: "<=",
    ast.Gt: ">",
    ast.GtE: ">=",
    ast.Is: "is",
    ast.IsNot: "is not",
    ast.In: "in",
    ast.NotIn: "not in",
}

_NEWLINE = re.compile(r"\r\n|\r|\n")

_UNARY_OPS = {ast.UAdd: "+", ast.USub: "-", ast.Not: "not", ast.Invert: "~"}


class SourceSyntaxError(Exception):
    """Raised when a file cannot be parsed as Python 3."""

    def __init__(self, path: str, line: int, column: int, message: str) -> None:
        super().__init__(f"{path}:{line}:{column}: {message}")
        self.path = path
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True, order=True)
class Span:
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def contains(self, other: Span) -> bool:
        return (self.start_line, self.start_col) <= (other.start_line, other.start_col) and (
            other.end_line,
            other.end_col,
        ) <= (self.end_line, self.end_col)

    def to_dict(self) -> dict[str, int]:
        return {
            "start_line": self.start_line,
            "start_col": self.start_col,
            "end_line": self.end_line,
            "end_col": self.end_col,
        }


@dataclass(frozen=True, eq=False)
class Node:
    """One syntax fact.

    ``category`` is one of :data:`CATEGORIES`; ``kind`` names the concrete
    construct (``"Name"``, ``"Attribute"``, ``"With"``...) so that nodes in the
    ``other`` category stay distinguishable. ``attrs`` holds category-specific
    facts; node-valued attributes point at entries of ``children``.
    """

    category: str
    kind: str
    span: Span
    children: tuple[Node, ...] = ()
    attrs: Mapping[str, Any] = field(default_factory=dict)

    def __getitem__(self, key: str) -> Any:
        return self.attrs[key]

    def get(self, key: str, default: Any = None) -> Any:
        return self.attrs.get(key, default)

    def walk(self) -> Iterator[Node]:
        """Pre-order traversal, source order, including ``self``."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def __repr__(self) -> str:
        name = self.attrs.get("name") or self.attrs.get("id") or self.attrs.get("callee") or ""
        return f"Node({self.category}/{self.kind} {name!s} @{self.span.start_line}:{self.span.start_col})"


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str
    parse_status: str = "unparsed"  # "parsed" | "syntax_error" | "unparsed"
    error: SourceSyntaxError | None = None


@dataclass(frozen=True, eq=False)
class SyntaxTree:
    path: str
    text: str
    root: Node
    lines: tuple[str, ...]

    def segment(self, node_or_span: Node | Span) -> str:
        """Raw source text covered by a node or span."""
        span = node_or_span.span if isinstance(node_or_span, Node) else node_or_span
        if span.start_line == span.end_line:
            return self.lines[span.start_line - 1][span.start_col : span.end_col]
        parts = [self.lines[span.start_line - 1][span.start_col :]]
        parts.extend(self.lines[span.start_line : span.end_line - 1])
        parts.append(self.lines[span.end_line - 1][: span.end_col])
        return "\n".join(parts)

    def lexeme(self, node: Node) -> str:
        """Whitespace-normalized source text of ``node``."""
        return normalize_lexeme(self.segment(node))

    def nodes(self, category: str | None = None) -> Iterator[Node]:
        for node in self.root.walk():
            if category is None or node.category == category:
                yield node


def read_source(path: str | Path, root: str | Path | None = None) -> SourceFile:
    """Read a file as UTF-8, falling back to latin-1."""
    path = Path(path)
    rel = path.relative_to(root).as_posix() if root is not None else path.as_posix()
    data = path.read_bytes()
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError:
        log.warning("%s is not valid UTF-8, decoding as latin-1", rel)
        text = data.decode("latin-1")
    return SourceFile(rel, text)


def parse_source(file: SourceFile) -> SyntaxTree:
    """Parse ``file`` into a :class:`SyntaxTree`.

    Raises :class:`SourceSyntaxError` for anything that is not valid Python 3,
    including files with null bytes.
    """
    try:
        module = ast.parse(file.text, filename=file.path)
    except SyntaxError as exc:
        raise SourceSyntaxError(file.path, exc.lineno or 1, exc.offset or 0, exc.msg) from None
    except (ValueError, RecursionError, MemoryError) as exc:
        raise SourceSyntaxError(file.path, 1, 0, str(exc)) from None
    lines = tuple(_NEWLINE.split(file.text))
    builder = _Builder(lines)
    return SyntaxTree(file.path, file.text, builder.module(module), lines)


def extract_comments(file: SourceFile | str) -> dict[int, str]:
    """Map each line number to the text of the ``#`` comment on it.

    Lexical, so it works on files that fail to parse: tokens are consumed up to
    the first tokenizer error.
    """
    text = file.text if isinstance(file, SourceFile) else file
    comments: dict[int, str] = {}
    try:
        for tok in tokenize.generate_tokens(io.StringIO(text).readline):
            if tok.type == tokenize.COMMENT:
                comments[tok.start[0]] = tok.string[1:].strip()
    except (tokenize.TokenError, IndentationError, SyntaxError):
        pass
    return comments


def normalize_lexeme(text: str) -> str:
    """Canonical token spelling of an expression: tokens joined by one space."""
    try:
        toks = [
            t.string
            for t in tokenize.generate_tokens(io.StringIO("(" + text + ")").readline)
            if t.type
            not in (
                tokenize.NL,
                tokenize.NEWLINE,
                tokenize.COMMENT,
                tokenize.INDENT,
                tokenize.DEDENT,
                tokenize.ENDMARKER,
            )
        ]
    except (tokenize.TokenError, IndentationError, SyntaxError):
        return " ".join(text.split())
    return " ".join(toks[1:-1])


def dotted_name(node: Node) -> str | None:
    """``a.b.c`` for a chain of Name/Attribute nodes, else None."""
    parts = []
    while node.kind == "Attribute":
        parts.append(node["attr"])
        node = node["value"]
    if node.kind != "Name":
        return None
    parts.append(node["id"])
    return ".".join(reversed(parts))


class _Builder:
    """Converts :mod:`ast` nodes into :class:`Node` facts."""

    def __init__(self, lines: tuple[str, ...]) -> None:
        self.lines = lines
        self._ascii = [line.isascii() for line in lines]

    # spans ------------------------------------------------------------------

    def _col(self, line: int, byte_col: int) -> int:
        if line - 1 >= len(self._ascii) or self._ascii[line - 1]:
            return byte_col
        raw = self.lines[line - 1].encode("utf-8")
        return len(raw[:byte_col].decode("utf-8", errors="replace"))

    def span(self, node: ast.AST) -> Span:
        end_line = getattr(node, "end_lineno", None) or node.lineno
        end_col = getattr(node, "end_col_offset", None)
        if end_col is None:
            end_col = node.col_offset
        return Span(
            node.lineno,
            self._col(node.lineno, node.col_offset),
            end_line,
            self._col(end_line, end_col),
        )

    # conversion -------------------------------------------------------------

    def module(self, module: ast.Module) -> Node:
        body = self.body(module.body)
        last = len(self.lines)
        span = Span(1, 0, last, len(self.lines[-1]) if self.lines else 0)
        return Node("other", "Module", span, body, {"body": body})

    def body(self, stmts: list[ast.stmt]) -> tuple[Node, ...]:
        out = []
        for i, stmt in enumerate(stmts):
            if (
                i == 0
                and isinstance(stmt, ast.Expr)
                and isinstance(stmt.value, ast.Constant)
                and isinstance(stmt.value.value, str)
            ):
                lit = self.convert(stmt.value)
                out.append(Node("docstring", "Expr", self.span(stmt), (lit,), {"value": lit}))
            else:
                out.append(self.convert(stmt))
        return tuple(out)

    def convert(self, node: ast.AST, frozen_span: Span | None = None) -> Node:
        method = getattr(self, "_" + type(node).__name__, None)
        if method is not None:
            return method(node, frozen_span)
        return self._generic(node, frozen_span)

    def _children(self, node: ast.AST, frozen_span: Span | None) -> list[Node]:
        out: list[Node] = []
        for child in ast.iter_child_nodes(node):
            if isinstance(child, (ast.expr_context, ast.operator, ast.unaryop, ast.cmpop, ast.boolop)):
                continue
            if hasattr(child, "lineno"):
                out.append(self.convert(child, frozen_span))
            else:
                # arguments, comprehension, withitem, match_case: lift their children
                out.extend(self._children(child, frozen_span))
        out.sort(key=lambda n: (n.span.start_line, n.span.start_col))
        return out

    def _make(
        self,
        category: str,
        node: ast.AST,
        frozen_span: Span | None,
        children: list[Node] | tuple[Node, ...],
        attrs: dict[str, Any],
        span: Span | None = None,
    ) -> Node:
        if frozen_span is not None:
            span = frozen_span
        elif span is None:
            span = self.span(node)
        return Node(category, type(node).__name__, span, tuple(children), attrs)

    def _generic(self, node: ast.AST, frozen_span: Span | None) -> Node:
        return self._make("other", node, frozen_span, self._children(node, frozen_span), {})

    # definitions

    def _decorated_span(self, node: ast.AST, decorators: list[Node], frozen_span: Span | None) -> Span:
        span = frozen_span or self.span(node)
        if decorators and frozen_span is None:
            first = decorators[0].span
            span = Span(first.start_line, first.start_col, span.end_line, span.end_col)
        return span

    def _decorators(self, exprs: list[ast.expr], frozen_span: Span | None) -> list[Node]:
        out = []
        for expr in exprs:
            inner = self.convert(expr, frozen_span)
            target = inner["func"] if inner.category == "call" else inner
            name = dotted_name(target) or ""
            out.append(
                self._make("decorator", expr, frozen_span, [inner], {"name": name, "expr": inner})
            )
        return out

    def _ClassDef(self, node: ast.ClassDef, frozen_span: Span | None) -> Node:
        decorators = self._decorators(node.decorator_list, frozen_span)
        bases = [self.convert(b, frozen_span) for b in node.bases]
        keywords = [self.convert(k, frozen_span) for k in node.keywords]
        body = self.body(node.body)
        attrs = {
            "name": node.name,
            "bases": tuple(bases),
            "base_names": tuple(dotted_name(b) for b in bases),
            "decorators": tuple(decorators),
            "body": body,
        }
        return self._make(
            "class-def",
            node,
            frozen_span,
            [*decorators, *bases, *keywords, *body],
            attrs,
            span=self._decorated_span(node, decorators, frozen_span),
        )

    def _FunctionDef(self, node: ast.FunctionDef | ast.AsyncFunctionDef, frozen_span: Span | None) -> Node:
        decorators = self._decorators(node.decorator_list, frozen_span)
        a = node.args
        params = tuple(
            p.arg for p in [*a.posonlyargs, *a.args, *([a.vararg] if a.vararg else []), *a.kwonlyargs, *([a.kwarg] if a.kwarg else [])]
        )
        signature = self._children(node.args, frozen_span)
        returns = [self.convert(node.returns, frozen_span)] if node.returns else []
        body = self.body(node.body)
        attrs = {
            "name": node.name,
            "params": params,
            "decorators": tuple(decorators),
            "body": body,
            "is_async": isinstance(node, ast.AsyncFunctionDef),
        }
        return self._make(
            "function-def",
            node,
            frozen_span,
            [*decorators, *signature, *returns, *body],
            attrs,
            span=self._decorated_span(node, decorators, frozen_span),
        )

    _AsyncFunctionDef = _FunctionDef

    # statements

    def _assignment(self, node: ast.AST, frozen_span: Span | None, targets: list[ast.expr], value: ast.expr | None) -> Node:
        target_nodes = [self.convert(t, frozen_span) for t in targets]
        extra = []
        if isinstance(node, ast.AnnAssign):
            extra.append(self.convert(node.annotation, frozen_span))
        value_node = self.convert(value, frozen_span) if value is not None else None
        children = [*target_nodes, *extra, *([value_node] if value_node else [])]
        children.sort(key=lambda n: (n.span.start_line, n.span.start_col))
        attrs = {"targets": tuple(target_nodes), "value": value_node, "augmented": isinstance(node, ast.AugAssign)}
        return self._make("assignment", node, frozen_span, children, attrs)

    def _Assign(self, node: ast.Assign, frozen_span: Span | None) -> Node:
        return self._assignment(node, frozen_span, node.targets, node.value)

    def _AnnAssign(self, node: ast.AnnAssign, frozen_span: Span | None) -> Node:
        return self._assignment(node, frozen_span, [node.target], node.value)

    def _AugAssign(self, node: ast.AugAssign, frozen_span: Span | None) -> Node:
        return self._assignment(node, frozen_span, [node.target], node.value)

    def _Import(self, node: ast.Import, frozen_span: Span | None) -> Node:
        bindings = []
        for alias in node.names:
            if alias.asname:
                bindings.append((alias.asname, alias.name))
            else:
                head = alias.name.split(".")[0]
                bindings.append((head, head))
        return self._make("import", node, frozen_span, [], {"module": "", "level": 0, "bindings": tuple(bindings), "star": False})

    def _ImportFrom(self, node: ast.ImportFrom, frozen_span: Span | None) -> Node:
        module = node.module or ""
        prefix = "." * (node.level or 0) + module
        bindings = []
        star = False
        for alias in node.names:
            if alias.name == "*":
                star = True
                continue
            qualified = f"{prefix}.{alias.name}" if module else f"{prefix}{alias.name}"
            bindings.append((alias.asname or alias.name, qualified))
        return self._make(
            "import", node, frozen_span, [], {"module": prefix, "level": node.level or 0, "bindings": tuple(bindings), "star": star}
        )

    def _Raise(self, node: ast.Raise, frozen_span: Span | None) -> Node:
        return self._make("raise-stmt", node, frozen_span, self._children(node, frozen_span), {})

    def _Try(self, node: ast.Try, frozen_span: Span | None) -> Node:
        return self._make("try-stmt", node, frozen_span, self._children(node, frozen_span), {})

    _TryStar = _Try

    def _If(self, node: ast.If, frozen_span: Span | None) -> Node:
        return self._make("if-stmt", node, frozen_span, self._children(node, frozen_span), {})

    def _For(self, node: ast.For | ast.AsyncFor, frozen_span: Span | None) -> Node:
        target = self.convert(node.target, frozen_span)
        it = self.convert(node.iter, frozen_span)
        stmts = [self.convert(s, frozen_span) for s in [*node.body, *node.orelse]]
        return self._make("for-stmt", node, frozen_span, [target, it, *stmts], {"target": target})

    _AsyncFor = _For

    def _While(self, node: ast.While, frozen_span: Span | None) -> Node:
        return self._make("while-stmt", node, frozen_span, self._children(node, frozen_span), {})

    def _Assert(self, node: ast.Assert, frozen_span: Span | None) -> Node:
        test = self.convert(node.test, frozen_span)
        msg = self.convert(node.msg, frozen_span) if node.msg is not None else None
        return self._make("assert-stmt", node, frozen_span, [test, *([msg] if msg else [])], {"test": test, "msg": msg})

    def _Pass(self, node: ast.Pass, frozen_span: Span | None) -> Node:
        return self._make("pass-stmt", node, frozen_span, [], {})

    def _Expr(self, node: ast.Expr, frozen_span: Span | None) -> Node:
        value = self.convert(node.value, frozen_span)
        return self._make("expression-stmt", node, frozen_span, [value], {"value": value})

    def _With(self, node: ast.With | ast.AsyncWith, frozen_span: Span | None) -> Node:
        children: list[Node] = []
        targets: list[Node] = []
        for item in node.items:
            children.append(self.convert(item.context_expr, frozen_span))
            if item.optional_vars is not None:
                var = self.convert(item.optional_vars, frozen_span)
                targets.append(var)
                children.append(var)
        children.extend(self.convert(s, frozen_span) for s in node.body)
        return self._make("other", node, frozen_span, children, {"targets": tuple(targets)})

    _AsyncWith = _With

    # expressions

    def _Call(self, node: ast.Call, frozen_span: Span | None) -> Node:
        func = self.convert(node.func, frozen_span)
        args = tuple(self.convert(a, frozen_span) for a in node.args)
        keywords = []
        kw_nodes = []
        for kw in node.keywords:
            value = self.convert(kw.value, frozen_span)
            keywords.append((kw.arg, value))
            kw_nodes.append(value)
        name = dotted_name(func)
        if func.kind == "Attribute":
            callee = func["attr"]
            receiver = dotted_name(func["value"]) or ""
        elif func.kind == "Name":
            callee, receiver = func["id"], ""
        else:
            callee, receiver = "", ""
        children = sorted([func, *args, *kw_nodes], key=lambda n: (n.span.start_line, n.span.start_col))
        attrs = {
            "func": func,
            "name": name,
            "callee": callee,
            "receiver": receiver,
            "args": args,
            "keywords": tuple(keywords),
        }
        return self._make("call", node, frozen_span, children, attrs)

    def _Compare(self, node: ast.Compare, frozen_span: Span | None) -> Node:
        operands = tuple(self.convert(x, frozen_span) for x in [node.left, *node.comparators])
        ops = tuple(_COMPARE_OPS[type(op)] for op in node.ops)
        return self._make("comparison", node, frozen_span, list(operands), {"ops": ops, "operands": operands})

    def _Constant(self, node: ast.Constant, frozen_span: Span | None) -> Node:
        value = node.value
        if value is None:
            lit_kind = "none"
        elif isinstance(value, bool):
            lit_kind = "bool"
        elif isinstance(value, int):
            lit_kind = "int"
        elif isinstance(value, float):
            lit_kind = "float"
        elif isinstance(value, complex):
            lit_kind = "complex"
        elif isinstance(value, str):
            lit_kind = "str"
        elif isinstance(value, bytes):
            lit_kind = "bytes"
        else:
            lit_kind = "ellipsis"
        return self._make("literal", node, frozen_span, [], {"literal_kind": lit_kind, "value": value})

    def _JoinedStr(self, node: ast.JoinedStr, frozen_span: Span | None) -> Node:
        # positions inside f-strings are unreliable before 3.12; pin them to the literal
        span = frozen_span or self.span(node)
        return self._make("literal", node, frozen_span, self._children(node, span), {"literal_kind": "fstring", "value": None}, span=span)

    def _Name(self, node: ast.Name, frozen_span: Span | None) -> Node:
        return self._make("other", node, frozen_span, [], {"id": node.id, "ctx": type(node.ctx).__name__})

    def _Attribute(self, node: ast.Attribute, frozen_span: Span | None) -> Node:
        value = self.convert(node.value, frozen_span)
        return self._make("other", node, frozen_span, [value], {"attr": node.attr, "value": value, "ctx": type(node.ctx).__name__})

    def _UnaryOp(self, node: ast.UnaryOp, frozen_span: Span | None) -> Node:
        operand = self.convert(node.operand, frozen_span)
        return self._make("other", node, frozen_span, [operand], {"op": _UNARY_OPS[type(node.op)], "operand": operand})

    def _Starred(self, node: ast.Starred, frozen_span: Span | None) -> Node:
        value = self.convert(node.value, frozen_span)
        return self._make("other", node, frozen_span, [value], {"value": value})

    def _Tuple(self, node: ast.Tuple | ast.List, frozen_span: Span | None) -> Node:
        elts = tuple(self.convert(e, frozen_span) for e in node.elts)
        return self._make("other", node, frozen_span, list(elts), {"elts": elts})

    _List = _Tuple
