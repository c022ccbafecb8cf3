import keyword
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smellscan.frontend import (
    CATEGORIES,
    SourceFile,
    SourceSyntaxError,
    extract_comments,
    normalize_lexeme,
    parse_source,
    read_source,
)

CORPUS = Path(__file__).parent / "fixtures" / "corpus"


def parse(text: str, path: str = "test_x.py"):
    return parse_source(SourceFile(path, text))


def test_minimal_class():
    tree = parse("class T: pass")
    classes = list(tree.nodes("class-def"))
    assert [c["name"] for c in classes] == ["T"]


def test_malformed_input_reports_line():
    with pytest.raises(SourceSyntaxError) as info:
        parse("def f(:")
    assert info.value.line == 1


def test_python2_print_is_a_syntax_error():
    with pytest.raises(SourceSyntaxError):
        parse('print "legacy"\n')


def test_null_bytes_are_a_syntax_error():
    with pytest.raises(SourceSyntaxError):
        parse("x = 1\0\n")


THREE_SUITES = '''\
import unittest


class A(unittest.TestCase):
    def test_a(self):
        pass


class B(unittest.TestCase):
    pass


class C(B):
    pass
'''


def test_three_suite_file_has_three_top_level_class_defs():
    tree = parse(THREE_SUITES)
    assert [c["name"] for c in tree.nodes("class-def")] == ["A", "B", "C"]


def test_every_node_category_is_known():
    for path in CORPUS.rglob("test_*.py"):
        if path.name == "test_python2.py":
            continue
        tree = parse(path.read_text(encoding="utf-8"), path.name)
        assert {n.category for n in tree.nodes()} <= CATEGORIES


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x = 1  # note", {1: "note"}),
        ("s = '# not a comment'", {}),
        ('s = """\n# inside a string\n"""', {}),
        ("# top\nx = 1\n\n    # indented, dangling\n", {1: "top", 4: "indented, dangling"}),
    ],
)
def test_extract_comments(text, expected):
    assert extract_comments(text) == expected


def test_extract_comments_counts_hand_placed_comments():
    text = (
        "# header\n"
        "import time  # needed for sleep\n"
        "\n"
        "def f():\n"
        "    s = '# not this one'\n"
        "    # before the sleep\n"
        "    time.sleep(1)  # wait for it\n"
    )
    assert extract_comments(text) == {1: "header", 2: "needed for sleep", 6: "before the sleep", 7: "wait for it"}


def test_comments_survive_a_syntax_error_later_in_the_file():
    assert extract_comments("# fine\nx = (\n") == {1: "fine"}


def _corpus_trees():
    for path in sorted(CORPUS.rglob("*.py")):
        if path.name != "test_python2.py":
            yield parse(path.read_text(encoding="utf-8"), path.name)


def test_child_spans_nest_inside_parents():
    for tree in _corpus_trees():
        for node in tree.nodes():
            for child in node.children:
                assert node.span.contains(child.span), (tree.path, node, child)


def test_spans_reproduce_names():
    for tree in _corpus_trees():
        for node in tree.nodes():
            text = tree.segment(node)
            if node.category in ("class-def", "function-def"):
                assert f"{'class' if node.category == 'class-def' else 'def'} {node['name']}" in text
            elif node.category == "call" and node["callee"]:
                assert node["callee"] in text
            elif node.category == "other" and node.kind == "Name":
                assert text == node["id"]


def test_columns_count_characters_not_bytes():
    tree = parse('x = "héllo"; y = 1\n')
    literal = next(n for n in tree.nodes("literal") if n["value"] == 1)
    assert tree.segment(literal) == "1"
    assert literal.span.start_col == len('x = "héllo"; y = ')


@pytest.mark.parametrize("newline", ["\n", "\r\n", "\r"])
def test_line_numbers_follow_the_file_newlines(newline):
    tree = parse(newline.join(["a = 1", "\f", "b = 2", ""]))
    literal = next(n for n in tree.nodes("literal") if n["value"] == 2)
    assert literal.span.start_line == 3
    assert tree.segment(literal) == "2"


def test_decorator_widens_function_span():
    tree = parse("@wrap\ndef f():\n    pass\n")
    func = next(tree.nodes("function-def"))
    assert func.span.start_line == 1
    assert [d["name"] for d in func["decorators"]] == ["wrap"]


def test_docstrings_and_literals():
    tree = parse('def f():\n    """Doc."""\n    return None\n')
    assert [n.category for n in next(tree.nodes("function-def"))["body"]][0] == "docstring"
    kinds = {n["literal_kind"] for n in parse("a = (None, True, 1, 1.5, 2j, 's', b'b', ..., f'{a}')").nodes("literal")}
    assert kinds >= {"none", "bool", "int", "float", "complex", "str", "bytes", "ellipsis", "fstring"}


def test_read_source_falls_back_to_latin1(tmp_path, caplog):
    path = tmp_path / "test_legacy.py"
    path.write_bytes(b"# caf\xe9\nx = 1\n")
    source = read_source(path, tmp_path)
    assert source.path == "test_legacy.py"
    assert source.text.startswith("# café")
    assert "latin-1" in caplog.text


def test_read_source_strips_utf8_bom(tmp_path):
    path = tmp_path / "test_bom.py"
    path.write_bytes(b"\xef\xbb\xbfx = 1\n")
    assert read_source(path).text == "x = 1\n"


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("a  ,b", "a , b"),
        ("f( x ,\n   y )", "f ( x , y )"),
        ("obj.parent ,  obj.parent", "obj . parent , obj . parent"),
        ("'a  b'", "'a  b'"),
    ],
)
def test_normalize_lexeme(raw, expected):
    assert normalize_lexeme(raw) == expected


identifiers = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,12}", fullmatch=True).filter(lambda s: not keyword.iskeyword(s))


@given(st.lists(identifiers, min_size=1, max_size=6, unique=True))
def test_class_names_round_trip(names):
    text = "\n\n".join(f"class {n}(Base):\n    attr = {i}\n" for i, n in enumerate(names))
    tree = parse(text)
    classes = list(tree.nodes("class-def"))
    assert [c["name"] for c in classes] == names
    for c in classes:
        assert tree.segment(c).startswith(f"class {c['name']}(")
