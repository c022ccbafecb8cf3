"""Textual cohesion between test cases.

Each case body becomes a term-frequency vector of lowercase word parts drawn
from identifiers and string literals; cohesion of a suite is the mean cosine
similarity over all unordered pairs of its cases.
"""

from __future__ import annotations

import io
import keyword
import math
import re
import tokenize
from collections import Counter
from itertools import combinations
from typing import Iterable

from .frontend import SyntaxTree
from .model import TestCase

_PARTS = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|\d+|[^\W\d_A-Za-z]+")
_STRING = re.compile(r"^[A-Za-z]*('''|\"\"\"|'|\")(.*)\1$", re.DOTALL)
_WORD = re.compile(r"[^\W_]+")


def split_identifier(name: str) -> list[str]:
    """``parseHTTPResponse_v2`` -> ``['parse', 'http', 'response', 'v', '2']``."""
    return [p.lower() for chunk in name.split("_") for p in _PARTS.findall(chunk)]


def string_words(literal: str) -> list[str]:
    m = _STRING.match(literal)
    content = m.group(2) if m else literal
    return [p for word in _WORD.findall(content) for p in split_identifier(word)]


def terms(source: str) -> Counter[str]:
    """Term frequencies of a code fragment."""
    counts: Counter[str] = Counter()
    try:
        for tok in tokenize.generate_tokens(io.StringIO(source).readline):
            if tok.type == tokenize.NAME and not keyword.iskeyword(tok.string):
                counts.update(split_identifier(tok.string))
            elif tok.type == tokenize.STRING:
                counts.update(string_words(tok.string))
    except (tokenize.TokenError, IndentationError, SyntaxError):
        counts = Counter(p for w in _WORD.findall(source) for p in split_identifier(w) if not keyword.iskeyword(w))
    return counts


def case_terms(case: TestCase, tree: SyntaxTree) -> Counter[str]:
    span = case.body_span
    return terms(" " * span.start_col + tree.segment(span))


def cosine(a: Counter[str], b: Counter[str]) -> float:
    """Cosine similarity; 0.0 when either vector is empty."""
    if not a or not b:
        return 0.0
    dot = sum(v * b[k] for k, v in a.items() if k in b)
    return dot / math.sqrt(sum(v * v for v in a.values()) * sum(v * v for v in b.values()))


def mean_pairwise_cosine(vectors: Iterable[Counter[str]]) -> float | None:
    """Mean cosine over unordered pairs, None with fewer than two vectors."""
    sims = [cosine(a, b) for a, b in combinations(list(vectors), 2)]
    if not sims:
        return None
    return math.fsum(sims) / len(sims)
