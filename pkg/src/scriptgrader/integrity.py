"""Copying check: k-shingle containment against a local reference corpus.

The copying index is the fraction of the answer's k-token windows that
appear anywhere in the reference corpus. It raises a flag for the examiner
but never changes the awarded marks.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .textpipe import TokenSequence, tokenize

DEFAULT_SHINGLE_SIZE = 5
DEFAULT_COPY_THRESHOLD = 0.4

Shingle = tuple[str, ...]


class InvalidShingleSize(ValueError):
    pass


def _shingles(tokens: tuple[str, ...], k: int) -> list[Shingle]:
    return [tokens[i : i + k] for i in range(len(tokens) - k + 1)]


@dataclass(frozen=True)
class ReferenceCorpus:
    documents: tuple[tuple[str, TokenSequence], ...]
    shingle_index: dict[Shingle, frozenset[str]]
    k: int


@dataclass(frozen=True)
class CopyReport:
    copying_index: float
    matched_sources: tuple[tuple[str, int], ...]
    flagged: bool


def build_corpus(docs: list[tuple[str, str]], k: int = DEFAULT_SHINGLE_SIZE) -> ReferenceCorpus:
    if k < 2:
        raise InvalidShingleSize(f"shingle size must be >= 2, got {k}")
    documents = []
    index: dict[Shingle, set[str]] = {}
    for doc_id, text in docs:
        seq = tokenize(text)
        documents.append((doc_id, seq))
        for sh in _shingles(seq.tokens, k):
            index.setdefault(sh, set()).add(doc_id)
    return ReferenceCorpus(
        documents=tuple(documents),
        shingle_index={sh: frozenset(ids) for sh, ids in index.items()},
        k=k,
    )


def load_corpus_dir(directory, k: int = DEFAULT_SHINGLE_SIZE) -> ReferenceCorpus:
    """Build the corpus from a directory of plain-text files; doc_id = file name."""
    docs = []
    for name in sorted(os.listdir(directory)):
        path = os.path.join(directory, name)
        if os.path.isfile(path):
            with open(path, encoding="utf-8") as f:
                docs.append((name, f.read()))
    return build_corpus(docs, k)


def copying_index(
    answer: str, corpus: ReferenceCorpus, threshold: float = DEFAULT_COPY_THRESHOLD
) -> CopyReport:
    """Fraction of the answer's k-shingles found in the corpus index.

    Answers shorter than k tokens have index 0. ``flagged`` is strict:
    the index must exceed the threshold.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    tokens = tokenize(answer).tokens
    shingles = _shingles(tokens, corpus.k)
    if not shingles:
        return CopyReport(copying_index=0.0, matched_sources=(), flagged=False)
    matched = 0
    per_source: dict[str, int] = {}
    for sh in shingles:
        sources = corpus.shingle_index.get(sh)
        if sources:
            matched += 1
            for doc_id in sources:
                per_source[doc_id] = per_source.get(doc_id, 0) + 1
    index = matched / len(shingles)
    ranked = tuple(sorted(per_source.items(), key=lambda kv: (-kv[1], kv[0])))
    return CopyReport(copying_index=index, matched_sources=ranked, flagged=index > threshold)
