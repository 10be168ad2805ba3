"""Tokenization, vocabulary construction and integer encoding.

Shared by every scorer and the similarity model. All functions are pure and
deterministic.
"""
from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Iterable


class EmptyCorpus(ValueError):
    pass


@dataclass(frozen=True)
class TokenSequence:
    """Normalized tokens plus the raw whitespace-word count of the source."""

    tokens: tuple[str, ...]
    source_length: int


@dataclass(frozen=True)
class Vocabulary:
    """Bijection token -> id in [1, V]; id 0 is reserved for OOV/padding."""

    term_to_id: dict[str, int]

    @property
    def size(self) -> int:
        return len(self.term_to_id)

    def id_for(self, term: str) -> int:
        return self.term_to_id.get(term, 0)


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _strip_edges(word: str) -> str:
    start, end = 0, len(word)
    while start < end and _is_punct(word[start]):
        start += 1
    while end > start and _is_punct(word[end - 1]):
        end -= 1
    return word[start:end]


def tokenize(text: str) -> TokenSequence:
    """Split on whitespace, strip edge punctuation, lowercase.

    Words reduced to nothing by stripping are dropped; ``source_length``
    counts the raw whitespace-separated words before any stripping.
    """
    raw_words = text.split()
    tokens = []
    for word in raw_words:
        stripped = _strip_edges(word).lower()
        if stripped:
            tokens.append(stripped)
    return TokenSequence(tokens=tuple(tokens), source_length=len(raw_words))


def build_vocabulary(corpus: Iterable[TokenSequence], min_count: int = 1) -> Vocabulary:
    """Assign ids in descending frequency order, ties broken lexicographically.

    Terms below ``min_count`` are excluded. Deterministic for a fixed corpus.
    """
    counts: Counter[str] = Counter()
    seen_any = False
    for seq in corpus:
        seen_any = True
        counts.update(seq.tokens)
    if not seen_any:
        raise EmptyCorpus("corpus must contain at least one sequence")
    kept = [t for t, c in counts.items() if c >= min_count]
    kept.sort(key=lambda t: (-counts[t], t))
    return Vocabulary(term_to_id={t: i for i, t in enumerate(kept, start=1)})


def encode(seq: TokenSequence, vocab: Vocabulary) -> list[int]:
    """Map each token to its id; unknown tokens map to 0."""
    return [vocab.id_for(t) for t in seq.tokens]


def save_vocabulary(vocab: Vocabulary) -> str:
    """Serialize as "term<TAB>id" lines sorted by id."""
    items = sorted(vocab.term_to_id.items(), key=lambda kv: kv[1])
    return "".join(f"{term}\t{idx}\n" for term, idx in items)


def load_vocabulary(text: str) -> Vocabulary:
    term_to_id: dict[str, int] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        term, _, idx = line.rpartition("\t")
        term_to_id[term] = int(idx)
    ids = sorted(term_to_id.values())
    if ids != list(range(1, len(ids) + 1)):
        raise ValueError("vocabulary ids must be exactly 1..V")
    return Vocabulary(term_to_id=term_to_id)
