"""The three non-neural rubric scores: size (S1), language (S2), keywords (S3)."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .domain import KeywordGroup
from .textpipe import TokenSequence, tokenize

DEFAULT_MIN_BIGRAM_PROB = 1e-4


def score_size(word_count: int, expected: int) -> float:
    """Banded size score against the expected word count x.

    <70% of x -> 0.5; 70-90% -> 0.8; 90-110% -> 1.0; >110% -> 0.8.
    Boundaries belong to the band giving the higher score (benefit of the
    doubt). Integer arithmetic so band edges like 0.7*x are exact.
    """
    if expected < 1:
        raise ValueError("expected word count must be >= 1")
    w10 = 10 * word_count
    if 9 * expected <= w10 <= 11 * expected:
        return 1.0
    if w10 < 7 * expected:
        return 0.5
    return 0.8


@dataclass(frozen=True)
class LanguageModel:
    """Lexicon plus add-one-smoothed bigram statistics for the S2 check.

    Built from a plain-text corpus (one document per line); the lexicon can
    be extended with a word list. Immutable after construction.
    """

    lexicon: frozenset[str]
    unigram_counts: dict[str, int]
    bigram_counts: dict[tuple[str, str], int]
    min_bigram_prob: float = DEFAULT_MIN_BIGRAM_PROB

    def __post_init__(self):
        if not 0.0 < self.min_bigram_prob < 1.0:
            raise ValueError("min_bigram_prob must lie in (0, 1)")

    def bigram_prob(self, first: str, second: str) -> float:
        v = len(self.unigram_counts)
        num = self.bigram_counts.get((first, second), 0) + 1
        den = self.unigram_counts.get(first, 0) + v
        return num / den if den else 0.0

    @classmethod
    def from_documents(
        cls,
        documents: Iterable[str],
        extra_lexicon: Iterable[str] = (),
        min_bigram_prob: float = DEFAULT_MIN_BIGRAM_PROB,
    ) -> "LanguageModel":
        unigrams: Counter[str] = Counter()
        bigrams: Counter[tuple[str, str]] = Counter()
        for doc in documents:
            tokens = tokenize(doc).tokens
            unigrams.update(tokens)
            bigrams.update(zip(tokens, tokens[1:]))
        lexicon = frozenset(unigrams) | frozenset(extra_lexicon)
        return cls(
            lexicon=lexicon,
            unigram_counts=dict(unigrams),
            bigram_counts=dict(bigrams),
            min_bigram_prob=min_bigram_prob,
        )

    @classmethod
    def from_corpus_file(
        cls, path, word_list_path=None, min_bigram_prob: float = DEFAULT_MIN_BIGRAM_PROB
    ) -> "LanguageModel":
        with open(path, encoding="utf-8") as f:
            documents = [line for line in f if line.strip()]
        extra: list[str] = []
        if word_list_path is not None:
            with open(word_list_path, encoding="utf-8") as f:
                extra = [line.strip().lower() for line in f if line.strip()]
        return cls.from_documents(documents, extra, min_bigram_prob)


def score_language(seq: TokenSequence, lm: LanguageModel) -> float:
    """Error-rate language score.

    Counts unknown tokens and improbable adjacent bigrams (skipping pairs
    that already contain an unknown token, so a misspelling is not counted
    twice) and subtracts the error rate from 1.
    """
    n = len(seq.tokens)
    if n == 0:
        return 0.0
    misspelled = sum(1 for t in seq.tokens if t not in lm.lexicon)
    improbable = 0
    for a, b in zip(seq.tokens, seq.tokens[1:]):
        if a not in lm.lexicon or b not in lm.lexicon:
            continue
        if lm.bigram_prob(a, b) < lm.min_bigram_prob:
            improbable += 1
    return max(0.0, 1.0 - (misspelled + improbable) / n)


def score_keywords(seq: TokenSequence, groups: Sequence[KeywordGroup]) -> float:
    """Fraction of keyword groups with at least one member present.

    A group matches when its canonical token or any synonym occurs in the
    answer. With no groups there is nothing to satisfy, so the score is 1.
    """
    y = len(groups)
    if y == 0:
        return 1.0
    present = set(seq.tokens)
    y1 = sum(1 for g in groups if present & g.members())
    return y1 / y
