"""Weighted combination of the four sub-scores and the full grading pipeline."""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal

from .domain import Rubric, ScoreBreakdown, Submission, round2
from .integrity import ReferenceCorpus, copying_index, DEFAULT_COPY_THRESHOLD
from .scorers import LanguageModel, score_keywords, score_language, score_size
from .similarity.model import SimilarityModel, score_similarity
from .textpipe import tokenize


class WeightSumInvalid(ValueError):
    pass


class ScoreOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class WeightVector:
    """Relative weight of size, language, keywords and similarity; must sum to 1."""

    w1: float = 0.05
    w2: float = 0.05
    w3: float = 0.10
    w4: float = 0.80

    def __post_init__(self):
        ws = (self.w1, self.w2, self.w3, self.w4)
        if any(w < 0 for w in ws):
            raise WeightSumInvalid(f"negative weight in {ws}")
        total = math.fsum(ws)
        if abs(total - 1.0) > 1e-12:
            raise WeightSumInvalid(f"weights sum to {total}, expected 1.0")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w1, self.w2, self.w3, self.w4)


DEFAULT_WEIGHTS = WeightVector()


def aggregate(
    s1: float,
    s2: float,
    s3: float,
    s4: float,
    weights: WeightVector = DEFAULT_WEIGHTS,
    total_marks: float = 10.0,
) -> tuple[float, float]:
    """Combine the sub-scores into the total fraction and the awarded marks."""
    for name, s in (("s1", s1), ("s2", s2), ("s3", s3), ("s4", s4)):
        if not 0.0 <= s <= 1.0:
            raise ScoreOutOfRange(f"{name} out of [0, 1]: {s}")
    if total_marks <= 0:
        raise ValueError("total_marks must be positive")
    # Decimal keeps the weighted sum exact for decimal-valued weights and
    # scores, so reported fractions like 0.845 carry no float residue.
    total = sum(
        Decimal(repr(float(w))) * Decimal(repr(float(s)))
        for w, s in zip(weights.as_tuple(), (s1, s2, s3, s4))
    )
    total_fraction = min(1.0, float(total))
    return total_fraction, round2(total_fraction * total_marks)


def grade_submission(
    rubric: Rubric,
    submission: Submission,
    model: SimilarityModel,
    lm: LanguageModel,
    corpus: ReferenceCorpus,
    weights: WeightVector = DEFAULT_WEIGHTS,
    copy_threshold: float = DEFAULT_COPY_THRESHOLD,
) -> ScoreBreakdown:
    """Run the full per-answer pipeline and assemble the score report.

    Pure given immutable components, so submissions can be graded in
    parallel with deterministic results.
    """
    seq = tokenize(submission.answer_text)
    s1 = score_size(seq.source_length, rubric.expected_word_count)
    s2 = score_language(seq, lm)
    s3 = score_keywords(seq, rubric.keyword_groups)
    s4 = score_similarity(model, rubric.ideal_answer, submission.answer_text)
    report = copying_index(submission.answer_text, corpus, copy_threshold)
    total_fraction, awarded = aggregate(s1, s2, s3, s4, weights, rubric.total_marks)
    return ScoreBreakdown(
        s1=s1,
        s2=s2,
        s3=s3,
        s4=s4,
        copying_index=report.copying_index,
        copied_flag=report.flagged,
        total_fraction=total_fraction,
        awarded_marks=awarded,
    )
