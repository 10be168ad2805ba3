"""Comparison of automatic scores against manual grades.

Implements the mean-squared error metric over (auto, manual) score pairs
and the classical similarity baselines (vanilla RNN encoder, TF cosine,
Jaccard set overlap) so the main scorer can be benchmarked with everything
else in the pipeline held fixed.
"""
from __future__ import annotations

import json
import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .aggregate import DEFAULT_WEIGHTS, WeightVector, aggregate
from .domain import Rubric, Submission
from .integrity import DEFAULT_COPY_THRESHOLD, ReferenceCorpus, copying_index
from .scorers import LanguageModel, score_keywords, score_language, score_size
from .similarity.model import SimilarityModel, score_similarity
from .textpipe import tokenize


class EmptyRecordSet(ValueError):
    pass


class BaselineKind(str, Enum):
    MALSTM = "malstm"
    VANILLA_RNN = "vanilla_rnn"
    COSINE_TF = "cosine_tf"
    JACCARD_SET = "jaccard_set"


@dataclass(frozen=True)
class EvaluationRecord:
    """One graded case: the automatic score and the manual evaluators' scores."""

    case_id: str
    auto_score: float
    manual_scores: tuple[float, ...]

    def __post_init__(self):
        if not self.manual_scores:
            raise ValueError("manual_scores must be nonempty")
        if self.auto_score < 0 or any(m < 0 for m in self.manual_scores):
            raise ValueError("scores must be nonnegative")


def mse_error(records: Sequence[EvaluationRecord], convention: str = "mean") -> float:
    """Mean squared difference between automatic and manual scores.

    ``convention`` controls how multiple evaluators collapse to one manual
    score per case: ``mean`` (default), ``median``, or ``expand`` which
    treats every (auto, evaluator) pair as its own case.
    """
    if not records:
        raise EmptyRecordSet("no evaluation records")
    pairs: list[tuple[float, float]] = []
    for r in records:
        if convention == "mean":
            pairs.append((r.auto_score, statistics.fmean(r.manual_scores)))
        elif convention == "median":
            pairs.append((r.auto_score, statistics.median(r.manual_scores)))
        elif convention == "expand":
            pairs.extend((r.auto_score, m) for m in r.manual_scores)
        else:
            raise ValueError(f"unknown convention: {convention}")
    return sum((ae - me) ** 2 for ae, me in pairs) / len(pairs)


def cosine_tf_similarity(a: str, b: str) -> float:
    """Cosine between term-frequency vectors over the union vocabulary."""
    ta = tokenize(a).tokens
    tb = tokenize(b).tokens
    if not ta or not tb:
        return 0.0
    union = sorted(set(ta) | set(tb))
    va = np.array([ta.count(t) for t in union], dtype=float)
    vb = np.array([tb.count(t) for t in union], dtype=float)
    # single square root over the product of squared norms keeps simple
    # integer-count cases exact
    return float(va @ vb / np.sqrt((va @ va) * (vb @ vb)))


def jaccard_similarity(a: str, b: str) -> float:
    """Token-set overlap; two empty texts count as identical."""
    sa = set(tokenize(a).tokens)
    sb = set(tokenize(b).tokens)
    if not sa and not sb:
        return 1.0
    return len(sa & sb) / len(sa | sb)


def load_manual_scores(path) -> dict[str, list[tuple[str, float]]]:
    """Parse the "case_id, evaluator_id, score" delimited manual-score file."""
    out: dict[str, list[tuple[str, float]]] = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            case_id, evaluator_id, score = (part.strip() for part in line.split(","))
            out.setdefault(case_id, []).append((evaluator_id, float(score)))
    return out


@dataclass(frozen=True)
class ComparisonRow:
    kind: BaselineKind
    error: float
    convention: str


def _similarity_fn(
    kind: BaselineKind, models: dict[BaselineKind, SimilarityModel]
) -> Callable[[str, str], float]:
    if kind == BaselineKind.COSINE_TF:
        return cosine_tf_similarity
    if kind == BaselineKind.JACCARD_SET:
        return jaccard_similarity
    model = models.get(kind)
    if model is None:
        raise ValueError(f"no model supplied for backend {kind.value}")
    return lambda a, b: score_similarity(model, a, b)


def compare_models(
    rubrics: dict[str, Rubric],
    submissions: Sequence[Submission],
    manual_scores: dict[str, list[tuple[str, float]]],
    kinds: Sequence[BaselineKind],
    models: dict[BaselineKind, SimilarityModel],
    lm: LanguageModel,
    corpus: ReferenceCorpus,
    weights: WeightVector = DEFAULT_WEIGHTS,
    copy_threshold: float = DEFAULT_COPY_THRESHOLD,
    convention: str = "mean",
) -> list[ComparisonRow]:
    """Grade every submission once per backend and report each backend's error.

    Only the semantic-similarity scorer is swapped; size, language and
    keyword scoring stay fixed so the rows are comparable. A case's id is
    "student_id" when one question is present, else "student_id/question_id".
    """
    rows = []
    for kind in kinds:
        sim = _similarity_fn(kind, models)
        records = []
        for sub in submissions:
            rubric = rubrics[sub.question_id]
            seq = tokenize(sub.answer_text)
            s1 = score_size(seq.source_length, rubric.expected_word_count)
            s2 = score_language(seq, lm)
            s3 = score_keywords(seq, rubric.keyword_groups)
            s4 = min(1.0, max(0.0, sim(rubric.ideal_answer, sub.answer_text)))
            copying_index(sub.answer_text, corpus, copy_threshold)
            _, awarded = aggregate(s1, s2, s3, s4, weights, rubric.total_marks)
            case_id = (
                sub.student_id if len(rubrics) == 1 else f"{sub.student_id}/{sub.question_id}"
            )
            manual = manual_scores.get(case_id)
            if not manual:
                continue
            records.append(
                EvaluationRecord(
                    case_id=case_id,
                    auto_score=awarded,
                    manual_scores=tuple(score for _, score in manual),
                )
            )
        rows.append(
            ComparisonRow(kind=kind, error=mse_error(records, convention), convention=convention)
        )
    return rows


def format_comparison(rows: Sequence[ComparisonRow]) -> str:
    """Aligned plain-text comparison table, one row per backend."""
    lines = [
        f"{'Backend':<14} {'Error (E)':>10}  Manual-score convention",
        "-" * 50,
    ]
    for row in rows:
        lines.append(f"{row.kind.value:<14} {row.error:>10.4f}  {row.convention}")
    return "\n".join(lines) + "\n"


def comparison_json(rows: Sequence[ComparisonRow]) -> str:
    payload = [
        {"backend": row.kind.value, "error": row.error, "convention": row.convention}
        for row in rows
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
