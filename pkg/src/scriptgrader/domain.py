"""Core value objects: rubrics, submissions, and score reports.

Everything here is an immutable dataclass, safe to share between grading
workers. Validation is explicit (``validate_rubric``) rather than hidden in
``__post_init__`` so callers can collect the full list of violations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal


class ValidationError(ValueError):
    """A rubric or score report violated one of its invariants."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


def round2(value: float) -> float:
    """Half-up rounding to 2 decimal places (score reports show 2 decimals)."""
    return float(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class KeywordGroup:
    """One required concept: a canonical token plus examiner-supplied synonyms."""

    canonical: str
    synonyms: frozenset[str] = frozenset()

    def members(self) -> frozenset[str]:
        return self.synonyms | {self.canonical}


@dataclass(frozen=True)
class Rubric:
    """Per-question examiner parameters: ideal answer, expected word count,
    keyword groups and total marks."""

    question_text: str
    ideal_answer: str
    expected_word_count: int
    keyword_groups: tuple[KeywordGroup, ...] = ()
    total_marks: float = 10.0


@dataclass(frozen=True)
class Submission:
    submission_id: str
    student_id: str
    question_id: str
    answer_text: str
    submitted_at: str = ""


@dataclass(frozen=True)
class ScoreBreakdown:
    """The four sub-scores, the copying check, and the weighted total."""

    s1: float
    s2: float
    s3: float
    s4: float
    copying_index: float
    copied_flag: bool
    total_fraction: float
    awarded_marks: float

    def __post_init__(self):
        for name in ("s1", "s2", "s3", "s4", "copying_index", "total_fraction"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValidationError([f"{name} out of [0, 1]: {v}"])


def validate_rubric(rubric: Rubric) -> Rubric:
    """Return the rubric unchanged if every invariant holds.

    Raises ``ValidationError`` carrying the full list of violations
    otherwise. Idempotent: a validated rubric re-validates to itself.
    """
    violations: list[str] = []
    if not rubric.question_text.strip():
        violations.append("EmptyQuestionText")
    if not rubric.ideal_answer.strip():
        violations.append("EmptyIdealAnswer")
    if rubric.expected_word_count < 1:
        violations.append("NonPositiveWordCount")
    if rubric.total_marks <= 0:
        violations.append("NonPositiveMarks")
    seen: dict[str, str] = {}
    for group in rubric.keyword_groups:
        members = group.members()
        if group.canonical in group.synonyms:
            violations.append(f"CanonicalListedAsSynonym: {group.canonical!r}")
        if any(not m for m in members):
            violations.append(f"EmptyKeywordMember in group {group.canonical!r}")
        for m in members:
            if m in seen and seen[m] != group.canonical:
                violations.append(
                    f"OverlappingKeywordGroups: {m!r} in {seen[m]!r} and {group.canonical!r}"
                )
            else:
                seen.setdefault(m, group.canonical)
    if violations:
        raise ValidationError(violations)
    return rubric
