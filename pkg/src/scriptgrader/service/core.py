"""Workflow engine: exam lifecycle, evaluation runs, approvals, disputes.

The exam state machine is Draft -> Published -> Evaluated -> Approved.
Re-running an evaluation on an Evaluated exam is allowed (it replaces the
persisted reports deterministically); every other off-path transition is
rejected with ``WrongState``.
"""
from __future__ import annotations

import threading
import uuid
from datetime import datetime, timezone
from typing import Optional

from ..aggregate import WeightVector, grade_submission
from ..domain import KeywordGroup, Rubric, Submission, ValidationError, validate_rubric
from ..integrity import DEFAULT_COPY_THRESHOLD, ReferenceCorpus, build_corpus
from ..scorers import LanguageModel
from ..similarity.model import SimilarityModel
from .store import NotFound, Store

DRAFT = "Draft"
PUBLISHED = "Published"
EVALUATED = "Evaluated"
APPROVED = "Approved"

STATES = (DRAFT, PUBLISHED, EVALUATED, APPROVED)


class WrongState(Exception):
    """The requested transition is not legal from the exam's current state."""


ConflictOnStateTransition = WrongState


class MissingModelCheckpoint(Exception):
    pass


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def rubric_from_dict(data: dict) -> Rubric:
    groups = tuple(
        KeywordGroup(canonical=g["canonical"], synonyms=frozenset(g.get("synonyms", ())))
        for g in data.get("keyword_groups", ())
    )
    return Rubric(
        question_text=data["question_text"],
        ideal_answer=data["ideal_answer"],
        expected_word_count=int(data["expected_word_count"]),
        keyword_groups=groups,
        total_marks=float(data["total_marks"]),
    )


def rubric_to_dict(question_id: str, rubric: Rubric) -> dict:
    return {
        "question_id": question_id,
        "question_text": rubric.question_text,
        "ideal_answer": rubric.ideal_answer,
        "expected_word_count": rubric.expected_word_count,
        "keyword_groups": [
            {"canonical": g.canonical, "synonyms": sorted(g.synonyms)}
            for g in rubric.keyword_groups
        ],
        "total_marks": rubric.total_marks,
    }


class GradingService:
    """All workflow operations over the journal store.

    Writes are serialized per service instance; grading itself is pure so
    per-submission results are order-independent.
    """

    def __init__(
        self,
        store: Store,
        model: Optional[SimilarityModel] = None,
        language_model: Optional[LanguageModel] = None,
        corpus: Optional[ReferenceCorpus] = None,
        dev_mode: bool = False,
    ):
        self.store = store
        self.model = model
        self.language_model = language_model
        self.corpus = corpus if corpus is not None else build_corpus([])
        self.dev_mode = dev_mode
        self._write_lock = threading.Lock()

    # -- exam lifecycle ----------------------------------------------------

    def create_exam(self, payload: dict) -> dict:
        rubrics = payload.get("rubrics", [])
        if not rubrics:
            raise ValidationError(["exam needs at least one rubric"])
        qids = [r.get("question_id") or f"q{i+1}" for i, r in enumerate(rubrics)]
        if len(set(qids)) != len(qids):
            raise ValidationError(["duplicate question_id"])
        parsed = []
        for qid, r in zip(qids, rubrics):
            parsed.append((qid, validate_rubric(rubric_from_dict(r))))
        weights = payload.get("weights") or {}
        wv = WeightVector(**weights) if weights else WeightVector()
        record = {
            "id": payload.get("exam_id") or f"exam-{uuid.uuid4().hex[:8]}",
            "state": DRAFT,
            "rubrics": [rubric_to_dict(qid, r) for qid, r in parsed],
            "weights": {"w1": wv.w1, "w2": wv.w2, "w3": wv.w3, "w4": wv.w4},
            "copying_threshold": float(
                payload.get("copying_threshold", DEFAULT_COPY_THRESHOLD)
            ),
            "window": payload.get("window"),
            "created_at": _now(),
        }
        with self._write_lock:
            if record["id"] in self.store.exams:
                raise ValidationError([f"exam {record['id']} already exists"])
            return self.store.exams.put(record)

    def get_exam(self, exam_id: str) -> dict:
        return self.store.exams.get(exam_id)

    def _transition(self, exam_id: str, allowed_from: tuple[str, ...], to: str) -> dict:
        with self._write_lock:
            exam = dict(self.store.exams.get(exam_id))
            if exam["state"] not in allowed_from:
                raise WrongState(
                    f"cannot move exam {exam_id} from {exam['state']} to {to}"
                )
            exam["state"] = to
            return self.store.exams.put(exam)

    def publish(self, exam_id: str) -> dict:
        return self._transition(exam_id, (DRAFT,), PUBLISHED)

    def approve(self, exam_id: str) -> dict:
        return self._transition(exam_id, (EVALUATED,), APPROVED)

    # -- submissions -------------------------------------------------------

    def submit(self, exam_id: str, payload: dict, now: Optional[str] = None) -> dict:
        exam = self.store.exams.get(exam_id)
        if exam["state"] != PUBLISHED:
            raise WrongState(f"exam {exam_id} is not accepting submissions")
        window = exam.get("window")
        moment = now or _now()
        if window:
            if window.get("open") and moment < window["open"]:
                raise WrongState("submission window has not opened")
            if window.get("close") and moment > window["close"]:
                raise WrongState("submission window has closed")
        qids = {r["question_id"] for r in exam["rubrics"]}
        if payload["question_id"] not in qids:
            raise ValidationError([f"unknown question_id {payload['question_id']}"])
        record = {
            "id": payload.get("submission_id") or f"sub-{uuid.uuid4().hex[:8]}",
            "exam_id": exam_id,
            "student_id": payload["student_id"],
            "question_id": payload["question_id"],
            "answer_text": payload.get("answer_text", ""),
            "submitted_at": moment,
        }
        with self._write_lock:
            if record["id"] in self.store.submissions:
                raise ValidationError([f"submission {record['id']} already exists"])
            return self.store.submissions.put(record)

    def _exam_submissions(self, exam_id: str) -> list[dict]:
        return [s for s in self.store.submissions if s["exam_id"] == exam_id]

    # -- evaluation --------------------------------------------------------

    def _language_model_for(self, exam: dict) -> LanguageModel:
        if self.language_model is not None:
            return self.language_model
        # Without a reference corpus the ideal answers serve as the
        # known-good language sample.
        return LanguageModel.from_documents(r["ideal_answer"] for r in exam["rubrics"])

    def run_evaluation(
        self, exam_id: str, force: bool = False, now: Optional[str] = None
    ) -> list[dict]:
        exam = self.store.exams.get(exam_id)
        if exam["state"] not in (PUBLISHED, EVALUATED):
            raise WrongState(f"cannot evaluate exam in state {exam['state']}")
        window = exam.get("window")
        if window and window.get("close") and not force:
            if (now or _now()) <= window["close"]:
                raise WrongState("submission window still open; use force to override")
        if self.model is None:
            raise MissingModelCheckpoint(
                "no model checkpoint configured; enable dev mode to grade "
                "with a seeded untrained model"
            )
        lm = self._language_model_for(exam)
        weights = WeightVector(**exam["weights"])
        rubrics = {r["question_id"]: rubric_from_dict(r) for r in exam["rubrics"]}
        run_id = f"run-{uuid.uuid4().hex[:8]}"
        reports = []
        for sub in sorted(self._exam_submissions(exam_id), key=lambda s: s["id"]):
            rubric = rubrics[sub["question_id"]]
            breakdown = grade_submission(
                rubric,
                Submission(
                    submission_id=sub["id"],
                    student_id=sub["student_id"],
                    question_id=sub["question_id"],
                    answer_text=sub["answer_text"],
                    submitted_at=sub["submitted_at"],
                ),
                self.model,
                lm,
                self.corpus,
                weights,
                exam["copying_threshold"],
            )
            report = {
                "id": sub["id"],
                "exam_id": exam_id,
                "submission_id": sub["id"],
                "student_id": sub["student_id"],
                "question_id": sub["question_id"],
                "s1": breakdown.s1,
                "s2": breakdown.s2,
                "s3": breakdown.s3,
                "s4": breakdown.s4,
                "copying_index": breakdown.copying_index,
                "copied_flag": breakdown.copied_flag,
                "total_fraction": breakdown.total_fraction,
                "awarded_marks": breakdown.awarded_marks,
                "source": "evaluation",
                "run_id": run_id,
            }
            reports.append(report)
        with self._write_lock:
            for report in reports:
                self.store.reports.put(report)
        self._transition(exam_id, (PUBLISHED, EVALUATED), EVALUATED)
        return reports

    def results(self, exam_id: str) -> list[dict]:
        exam = self.store.exams.get(exam_id)
        if exam["state"] not in (EVALUATED, APPROVED):
            raise WrongState(f"no results for exam in state {exam['state']}")
        return [r for r in self.store.reports if r["exam_id"] == exam_id]

    # -- student views -----------------------------------------------------

    def student_scores(self, student_id: str) -> list[dict]:
        """Score history: receipts before approval, full reports after."""
        out = []
        for sub in self.store.submissions:
            if sub["student_id"] != student_id:
                continue
            exam = self.store.exams.get(sub["exam_id"])
            entry = {
                "submission_id": sub["id"],
                "exam_id": sub["exam_id"],
                "question_id": sub["question_id"],
                "submitted_at": sub["submitted_at"],
                "status": "awaiting results",
            }
            if exam["state"] == APPROVED and sub["id"] in self.store.reports:
                report = self.store.reports.get(sub["id"])
                entry["status"] = "scored"
                entry["report"] = report
            out.append(entry)
        return out

    # -- discrepancies -----------------------------------------------------

    def file_discrepancy(
        self, submission_id: str, question_id: str, comment: str, student_id: str
    ) -> dict:
        sub = self.store.submissions.get(submission_id)
        if sub["student_id"] != student_id:
            raise NotFound(submission_id)
        exam = self.store.exams.get(sub["exam_id"])
        if exam["state"] != APPROVED:
            raise WrongState("scores are not released yet")
        record = {
            "id": f"disc-{uuid.uuid4().hex[:8]}",
            "submission_id": submission_id,
            "question_id": question_id,
            "student_id": student_id,
            "exam_id": sub["exam_id"],
            "comment": comment,
            "status": "Open",
            "resolution": None,
            "override": None,
            "created_at": _now(),
        }
        with self._write_lock:
            return self.store.discrepancies.put(record)

    def open_discrepancies(self) -> list[dict]:
        return [d for d in self.store.discrepancies if d["status"] == "Open"]

    def resolve_discrepancy(
        self, report_id: str, resolution: str, override: Optional[float] = None
    ) -> dict:
        disc = dict(self.store.discrepancies.get(report_id))
        if disc["status"] != "Open":
            raise WrongState(f"discrepancy {report_id} is already resolved")
        if not resolution or not resolution.strip():
            raise ValidationError(["resolution note is required"])
        exam = self.store.exams.get(disc["exam_id"])
        rubric = next(
            r for r in exam["rubrics"] if r["question_id"] == disc["question_id"]
        )
        if override is not None and not 0 <= override <= rubric["total_marks"]:
            raise ValidationError(
                [f"override {override} outside [0, {rubric['total_marks']}]"]
            )
        disc["status"] = "Resolved"
        disc["resolution"] = resolution
        disc["override"] = override
        with self._write_lock:
            self.store.discrepancies.put(disc)
            if override is not None:
                report = dict(self.store.reports.get(disc["submission_id"]))
                report["awarded_marks"] = float(override)
                report["source"] = "manual_override"
                report["run_id"] = disc["id"]
                self.store.reports.put(report)
        return disc
