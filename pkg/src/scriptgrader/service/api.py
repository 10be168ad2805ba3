"""HTTP surface over the grading workflow.

Auth is a static bearer-token map loaded from the service config: each
token names a role (examiner or student) and, for students, the student
id. The workflow, not identity management, is the point.
"""
from __future__ import annotations

from typing import Optional

from fastapi import Depends, FastAPI, Header, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..domain import ValidationError
from .core import GradingService, MissingModelCheckpoint, WrongState
from .store import NotFound


class Principal(BaseModel):
    role: str
    student_id: Optional[str] = None


class SubmissionIn(BaseModel):
    student_id: str
    question_id: str
    answer_text: str = ""
    submission_id: Optional[str] = None


class DiscrepancyIn(BaseModel):
    question_id: str
    comment: str


class ResolutionIn(BaseModel):
    resolution: str
    override: Optional[float] = None


def create_app(service: GradingService, tokens: dict[str, dict]) -> FastAPI:
    app = FastAPI(title="scriptgrader")

    def principal(authorization: str = Header(default="")) -> Principal:
        if not authorization.startswith("Bearer "):
            raise HTTPException(status_code=401, detail="missing bearer token")
        entry = tokens.get(authorization.removeprefix("Bearer "))
        if entry is None:
            raise HTTPException(status_code=401, detail="unknown token")
        return Principal(**entry)

    def examiner(p: Principal = Depends(principal)) -> Principal:
        if p.role != "examiner":
            raise HTTPException(status_code=403, detail="examiner role required")
        return p

    def student(p: Principal = Depends(principal)) -> Principal:
        if p.role != "student":
            raise HTTPException(status_code=403, detail="student role required")
        return p

    @app.exception_handler(WrongState)
    async def _wrong_state(request, exc):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(NotFound)
    async def _not_found(request, exc):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(ValidationError)
    async def _invalid(request, exc):
        return JSONResponse(status_code=422, content={"detail": exc.violations})

    @app.exception_handler(MissingModelCheckpoint)
    async def _no_model(request, exc):
        return JSONResponse(status_code=503, content={"detail": str(exc)})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/exams", status_code=201)
    def create_exam(payload: dict, p: Principal = Depends(examiner)):
        return service.create_exam(payload)

    @app.put("/exams/{exam_id}/publish")
    def publish(exam_id: str, p: Principal = Depends(examiner)):
        return service.publish(exam_id)

    @app.get("/exams/{exam_id}")
    def get_exam(exam_id: str, p: Principal = Depends(principal)):
        return service.get_exam(exam_id)

    @app.post("/exams/{exam_id}/submissions", status_code=201)
    def submit(exam_id: str, body: SubmissionIn, p: Principal = Depends(student)):
        if p.student_id and body.student_id != p.student_id:
            raise HTTPException(status_code=403, detail="cannot submit for another student")
        return service.submit(exam_id, body.model_dump())

    @app.post("/exams/{exam_id}/evaluate")
    def evaluate(exam_id: str, force: bool = False, p: Principal = Depends(examiner)):
        return service.run_evaluation(exam_id, force=force)

    @app.get("/exams/{exam_id}/results")
    def results(exam_id: str, p: Principal = Depends(examiner)):
        return service.results(exam_id)

    @app.put("/exams/{exam_id}/approve")
    def approve(exam_id: str, p: Principal = Depends(examiner)):
        return service.approve(exam_id)

    @app.get("/students/{student_id}/scores")
    def student_scores(student_id: str, p: Principal = Depends(principal)):
        if p.role == "student" and p.student_id != student_id:
            raise HTTPException(status_code=403, detail="not your scores")
        return service.student_scores(student_id)

    @app.post("/submissions/{submission_id}/discrepancies", status_code=201)
    def file_discrepancy(
        submission_id: str, body: DiscrepancyIn, p: Principal = Depends(student)
    ):
        return service.file_discrepancy(
            submission_id, body.question_id, body.comment, p.student_id or ""
        )

    @app.get("/discrepancies")
    def discrepancies(p: Principal = Depends(examiner)):
        return service.open_discrepancies()

    @app.put("/discrepancies/{report_id}/resolve")
    def resolve(report_id: str, body: ResolutionIn, p: Principal = Depends(examiner)):
        return service.resolve_discrepancy(report_id, body.resolution, body.override)

    return app
