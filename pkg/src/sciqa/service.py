"""HTTP API binding all modules together.

Handlers are thin, loss-free projections of module operations; errors map
onto a uniform JSON shape ``{code, message, retryable}`` with codes
InvalidInput (never retryable), NotFound, Upstream (always retryable), and
Internal.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from datetime import datetime, timezone

from fastapi import FastAPI, Header, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from .analytics import EventLog, FeedbackEvent, UsageEvent, accuracy_report, usage_report
from .corpus import CorpusStore, QuestionFilter
from .errors import NotFoundError, UpstreamError, ValidationError
from .qa import DEFAULT_SUBJECT, MAX_ANSWERS, MAX_QUESTION_CHARS, MAX_RELATED, QaEngine


@dataclass
class AppState:
    store: CorpusStore
    engine: QaEngine
    events: EventLog


class AskBody(BaseModel):
    user_id: str
    question: str
    subject: str = DEFAULT_SUBJECT


class FeedbackBody(BaseModel):
    question_id: str
    position: int
    vote: str


class EventBody(BaseModel):
    kind: str


def _error_response(status: int, code: str, message: str, retryable: bool) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "retryable": retryable},
    )


def create_app(state: AppState) -> FastAPI:
    app = FastAPI(title="sciqa", docs_url=None, redoc_url=None)

    @app.exception_handler(ValidationError)
    async def _invalid(request: Request, exc: ValidationError):
        return _error_response(400, "InvalidInput", str(exc), retryable=False)

    @app.exception_handler(RequestValidationError)
    async def _malformed(request: Request, exc: RequestValidationError):
        return _error_response(400, "InvalidInput", str(exc.errors()[:1]), retryable=False)

    @app.exception_handler(NotFoundError)
    async def _missing(request: Request, exc: NotFoundError):
        return _error_response(404, "NotFound", str(exc), retryable=False)

    @app.exception_handler(UpstreamError)
    async def _upstream(request: Request, exc: UpstreamError):
        return _error_response(502, "Upstream", str(exc), retryable=True)

    @app.exception_handler(Exception)
    async def _internal(request: Request, exc: Exception):
        return _error_response(500, "Internal", "internal error", retryable=False)

    @app.post("/api/ask")
    def ask(body: AskBody):
        from .qa import AskRequest

        response = state.engine.ask(
            AskRequest(user_id=body.user_id, question=body.question, subject=body.subject)
        )
        return {
            "question_id": response.question_record_id,
            "unanswerable": response.unanswerable,
            "answers": [
                {
                    "passage_id": a.passage_id,
                    "passage_text": a.passage_text,
                    "paragraph_text": a.paragraph_text,
                    "confidence": a.confidence,
                    "figures": [asdict(f) for f in a.figures],
                }
                for a in response.answers
            ],
            "related": [
                {
                    "question_id": r.question_id,
                    "question_text": r.question_text,
                    "answer": r.answer,
                    "year": r.year,
                    "exam_label": r.exam_label,
                    "section": r.section,
                    "topic": r.topic,
                    "confidence": r.confidence,
                }
                for r in response.related
            ],
        }

    @app.get("/api/questions")
    def questions(
        year: int | None = None,
        exam: str | None = None,
        section: str | None = None,
        topic: str | None = None,
        page: int = 1,
        page_size: int = 20,
    ):
        items, total = state.store.filter_questions(
            QuestionFilter(
                year=year, exam_label=exam, section=section, topic=topic,
                page=page, page_size=page_size,
            )
        )
        return {"items": [asdict(q) for q in items], "total": total}

    @app.get("/api/filters")
    def filters():
        return state.store.filter_values()

    @app.get("/api/history")
    def history(user_id: str, page: int = 1, page_size: int = 10):
        return {"items": state.engine.history(user_id, page, page_size)}

    @app.post("/api/feedback", status_code=204)
    def feedback(body: FeedbackBody):
        state.events.record_feedback(
            FeedbackEvent(
                question_id=body.question_id,
                position=body.position,
                vote=body.vote,
                ts=datetime.now(timezone.utc),
            ),
            question_exists=state.engine.question_log.has,
        )
        return Response(status_code=204)

    @app.post("/api/events", status_code=204)
    def events(body: EventBody, x_session_id: str | None = Header(default=None)):
        state.events.record_usage(
            UsageEvent(
                kind=body.kind,
                ts=datetime.now(timezone.utc),
                session_id=x_session_id or "anonymous",
            )
        )
        return Response(status_code=204)

    @app.get("/api/analytics/summary")
    def analytics_summary():
        log = state.events.events()
        return {
            "accuracy": accuracy_report(log).to_dict(),
            "usage": usage_report(log, questions_asked=len(state.engine.question_log)),
        }

    @app.get("/api/config")
    def config():
        return {
            "max_question_chars": MAX_QUESTION_CHARS,
            "max_answers": MAX_ANSWERS,
            "max_related": MAX_RELATED,
            "passage_threshold": state.engine.passage_threshold,
            "question_threshold": state.engine.question_threshold,
            "subject": DEFAULT_SUBJECT,
        }

    @app.get("/healthz")
    def healthz():
        return {
            "status": "ok",
            "passages": len(state.engine.passage_index),
            "questions": len(state.engine.question_index),
            "embedder": {
                "provider": type(state.engine.embedder).__name__,
                "dim": state.engine.embedder.dim,
            },
        }

    return app
