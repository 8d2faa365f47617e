"""Ask-flow orchestration.

Validates the question, embeds it, retrieves the top 3 passages and top 5
related past questions above their thresholds, materializes answer cards
(with the parent paragraph for the detailed view and any linked figures),
and records the question for history and feedback joins. Retrieval is
read-only over immutable indexes, so repeated identical asks return
identical cards.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .corpus import CorpusStore, Figure
from .errors import ValidationError
from .vindex import (
    DEFAULT_PASSAGE_THRESHOLD,
    DEFAULT_QUESTION_THRESHOLD,
    VectorIndex,
)

MAX_QUESTION_CHARS = 500
MAX_ANSWERS = 3
MAX_RELATED = 5
DEFAULT_SUBJECT = "Integrated Science"


@dataclass(frozen=True)
class AskRequest:
    user_id: str
    question: str
    subject: str = DEFAULT_SUBJECT


@dataclass(frozen=True)
class AnswerCard:
    passage_id: str
    passage_text: str
    paragraph_text: str
    confidence: float
    figures: list[Figure] = field(default_factory=list)


@dataclass(frozen=True)
class RelatedQuestionCard:
    question_id: str
    question_text: str
    answer: str
    year: int
    exam_label: str
    section: str
    topic: str | None
    confidence: float


@dataclass(frozen=True)
class AskResponse:
    question_record_id: str
    answers: list[AnswerCard]
    related: list[RelatedQuestionCard]
    unanswerable: bool


class QuestionLog:
    """Append-only log of asked questions (JSON lines when given a path)."""

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path else None
        self._records: list[dict] = []
        self._lock = threading.Lock()
        if self._path and self._path.exists():
            with self._path.open(encoding="utf-8") as fh:
                self._records = [json.loads(line) for line in fh if line.strip()]

    def append(self, record: dict) -> str:
        with self._lock:
            record = dict(record, id=f"q-{len(self._records) + 1:08d}")
            self._records.append(record)
            if self._path:
                with self._path.open("a", encoding="utf-8") as fh:
                    fh.write(json.dumps(record, ensure_ascii=False) + "\n")
        return record["id"]

    def has(self, record_id: str) -> bool:
        return any(r["id"] == record_id for r in self._records)

    def __len__(self) -> int:
        return len(self._records)

    def history(self, user_id: str, page: int = 1, page_size: int = 10) -> list[dict]:
        """The user's questions, newest first; unknown users get an empty page."""
        if page < 1:
            raise ValidationError("page must be >= 1")
        if page_size < 1:
            raise ValidationError("page_size must be >= 1")
        mine = [r for r in reversed(self._records) if r["user_id"] == user_id]
        start = (page - 1) * page_size
        return mine[start : start + page_size]


class QaEngine:
    def __init__(
        self,
        embedder,
        passage_index: VectorIndex,
        question_index: VectorIndex,
        store: CorpusStore,
        question_log: QuestionLog | None = None,
        passage_threshold: float = DEFAULT_PASSAGE_THRESHOLD,
        question_threshold: float = DEFAULT_QUESTION_THRESHOLD,
        clock=None,
    ):
        self.embedder = embedder
        self.passage_index = passage_index
        self.question_index = question_index
        self.store = store
        self.question_log = question_log if question_log is not None else QuestionLog()
        self.passage_threshold = passage_threshold
        self.question_threshold = question_threshold
        self._clock = clock or (lambda: datetime.now(timezone.utc))

    def ask(self, request: AskRequest) -> AskResponse:
        """Answer a question; persists the question record on success only."""
        n = len(request.question)
        if n < 1:
            raise ValidationError("question must not be empty")
        if n > MAX_QUESTION_CHARS:
            raise ValidationError(
                f"question length {n} exceeds the {MAX_QUESTION_CHARS}-character limit"
            )

        query = self.embedder.embed(request.question)

        answers = [
            self._answer_card(hit)
            for hit in self.passage_index.top_k(query, MAX_ANSWERS, self.passage_threshold)
        ]
        related = [
            self._related_card(hit)
            for hit in self.question_index.top_k(query, MAX_RELATED, self.question_threshold)
        ]

        record_id = self.question_log.append(
            {
                "user_id": request.user_id,
                "question": request.question,
                "subject": request.subject,
                "ts": self._clock().isoformat(),
                "answer_ids": [a.passage_id for a in answers],
                "related_ids": [r.question_id for r in related],
                "unanswerable": not answers,
            }
        )
        return AskResponse(
            question_record_id=record_id,
            answers=answers,
            related=related,
            unanswerable=not answers,
        )

    def _answer_card(self, hit) -> AnswerCard:
        passage = self.store.passage(hit.id)
        paragraph = self.store.paragraph(passage.paragraph_id)
        figures = [f for f in (self.store.figure(fid) for fid in passage.figure_refs) if f]
        return AnswerCard(
            passage_id=passage.id,
            passage_text=passage.text,
            paragraph_text=paragraph.text,
            confidence=hit.score,
            figures=figures,
        )

    def _related_card(self, hit) -> RelatedQuestionCard:
        q = self.store.question(hit.id)
        return RelatedQuestionCard(
            question_id=q.id,
            question_text=q.text,
            answer=q.answer,
            year=q.year,
            exam_label=q.exam_label,
            section=q.section,
            topic=q.topic,
            confidence=hit.score,
        )

    def history(self, user_id: str, page: int = 1, page_size: int = 10) -> list[dict]:
        return self.question_log.history(user_id, page, page_size)
