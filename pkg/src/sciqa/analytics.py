"""Helpfulness votes, usage events, and the reports built from them.

The event log is append-only JSON lines; reports are pure folds over the
log, so analytics can always be rebuilt by replay. Feedback overwrite
semantics (one effective vote per question/position, later wins) are
applied at read time.

Accuracy definitions: top-1 is the fraction of voted answers that were
upvoted (counted per answer, n = voted answers); top-3 is, among questions
with at least one voted answer, the fraction with at least one upvoted
answer.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Callable, Iterable

from .errors import NotFoundError, ValidationError

VOTE_UP = "up"
VOTE_DOWN = "down"
VOTES = (VOTE_UP, VOTE_DOWN)

USAGE_ANSWER_DETAIL_OPENED = "answer_detail_opened"
USAGE_RELATED_QUESTION_EXPANDED = "related_question_expanded"
USAGE_SHOW_ANSWER = "show_answer"
USAGE_SELECT_YEAR = "select_year"
USAGE_SELECT_QUESTION_TYPE = "select_question_type"
USAGE_SELECT_TOPIC = "select_topic"
USAGE_KINDS = (
    USAGE_ANSWER_DETAIL_OPENED,
    USAGE_RELATED_QUESTION_EXPANDED,
    USAGE_SHOW_ANSWER,
    USAGE_SELECT_YEAR,
    USAGE_SELECT_QUESTION_TYPE,
    USAGE_SELECT_TOPIC,
)


@dataclass(frozen=True)
class FeedbackEvent:
    question_id: str
    position: int  # answer position 1..3
    vote: str
    ts: datetime


@dataclass(frozen=True)
class UsageEvent:
    kind: str
    ts: datetime
    session_id: str = "anonymous"


@dataclass(frozen=True)
class AccuracyReport:
    top1: float | None
    n_answers: int
    top3: float | None
    n_questions: int

    def to_dict(self) -> dict:
        return {
            "top1": self.top1,
            "n_answers": self.n_answers,
            "top3": self.top3,
            "n_questions": self.n_questions,
        }


class EventLog:
    """Append-only feedback/usage event log with optional JSONL persistence."""

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path else None
        self._events: list[dict] = []
        self._lock = threading.Lock()
        if self._path and self._path.exists():
            with self._path.open(encoding="utf-8") as fh:
                self._events = [json.loads(line) for line in fh if line.strip()]

    def __len__(self) -> int:
        return len(self._events)

    def events(self) -> list[dict]:
        return list(self._events)

    def _append(self, obj: dict) -> None:
        with self._lock:
            self._events.append(obj)
            if self._path:
                with self._path.open("a", encoding="utf-8") as fh:
                    fh.write(json.dumps(obj, ensure_ascii=False) + "\n")

    def record_feedback(
        self, event: FeedbackEvent, question_exists: Callable[[str], bool]
    ) -> None:
        if event.vote not in VOTES:
            raise ValidationError(f"unknown vote {event.vote!r}")
        if not 1 <= event.position <= 3:
            raise ValidationError("answer position must be in 1..3")
        if not question_exists(event.question_id):
            raise NotFoundError(f"unknown question record {event.question_id}")
        self._append(
            {
                "type": "feedback",
                "question_id": event.question_id,
                "position": event.position,
                "vote": event.vote,
                "ts": event.ts.isoformat(),
            }
        )

    def record_usage(self, event: UsageEvent) -> None:
        if event.kind not in USAGE_KINDS:
            raise ValidationError(f"unknown usage event kind {event.kind!r}")
        self._append(
            {
                "type": "usage",
                "kind": event.kind,
                "session_id": event.session_id,
                "ts": event.ts.isoformat(),
            }
        )


def accuracy_report(events: Iterable[dict]) -> AccuracyReport:
    """Fold feedback events into top-1/top-3 accuracy.

    Later votes on the same (question, position) overwrite earlier ones.
    An empty log reports null fractions with n=0.
    """
    effective: dict[tuple[str, int], str] = {}
    for ev in events:
        if ev.get("type") == "feedback":
            effective[(ev["question_id"], ev["position"])] = ev["vote"]
    n_answers = len(effective)
    if n_answers == 0:
        return AccuracyReport(top1=None, n_answers=0, top3=None, n_questions=0)
    upvoted_answers = sum(1 for vote in effective.values() if vote == VOTE_UP)

    by_question: dict[str, list[str]] = {}
    for (qid, _), vote in effective.items():
        by_question.setdefault(qid, []).append(vote)
    n_questions = len(by_question)
    questions_with_up = sum(1 for votes in by_question.values() if VOTE_UP in votes)
    return AccuracyReport(
        top1=upvoted_answers / n_answers,
        n_answers=n_answers,
        top3=questions_with_up / n_questions,
        n_questions=n_questions,
    )


def usage_report(
    events: Iterable[dict],
    start: datetime | None = None,
    end: datetime | None = None,
    questions_asked: int | None = None,
) -> dict:
    """Counts per usage kind within [start, end), plus per-question ratios
    for the QA-feature events when ``questions_asked`` is supplied."""
    counts = {kind: 0 for kind in USAGE_KINDS}
    for ev in events:
        if ev.get("type") != "usage":
            continue
        ts = datetime.fromisoformat(ev["ts"])
        if start is not None and ts < start:
            continue
        if end is not None and ts >= end:
            continue
        kind = ev["kind"]
        if kind in counts:
            counts[kind] += 1
    report: dict = {"counts": counts}
    if questions_asked is not None:
        report["questions_asked"] = questions_asked
        if questions_asked > 0:
            report["ratios"] = {
                "answer_detail_opened_per_question": counts[USAGE_ANSWER_DETAIL_OPENED]
                / questions_asked,
                "related_question_expanded_per_question": counts[
                    USAGE_RELATED_QUESTION_EXPANDED
                ]
                / questions_asked,
            }
    return report
