"""Knowledge corpus and past-exam question bank storage.

File-backed, single-writer embedded store: paragraphs are ingested from
JSON lines and split into passages, exam questions from CSV worksheets,
figures from a JSON-lines manifest. Filtering and pagination back the
browse feature; JSON-lines export/import round-trips every field.

Wire formats
------------
* Paragraph file: JSON lines with keys ``id, source, heading, text,
  figure_refs``.
* Exam CSV header (exact, in order): ``year, exam_label, section, number,
  question, option_a, option_b, option_c, option_d, answer, explanation,
  figure_ids`` (figure_ids semicolon-separated; section case-insensitive).
* Figure manifest: JSON lines with ``id, caption, uri``.
"""

from __future__ import annotations

import csv
import json
import threading
from dataclasses import dataclass, field, asdict
from pathlib import Path

from .errors import NotFoundError, ValidationError
from . import segmenter

SOURCE_TEXTBOOK = "textbook_dataset"
SOURCE_ENCYCLOPEDIA = "simple_encyclopedia"
SOURCES = (SOURCE_TEXTBOOK, SOURCE_ENCYCLOPEDIA)

SECTION_OBJECTIVES = "objectives"
SECTION_THEORY = "theory"
SECTION_PRACTICALS = "practicals"
SECTIONS = (SECTION_OBJECTIVES, SECTION_THEORY, SECTION_PRACTICALS)
_SECTION_RANK = {s: i for i, s in enumerate(SECTIONS)}

YEAR_MIN, YEAR_MAX = 1993, 2021
MISSING_YEAR = 2010  # the exam did not happen

EXAM_CSV_HEADER = [
    "year", "exam_label", "section", "number", "question",
    "option_a", "option_b", "option_c", "option_d",
    "answer", "explanation", "figure_ids",
]

OPTION_KEYS = ("A", "B", "C", "D")

MAX_PAGE_SIZE = 100
REJECT_FRACTION_LIMIT = 0.10


@dataclass
class Paragraph:
    id: str
    source: str
    heading: str
    text: str
    figure_refs: list[str] = field(default_factory=list)


@dataclass
class Passage:
    id: str
    paragraph_id: str
    ordinal: int
    text: str
    sentence_count: int
    figure_refs: list[str] = field(default_factory=list)


@dataclass
class Figure:
    id: str
    caption: str
    uri: str


@dataclass
class ExamQuestion:
    id: str
    year: int
    exam_label: str
    section: str
    number: str
    text: str
    options: dict[str, str] | None = None
    answer: str = ""
    explanation: str | None = None
    figure_refs: list[str] = field(default_factory=list)
    topic: str | None = None


@dataclass
class QuestionFilter:
    year: int | None = None
    exam_label: str | None = None
    section: str | None = None
    topic: str | None = None
    page: int = 1
    page_size: int = 20

    def __post_init__(self) -> None:
        if self.page < 1:
            raise ValidationError("page must be >= 1")
        if not 1 <= self.page_size <= MAX_PAGE_SIZE:
            raise ValidationError(f"page_size must be in 1..{MAX_PAGE_SIZE}")
        if self.section is not None:
            section = self.section.lower()
            if section not in SECTIONS:
                raise ValidationError(f"unknown section {self.section!r}")
            self.section = section


@dataclass
class IngestReport:
    created: int = 0
    passages_created: int = 0
    rejected: list[tuple[int, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def _validate_year(value: str) -> int:
    try:
        year = int(value)
    except (TypeError, ValueError):
        raise ValidationError(f"year {value!r} is not an integer")
    if year == MISSING_YEAR:
        raise ValidationError(f"year {MISSING_YEAR}: the exam did not happen")
    if not YEAR_MIN <= year <= YEAR_MAX:
        raise ValidationError(f"year {year} outside {YEAR_MIN}..{YEAR_MAX}")
    return year


class CorpusStore:
    """In-memory store with JSON-lines persistence.

    Reads are concurrent; all mutations run under one writer lock, so
    concurrent ingestions serialize. Failed ingests commit nothing.
    """

    def __init__(self) -> None:
        self.paragraphs: dict[str, Paragraph] = {}
        self.passages: dict[str, Passage] = {}
        self.figures: dict[str, Figure] = {}
        self.questions: dict[str, ExamQuestion] = {}
        self._write_lock = threading.Lock()

    # ------------------------------------------------------------- ingestion

    def ingest_figures(self, path: str | Path) -> IngestReport:
        report = IngestReport()
        staged: dict[str, Figure] = {}
        for line_no, obj in _read_json_lines(path, report):
            if obj is None:
                continue
            fid = obj.get("id")
            if not fid or not isinstance(fid, str):
                report.rejected.append((line_no, "missing figure id"))
                continue
            if fid in self.figures or fid in staged:
                report.rejected.append((line_no, f"duplicate figure id {fid}"))
                continue
            staged[fid] = Figure(id=fid, caption=str(obj.get("caption", "")),
                                 uri=str(obj.get("uri", "")))
        with self._write_lock:
            self.figures.update(staged)
        report.created = len(staged)
        return report

    def ingest_paragraphs(self, path: str | Path, source: str | None = None) -> IngestReport:
        """Ingest a paragraph JSON-lines file; each paragraph is split into
        passages. Aborts (committing nothing) if more than 10% of lines fail."""
        if source is not None and source not in SOURCES:
            raise ValidationError(f"unknown source {source!r}")
        report = IngestReport()
        staged_paragraphs: dict[str, Paragraph] = {}
        staged_passages: dict[str, Passage] = {}
        total_lines = 0
        for line_no, obj in _read_json_lines(path, report):
            total_lines += 1
            if obj is None:
                continue
            pid = obj.get("id")
            text = obj.get("text")
            if not pid or not isinstance(pid, str):
                report.rejected.append((line_no, "missing paragraph id"))
                continue
            if not text or not isinstance(text, str):
                report.rejected.append((line_no, "empty text"))
                continue
            if pid in self.paragraphs or pid in staged_paragraphs:
                report.rejected.append((line_no, f"duplicate paragraph id {pid}"))
                continue
            line_source = obj.get("source", source)
            if line_source not in SOURCES:
                report.rejected.append((line_no, f"unknown source {line_source!r}"))
                continue
            figure_refs = obj.get("figure_refs") or []
            if not isinstance(figure_refs, list):
                report.rejected.append((line_no, "figure_refs must be a list"))
                continue
            figure_refs = [str(f) for f in figure_refs]
            for fid in figure_refs:
                if fid not in self.figures:
                    report.warnings.append(
                        f"line {line_no}: paragraph {pid} references unknown figure {fid}"
                    )
            paragraph = Paragraph(
                id=pid, source=line_source, heading=str(obj.get("heading", "")),
                text=text, figure_refs=figure_refs,
            )
            staged_paragraphs[pid] = paragraph
            sentences = segmenter.split_sentences(text)
            for draft in segmenter.make_passages(pid, sentences):
                staged_passages[draft.passage_id] = Passage(
                    id=draft.passage_id,
                    paragraph_id=pid,
                    ordinal=draft.ordinal,
                    text=draft.text,
                    sentence_count=draft.sentence_count,
                    figure_refs=list(figure_refs),
                )
        if total_lines and len(report.rejected) > REJECT_FRACTION_LIMIT * total_lines:
            raise ValidationError(
                f"{len(report.rejected)} of {total_lines} lines failed "
                f"(>{REJECT_FRACTION_LIMIT:.0%}); nothing ingested. "
                f"First failure: line {report.rejected[0][0]}: {report.rejected[0][1]}"
            )
        with self._write_lock:
            self.paragraphs.update(staged_paragraphs)
            self.passages.update(staged_passages)
        report.created = len(staged_paragraphs)
        report.passages_created = len(staged_passages)
        return report

    def ingest_exam_csv(self, path: str | Path) -> IngestReport:
        """Ingest one exam worksheet CSV; one ExamQuestion per valid row."""
        report = IngestReport()
        staged: dict[str, ExamQuestion] = {}
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                return report
            if [h.strip() for h in header] != EXAM_CSV_HEADER:
                raise ValidationError(
                    f"{path}: CSV header must be exactly {','.join(EXAM_CSV_HEADER)}"
                )
            for line_no, row in enumerate(reader, start=2):
                if not any(cell.strip() for cell in row):
                    continue
                try:
                    question = self._parse_exam_row(row, staged)
                except ValidationError as exc:
                    report.rejected.append((line_no, str(exc)))
                    continue
                for fid in question.figure_refs:
                    if fid not in self.figures:
                        report.warnings.append(
                            f"line {line_no}: question {question.id} references unknown figure {fid}"
                        )
                staged[question.id] = question
        with self._write_lock:
            self.questions.update(staged)
        report.created = len(staged)
        return report

    def _parse_exam_row(self, row: list[str], staged: dict[str, ExamQuestion]) -> ExamQuestion:
        if len(row) != len(EXAM_CSV_HEADER):
            raise ValidationError(f"expected {len(EXAM_CSV_HEADER)} columns, got {len(row)}")
        rec = dict(zip(EXAM_CSV_HEADER, (cell.strip() for cell in row)))
        year = _validate_year(rec["year"])
        section = rec["section"].lower()
        if section not in SECTIONS:
            raise ValidationError(f"unknown section {rec['section']!r}")
        if not rec["number"]:
            raise ValidationError("missing question number")
        if not rec["question"]:
            raise ValidationError("empty question text")
        qid = f"{year}:{rec['exam_label']}:{section}:{rec['number']}"
        if qid in self.questions or qid in staged:
            raise ValidationError(f"duplicate question id {qid}")

        options = None
        explanation = None
        answer = rec["answer"]
        if section == SECTION_OBJECTIVES:
            opts = {k: rec[f"option_{k.lower()}"] for k in OPTION_KEYS}
            missing = [k for k, v in opts.items() if not v]
            if missing:
                raise ValidationError(f"objectives row missing option {missing[0]}")
            options = opts
            answer = answer.upper()
            if answer not in OPTION_KEYS:
                raise ValidationError("invalid answer key")
            explanation = rec["explanation"] or None

        figure_refs = [f.strip() for f in rec["figure_ids"].split(";") if f.strip()]
        return ExamQuestion(
            id=qid, year=year, exam_label=rec["exam_label"], section=section,
            number=rec["number"], text=rec["question"], options=options,
            answer=answer, explanation=explanation, figure_refs=figure_refs,
        )

    # ------------------------------------------------------------- queries

    def filter_questions(self, qfilter: QuestionFilter) -> tuple[list[ExamQuestion], int]:
        """Records matching every provided criterion, ordered by
        (year desc, section, number), paginated. Returns (page, total)."""
        matches = [
            q for q in self.questions.values()
            if (qfilter.year is None or q.year == qfilter.year)
            and (qfilter.exam_label is None or q.exam_label == qfilter.exam_label)
            and (qfilter.section is None or q.section == qfilter.section)
            and (qfilter.topic is None or q.topic == qfilter.topic)
        ]
        matches.sort(key=lambda q: (-q.year, _SECTION_RANK[q.section], q.number))
        start = (qfilter.page - 1) * qfilter.page_size
        return matches[start : start + qfilter.page_size], len(matches)

    def question(self, question_id: str) -> ExamQuestion:
        try:
            return self.questions[question_id]
        except KeyError:
            raise NotFoundError(f"unknown question {question_id}") from None

    def passage(self, passage_id: str) -> Passage:
        try:
            return self.passages[passage_id]
        except KeyError:
            raise NotFoundError(f"unknown passage {passage_id}") from None

    def paragraph(self, paragraph_id: str) -> Paragraph:
        try:
            return self.paragraphs[paragraph_id]
        except KeyError:
            raise NotFoundError(f"unknown paragraph {paragraph_id}") from None

    def figure(self, figure_id: str) -> Figure | None:
        return self.figures.get(figure_id)

    def filter_values(self) -> dict[str, list]:
        """Distinct filterable values for UI dropdowns."""
        qs = self.questions.values()
        return {
            "years": sorted({q.year for q in qs}, reverse=True),
            "exam_labels": sorted({q.exam_label for q in qs}),
            "sections": [s for s in SECTIONS if any(q.section == s for q in qs)],
            "topics": sorted({q.topic for q in qs if q.topic is not None}),
        }

    def set_topic(self, question_id: str, topic: str) -> None:
        with self._write_lock:
            self.question(question_id).topic = topic

    # ------------------------------------------------------------- persistence

    def save(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        _write_json_lines(directory / "figures.jsonl", self.figures.values())
        _write_json_lines(directory / "paragraphs.jsonl", self.paragraphs.values())
        _write_json_lines(directory / "passages.jsonl", self.passages.values())
        _write_json_lines(directory / "questions.jsonl", self.questions.values())

    @classmethod
    def load(cls, directory: str | Path) -> "CorpusStore":
        directory = Path(directory)
        store = cls()
        for obj in _iter_json_lines(directory / "figures.jsonl"):
            store.figures[obj["id"]] = Figure(**obj)
        for obj in _iter_json_lines(directory / "paragraphs.jsonl"):
            store.paragraphs[obj["id"]] = Paragraph(**obj)
        for obj in _iter_json_lines(directory / "passages.jsonl"):
            store.passages[obj["id"]] = Passage(**obj)
        for obj in _iter_json_lines(directory / "questions.jsonl"):
            store.questions[obj["id"]] = ExamQuestion(**obj)
        return store

    def export_questions(self, path: str | Path) -> int:
        _write_json_lines(path, self.questions.values())
        return len(self.questions)

    def import_questions(self, path: str | Path) -> int:
        staged = {obj["id"]: ExamQuestion(**obj) for obj in _iter_json_lines(path)}
        with self._write_lock:
            self.questions.update(staged)
        return len(staged)


def _read_json_lines(path, report: IngestReport):
    """Yield (line_no, parsed object or None) per non-blank line; malformed
    lines are recorded as rejected and yielded with None so callers can
    still count them."""
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                report.rejected.append((line_no, f"malformed JSON: {exc.msg}"))
                yield line_no, None
                continue
            if not isinstance(obj, dict):
                report.rejected.append((line_no, "line is not a JSON object"))
                yield line_no, None
                continue
            yield line_no, obj


def _write_json_lines(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(asdict(record), ensure_ascii=False) + "\n")


def _iter_json_lines(path):
    path = Path(path)
    if not path.exists():
        return
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield json.loads(line)
