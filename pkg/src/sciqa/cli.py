"""Command-line entry point.

State lives in a data directory: corpus JSONL files under ``corpus/``,
index snapshots, the topic model, the question log, and the event log.
Embedding configuration comes from EMBED_PROVIDER / EMBED_DIM / EMBED_URL /
EMBED_TIMEOUT_MS, overridable with flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import topics as topics_mod
from .analytics import EventLog, accuracy_report, usage_report
from .corpus import CorpusStore
from .embedder import EmbedderConfig, make_embedder
from .errors import SciqaError
from .qa import QaEngine, QuestionLog
from .vindex import (
    DEFAULT_PASSAGE_THRESHOLD,
    DEFAULT_QUESTION_THRESHOLD,
    IndexEntry,
    KIND_EXAM_QUESTION,
    KIND_PASSAGE,
    VectorIndex,
)

CORPUS_DIR = "corpus"
PASSAGE_INDEX = "passage_index.kw4s"
QUESTION_INDEX = "question_index.kw4s"
TOPIC_DATASET = "topic_dataset.csv"
TOPIC_MODEL = "topic_model.json"
TOPIC_CV_REPORT = "topic_cv_report.json"
TOPIC_CONFUSION = "topic_confusion.csv"
EVENTS_LOG = "events.jsonl"
QUESTION_LOG = "question_log.jsonl"


def _embedder_from_args(args) -> tuple[EmbedderConfig, object]:
    config = EmbedderConfig.from_env()
    overrides = {}
    if args.embed_provider:
        overrides["provider"] = args.embed_provider
    if args.embed_dim:
        overrides["dim"] = args.embed_dim
    if args.embed_url:
        overrides["url"] = args.embed_url
    if args.embed_timeout_ms:
        overrides["timeout_ms"] = args.embed_timeout_ms
    if overrides:
        merged = {**config.__dict__, **overrides}
        config = EmbedderConfig(**merged)
    return config, make_embedder(config)


def _load_store(data_dir: Path) -> CorpusStore:
    return CorpusStore.load(data_dir / CORPUS_DIR)


def cmd_ingest_paragraphs(args) -> int:
    data_dir = Path(args.data_dir)
    store = _load_store(data_dir)
    if args.figures:
        fig_report = store.ingest_figures(args.figures)
        print(f"figures: {fig_report.created} ingested, {len(fig_report.rejected)} rejected")
    report = store.ingest_paragraphs(args.input, source=args.source)
    store.save(data_dir / CORPUS_DIR)
    for line_no, reason in report.rejected:
        print(f"rejected line {line_no}: {reason}", file=sys.stderr)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"paragraphs: {report.created}, passages: {report.passages_created}")
    return 0


def cmd_ingest_exams(args) -> int:
    data_dir = Path(args.data_dir)
    store = _load_store(data_dir)
    total = 0
    for path in args.inputs:
        report = store.ingest_exam_csv(path)
        for line_no, reason in report.rejected:
            print(f"{path}: rejected line {line_no}: {reason}", file=sys.stderr)
        total += report.created
    store.save(data_dir / CORPUS_DIR)
    print(f"questions: {total}")
    return 0


def cmd_ingest_topics(args) -> int:
    data_dir = Path(args.data_dir)
    dataset = topics_mod.load_topic_csv(args.input)
    data_dir.mkdir(parents=True, exist_ok=True)
    (data_dir / TOPIC_DATASET).write_text(Path(args.input).read_text(encoding="utf-8"),
                                          encoding="utf-8")
    print(f"topic samples: {len(dataset.samples)}, labels: {len(dataset.labels)}")
    return 0


def cmd_build_index(args) -> int:
    data_dir = Path(args.data_dir)
    store = _load_store(data_dir)
    _, embedder = _embedder_from_args(args)

    passages = sorted(store.passages.values(), key=lambda p: p.id)
    vectors = embedder.embed_batch([p.text for p in passages])
    passage_index = VectorIndex.build(
        IndexEntry(id=p.id, vector=v, kind=KIND_PASSAGE)
        for p, v in zip(passages, vectors)
    )
    passage_index.save(data_dir / PASSAGE_INDEX)

    questions = sorted(store.questions.values(), key=lambda q: q.id)
    qvectors = embedder.embed_batch([q.text for q in questions])
    question_index = VectorIndex.build(
        IndexEntry(id=q.id, vector=v, kind=KIND_EXAM_QUESTION)
        for q, v in zip(questions, qvectors)
    )
    question_index.save(data_dir / QUESTION_INDEX)
    print(f"passage index: {len(passage_index)} entries, "
          f"question index: {len(question_index)} entries")
    return 0


def cmd_train_topics(args) -> int:
    data_dir = Path(args.data_dir)
    dataset = topics_mod.load_topic_csv(data_dir / TOPIC_DATASET)
    train_set, test_set = topics_mod.stratified_split(
        dataset, test_fraction=args.test_fraction, seed=args.seed
    )
    model, cv_report = topics_mod.train(
        train_set, featurizer=args.featurizer, seed=args.seed
    )
    report = topics_mod.evaluate(model, test_set.samples)
    model.save(data_dir / TOPIC_MODEL)
    (data_dir / TOPIC_CV_REPORT).write_text(json.dumps(cv_report, indent=2))
    (data_dir / TOPIC_CONFUSION).write_text(report.confusion_csv())
    print(f"best C: {cv_report['best_c']}, held-out UAR: {report.uar:.4f}")
    return 0


def cmd_classify_bank(args) -> int:
    data_dir = Path(args.data_dir)
    store = _load_store(data_dir)
    model = topics_mod.TopicModel.load(data_dir / TOPIC_MODEL)
    for qid in sorted(store.questions):
        label, _ = topics_mod.predict(model, store.questions[qid].text)
        store.set_topic(qid, label)
    store.save(data_dir / CORPUS_DIR)
    print(f"classified {len(store.questions)} questions")
    return 0


def cmd_report(args) -> int:
    data_dir = Path(args.data_dir)
    if args.accuracy or args.usage:
        events = EventLog(data_dir / EVENTS_LOG).events()
        if args.accuracy:
            print(json.dumps(accuracy_report(events).to_dict(), indent=2))
        if args.usage:
            asked = len(QuestionLog(data_dir / QUESTION_LOG))
            print(json.dumps(usage_report(events, questions_asked=asked), indent=2))
    if args.distribution:
        store = _load_store(data_dir)
        dist = topics_mod.topic_distribution(
            store.questions.values(), (args.from_year, args.to_year)
        )
        print(json.dumps(dist, indent=2))
    return 0


def build_engine(data_dir: Path, embedder) -> "tuple[CorpusStore, QaEngine, EventLog]":
    """Load persisted state and assemble the QA engine (shared by serve and tests)."""
    store = _load_store(data_dir)
    passage_snapshot = data_dir / PASSAGE_INDEX
    question_snapshot = data_dir / QUESTION_INDEX
    for snapshot in (passage_snapshot, question_snapshot):
        if not snapshot.exists():
            raise SciqaError(f"missing index snapshot {snapshot}; run build-index first")
    engine = QaEngine(
        embedder=embedder,
        passage_index=VectorIndex.load(passage_snapshot),
        question_index=VectorIndex.load(question_snapshot),
        store=store,
        question_log=QuestionLog(data_dir / QUESTION_LOG),
        passage_threshold=DEFAULT_PASSAGE_THRESHOLD,
        question_threshold=DEFAULT_QUESTION_THRESHOLD,
    )
    return store, engine, EventLog(data_dir / EVENTS_LOG)


def cmd_serve(args) -> int:
    import uvicorn

    from .service import AppState, create_app

    data_dir = Path(args.data_dir)
    _, embedder = _embedder_from_args(args)
    store, engine, events = build_engine(data_dir, embedder)
    app = create_app(AppState(store=store, engine=engine, events=events))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _add_embed_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--embed-provider", choices=["reference", "remote"])
    parser.add_argument("--embed-dim", type=int)
    parser.add_argument("--embed-url")
    parser.add_argument("--embed-timeout-ms", type=int)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="sciqa")
    parser.add_argument("--data-dir", default="data", help="state directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest-paragraphs", help="ingest a paragraph JSONL file")
    p.add_argument("--input", required=True)
    p.add_argument("--source", default="textbook_dataset")
    p.add_argument("--figures", help="optional figure manifest JSONL")
    p.set_defaults(func=cmd_ingest_paragraphs)

    p = sub.add_parser("ingest-exams", help="ingest exam-bank CSV files")
    p.add_argument("--input", dest="inputs", required=True, action="append")
    p.set_defaults(func=cmd_ingest_exams)

    p = sub.add_parser("ingest-topics", help="register a topic dataset CSV")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_ingest_topics)

    p = sub.add_parser("build-index", help="embed passages and questions, write snapshots")
    _add_embed_flags(p)
    p.set_defaults(func=cmd_build_index)

    p = sub.add_parser("train-topics", help="train the topic classifier")
    p.add_argument("--featurizer", choices=["tfidf", "embedding"], default="tfidf")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--test-fraction", type=float, default=0.2)
    p.set_defaults(func=cmd_train_topics)

    p = sub.add_parser("classify-bank", help="assign topics to all exam questions")
    p.set_defaults(func=cmd_classify_bank)

    p = sub.add_parser("report", help="print analytics reports")
    p.add_argument("--accuracy", action="store_true")
    p.add_argument("--usage", action="store_true")
    p.add_argument("--distribution", action="store_true")
    p.add_argument("--from-year", type=int, default=2011)
    p.add_argument("--to-year", type=int, default=2020)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    _add_embed_flags(p)
    p.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SciqaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
