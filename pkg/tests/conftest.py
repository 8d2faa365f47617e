"""Shared fixture builders for the test suite."""

from __future__ import annotations

import pytest

from sciqa.corpus import CorpusStore
from sciqa.embedder import ReferenceEmbedder
from sciqa.qa import QaEngine, QuestionLog
from sciqa.vindex import IndexEntry, KIND_EXAM_QUESTION, KIND_PASSAGE, VectorIndex
from sciqa import synth


def build_store(tmp_path, n_paragraphs=40, per_section=4, seed=7, figure_ids=None):
    """A populated CorpusStore from synthetic wire-format files."""
    store = CorpusStore()
    if figure_ids:
        manifest = tmp_path / "figures.jsonl"
        synth.write_figure_manifest(manifest, figure_ids)
        store.ingest_figures(manifest)
    paragraphs = tmp_path / "paragraphs.jsonl"
    synth.write_paragraph_file(paragraphs, n_paragraphs, seed=seed, figure_ids=figure_ids)
    store.ingest_paragraphs(paragraphs)
    exams = tmp_path / "exams.csv"
    synth.write_exam_csv(exams, per_section=per_section, seed=seed)
    store.ingest_exam_csv(exams)
    return store


def build_engine(store, dim=64, question_log=None, **thresholds):
    """Index the store's passages and questions and wire up a QaEngine."""
    embedder = ReferenceEmbedder(dim=dim)
    passages = sorted(store.passages.values(), key=lambda p: p.id)
    passage_index = VectorIndex.build(
        IndexEntry(id=p.id, vector=embedder.embed(p.text), kind=KIND_PASSAGE)
        for p in passages
    )
    questions = sorted(store.questions.values(), key=lambda q: q.id)
    question_index = VectorIndex.build(
        IndexEntry(id=q.id, vector=embedder.embed(q.text), kind=KIND_EXAM_QUESTION)
        for q in questions
    )
    return QaEngine(
        embedder=embedder,
        passage_index=passage_index,
        question_index=question_index,
        store=store,
        question_log=question_log or QuestionLog(),
        **thresholds,
    )


@pytest.fixture
def small_store(tmp_path):
    return build_store(tmp_path)
