#!/usr/bin/env python3
"""Walkthrough: the full ask flow against a synthetic corpus.

Ingests generated paragraphs and a generated exam bank, indexes both with
the reference embedder, then answers a question with up to 3 passage cards
and up to 5 related past questions.
"""

import json
import tempfile
from pathlib import Path

from sciqa.corpus import CorpusStore
from sciqa.embedder import ReferenceEmbedder
from sciqa.qa import AskRequest, QaEngine, QuestionLog
from sciqa.synth import write_exam_csv, write_paragraph_file
from sciqa.vindex import IndexEntry, KIND_EXAM_QUESTION, KIND_PASSAGE, VectorIndex

SKY = ("Blue is the color of the Earth's sky and sea. Earth looks blue when "
       "seen from outer space by astronauts.")

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    store = CorpusStore()

    write_paragraph_file(tmp / "paragraphs.jsonl", 50, seed=6)
    with open(tmp / "paragraphs.jsonl", "a", encoding="utf-8") as fh:
        fh.write(json.dumps({"id": "sky", "source": "simple_encyclopedia",
                             "heading": "Sky", "text": SKY, "figure_refs": []}) + "\n")
    report = store.ingest_paragraphs(tmp / "paragraphs.jsonl")
    write_exam_csv(tmp / "exams.csv", per_section=3, seed=6)
    exam_report = store.ingest_exam_csv(tmp / "exams.csv")
    print(f"Ingested {report.created} paragraphs -> {report.passages_created} passages, "
          f"{exam_report.created} exam questions\n")

    embedder = ReferenceEmbedder(dim=256)
    passage_index = VectorIndex.build(
        IndexEntry(p.id, embedder.embed(p.text), KIND_PASSAGE)
        for p in store.passages.values()
    )
    question_index = VectorIndex.build(
        IndexEntry(q.id, embedder.embed(q.text), KIND_EXAM_QUESTION)
        for q in store.questions.values()
    )
    engine = QaEngine(embedder, passage_index, question_index, store, QuestionLog())

    response = engine.ask(AskRequest(user_id="demo", question="Why is the sky blue"))
    print(f"Q: Why is the sky blue   (record {response.question_record_id})")
    print(f"unanswerable = {response.unanswerable}")
    for card in response.answers:
        print(f"\n  answer [{card.confidence:.3f}] {card.passage_text}")
        print(f"    from paragraph: {card.paragraph_text[:70]}...")
    for card in response.related:
        print(f"\n  related [{card.confidence:.3f}] ({card.year} {card.section}) "
              f"{card.question_text}")

    print("\nHistory for 'demo':",
          [item["question"] for item in engine.history("demo")])
