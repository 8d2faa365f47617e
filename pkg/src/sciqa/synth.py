"""Seeded synthetic fixtures: paragraph corpora, exam banks, topic datasets,
and event logs.

The real knowledge sources and exam archives are not redistributable, so
every desk-scale run and test works against generated stand-ins that match
the wire formats exactly. All generators are deterministic for a given
seed.
"""

from __future__ import annotations

import csv
import json
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from .analytics import USAGE_KINDS
from .corpus import EXAM_CSV_HEADER, MISSING_YEAR, SECTIONS, YEAR_MAX, YEAR_MIN

EXAM_YEARS = tuple(y for y in range(YEAR_MIN, YEAR_MAX + 1) if y != MISSING_YEAR)

_NOUNS = [
    "matter", "energy", "cell", "plant", "animal", "force", "magnet", "acid",
    "base", "soil", "water", "light", "sound", "heat", "metal", "mineral",
    "atom", "molecule", "organism", "tissue", "volcano", "climate", "crop",
    "nutrient", "electron", "circuit", "pressure", "velocity", "enzyme",
    "glucose", "oxygen", "carbon", "nitrogen", "membrane", "species",
]
_VERBS = [
    "absorbs", "releases", "transforms", "conducts", "attracts", "repels",
    "dissolves", "reacts with", "supports", "produces", "transports",
    "stores", "transfers", "reflects", "converts", "contains", "generates",
]
_ADJECTIVES = [
    "kinetic", "potential", "chemical", "physical", "magnetic", "electrical",
    "thermal", "organic", "inorganic", "soluble", "dense", "elastic",
    "renewable", "fertile", "acidic", "alkaline", "luminous",
]

_BASE_TIME = datetime(2023, 1, 1, tzinfo=timezone.utc)


def make_sentence(rng: np.random.Generator) -> str:
    subject = rng.choice(_NOUNS)
    verb = rng.choice(_VERBS)
    adjective = rng.choice(_ADJECTIVES)
    obj = rng.choice(_NOUNS)
    terminal = rng.choice([".", ".", ".", "!", "?"])
    return f"The {adjective} {subject} {verb} the {obj}{terminal}".capitalize()


def make_paragraph_text(rng: np.random.Generator, n_sentences: int) -> str:
    return " ".join(make_sentence(rng) for _ in range(n_sentences))


def write_paragraph_file(
    path: str | Path,
    n_paragraphs: int,
    seed: int = 0,
    source: str = "textbook_dataset",
    figure_ids: list[str] | None = None,
) -> int:
    """Write a paragraph JSON-lines fixture; returns paragraph count."""
    rng = np.random.default_rng(seed)
    figure_ids = figure_ids or []
    with open(path, "w", encoding="utf-8") as fh:
        for i in range(n_paragraphs):
            refs = []
            if figure_ids and rng.random() < 0.2:
                refs = [str(rng.choice(figure_ids))]
            obj = {
                "id": f"para-{seed}-{i:06d}",
                "source": source,
                "heading": f"Lesson {i % 40 + 1}",
                "text": make_paragraph_text(rng, int(rng.integers(1, 9))),
                "figure_refs": refs,
            }
            fh.write(json.dumps(obj) + "\n")
    return n_paragraphs


def write_figure_manifest(path: str | Path, figure_ids: list[str]) -> int:
    with open(path, "w", encoding="utf-8") as fh:
        for fid in figure_ids:
            fh.write(
                json.dumps(
                    {"id": fid, "caption": f"Diagram {fid}", "uri": f"figures/{fid}.png"}
                )
                + "\n"
            )
    return len(figure_ids)


def write_exam_csv(
    path: str | Path,
    years: tuple[int, ...] = EXAM_YEARS,
    per_section: int = 4,
    seed: int = 0,
    topics: list[str] | None = None,
) -> int:
    """Write a synthetic exam-bank CSV covering the given years; returns row count."""
    rng = np.random.default_rng(seed)
    rows = 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(EXAM_CSV_HEADER)
        for year in years:
            exam_label = f"WASSCE {year}"
            for section in SECTIONS:
                for number in range(1, per_section + 1):
                    question = make_sentence(rng).rstrip(".!?") + "?"
                    if section == "objectives":
                        options = [f"The {rng.choice(_NOUNS)}" for _ in range(4)]
                        answer = str(rng.choice(["A", "B", "C", "D"]))
                        explanation = make_sentence(rng)
                    else:
                        options = ["", "", "", ""]
                        answer = make_sentence(rng)
                        explanation = ""
                    writer.writerow(
                        [year, exam_label, section, str(number), question]
                        + options
                        + [answer, explanation, ""]
                    )
                    rows += 1
    return rows


def separable_topic_samples(
    labels: list[str], per_label: int = 20, seed: int = 0, words_per_sample: int = 8
) -> list[tuple[str, str]]:
    """Linearly separable samples: each label draws from its own keyword
    vocabulary plus a small shared filler pool."""
    rng = np.random.default_rng(seed)
    shared = ["the", "process", "system"]
    samples: list[tuple[str, str]] = []
    for li, label in enumerate(labels):
        vocab = [f"kw{li:02d}x{j}" for j in range(6)]
        for _ in range(per_label):
            words = [str(rng.choice(vocab)) for _ in range(words_per_sample - 2)]
            words += [str(rng.choice(shared)) for _ in range(2)]
            rng.shuffle(words)
            samples.append((" ".join(words), label))
    return samples


def write_topic_csv(path: str | Path, samples: list[tuple[str, str]]) -> int:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["topic", "passage"])
        for text, label in samples:
            writer.writerow([label, text])
    return len(samples)


def feedback_fixture_events(
    n_questions_with_up: int = 95,
    n_questions_down_only: int = 14,
    n_answers: int = 197,
    n_upvotes: int = 143,
) -> list[dict]:
    """A feedback log with exact vote arithmetic.

    Defaults reproduce 197 voted answers of which 143 were upvoted and
    109 voted questions of which 95 have at least one upvote.
    """
    n_questions = n_questions_with_up + n_questions_down_only
    events: list[dict] = []
    ts = _BASE_TIME

    def add(qid: str, position: int, vote: str) -> None:
        nonlocal ts
        events.append(
            {"type": "feedback", "question_id": qid, "position": position,
             "vote": vote, "ts": ts.isoformat()}
        )
        ts += timedelta(seconds=1)

    for i in range(n_questions_with_up):
        add(f"q-{i + 1:08d}", 1, "up")
    for i in range(n_questions_with_up, n_questions):
        add(f"q-{i + 1:08d}", 1, "down")

    extra_votes = n_answers - n_questions
    extra_ups = n_upvotes - n_questions_with_up
    if extra_votes < 0 or extra_ups < 0 or extra_ups > extra_votes:
        raise ValueError("infeasible vote arithmetic")
    if extra_votes > 2 * n_questions_with_up:
        raise ValueError("not enough free answer positions")
    placed = 0
    for position in (2, 3):
        for i in range(n_questions_with_up):
            if placed >= extra_votes:
                break
            add(f"q-{i + 1:08d}", position, "up" if placed < extra_ups else "down")
            placed += 1
    return events


def usage_fixture_events(counts: dict[str, int] | None = None) -> list[dict]:
    """A usage log with exact per-kind counts (defaults: the deployment
    analytics counts 2173/1219/931/237/174/104)."""
    if counts is None:
        counts = dict(zip(USAGE_KINDS, (2173, 1219, 931, 237, 174, 104)))
    events: list[dict] = []
    ts = _BASE_TIME
    for kind, count in counts.items():
        for _ in range(count):
            events.append(
                {"type": "usage", "kind": kind, "session_id": "fixture", "ts": ts.isoformat()}
            )
            ts += timedelta(seconds=1)
    return events


def random_unit_vectors(n: int, dim: int, seed: int = 0) -> np.ndarray:
    """Seeded random unit vectors, float32, shape (n, dim)."""
    rng = np.random.default_rng(seed)
    vecs = rng.standard_normal((n, dim))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    return vecs.astype(np.float32)
