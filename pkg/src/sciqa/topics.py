"""Syllabus-topic classifier: training, prediction, and reports.

Ties together the TF-IDF (or hashed-embedding) featurizer and the
one-vs-rest linear SVM: stratified 80:20 splitting, 5-fold cross-validated
choice of the regularization constant by mean unweighted average recall
(UAR), confusion matrices, and topic-distribution reports over the exam
bank. Trained models serialize to a versioned JSON artifact.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
from scipy import sparse

from .embedder import ReferenceEmbedder
from .errors import ValidationError
from .svm import DEFAULT_C_GRID, DEFAULT_EPOCHS, decision_scores, train_one_vs_rest
from .tfidf import TfidfVocabulary

MODEL_FORMAT_VERSION = 1
FEATURIZER_TFIDF = "tfidf"
FEATURIZER_EMBEDDING = "embedding"


def default_topic_labels() -> list[str]:
    """The 48-topic syllabus label list shipped with the package."""
    with resources.files("sciqa.data").joinpath("syllabus_topics.json").open() as fh:
        return json.load(fh)["topics"]


@dataclass
class TopicDataset:
    """Labelled (passage text, topic label) samples over a fixed label set."""

    samples: list[tuple[str, str]]
    labels: list[str]

    def __post_init__(self) -> None:
        label_set = set(self.labels)
        for _, label in self.samples:
            if label not in label_set:
                raise ValidationError(f"sample label {label!r} is not in the label set")

    def label_counts(self) -> dict[str, int]:
        counts = {label: 0 for label in self.labels}
        for _, label in self.samples:
            counts[label] += 1
        return counts


def load_topic_csv(path: str | Path, labels: list[str] | None = None) -> TopicDataset:
    """Read a topic dataset CSV with columns ``topic,passage``.

    When ``labels`` is omitted, the label set is the distinct topics in file
    order extended to the shipped syllabus list if all of them appear there.
    """
    samples: list[tuple[str, str]] = []
    seen: list[str] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames[:2]] != ["topic", "passage"]:
            raise ValidationError(f"{path}: expected CSV header 'topic,passage'")
        for row in reader:
            topic = (row.get("topic") or "").strip()
            passage = (row.get("passage") or "").strip()
            if not topic or not passage:
                continue
            samples.append((passage, topic))
            if topic not in seen:
                seen.append(topic)
    if labels is None:
        shipped = default_topic_labels()
        labels = shipped if set(seen) <= set(shipped) else seen
    return TopicDataset(samples=samples, labels=labels)


@dataclass
class TopicModel:
    """Trained one-vs-rest linear classifier plus featurizer state."""

    labels: list[str]
    featurizer_kind: str
    weights: np.ndarray  # (K, V)
    bias: np.ndarray  # (K,)
    vocab: TfidfVocabulary | None = None
    embed_dim: int | None = None
    metadata: dict = field(default_factory=dict)

    def featurize(self, texts: list[str]):
        if self.featurizer_kind == FEATURIZER_TFIDF:
            return self.vocab.matrix(texts)
        return ReferenceEmbedder(dim=self.embed_dim).embed_batch(texts).astype(np.float64)

    def save(self, path: str | Path) -> None:
        doc = {
            "format_version": MODEL_FORMAT_VERSION,
            "labels": self.labels,
            "featurizer": (
                {"kind": FEATURIZER_TFIDF, **self.vocab.to_dict()}
                if self.featurizer_kind == FEATURIZER_TFIDF
                else {"kind": FEATURIZER_EMBEDDING, "dim": self.embed_dim}
            ),
            "weights": self.weights.tolist(),
            "bias": self.bias.tolist(),
            "metadata": self.metadata,
        }
        Path(path).write_text(json.dumps(doc))

    @classmethod
    def load(cls, path: str | Path) -> "TopicModel":
        doc = json.loads(Path(path).read_text())
        if doc.get("format_version") != MODEL_FORMAT_VERSION:
            raise ValidationError(f"unsupported model format version {doc.get('format_version')}")
        feat = doc["featurizer"]
        if feat["kind"] == FEATURIZER_TFIDF:
            vocab = TfidfVocabulary.from_dict(feat)
            return cls(
                labels=doc["labels"],
                featurizer_kind=FEATURIZER_TFIDF,
                weights=np.asarray(doc["weights"], dtype=np.float64),
                bias=np.asarray(doc["bias"], dtype=np.float64),
                vocab=vocab,
                metadata=doc.get("metadata", {}),
            )
        return cls(
            labels=doc["labels"],
            featurizer_kind=FEATURIZER_EMBEDDING,
            weights=np.asarray(doc["weights"], dtype=np.float64),
            bias=np.asarray(doc["bias"], dtype=np.float64),
            embed_dim=int(feat["dim"]),
            metadata=doc.get("metadata", {}),
        )


def stratified_split(
    dataset: TopicDataset, test_fraction: float = 0.2, seed: int = 0
) -> tuple[TopicDataset, TopicDataset]:
    """Per-class shuffled split; test share within one sample of the target."""
    if not 0.0 < test_fraction < 1.0:
        raise ValidationError("test_fraction must be in (0, 1)")
    for label, count in dataset.label_counts().items():
        if 0 < count < 2:
            raise ValidationError(f"label {label!r} has {count} sample; need >= 2 to stratify")
    rng = np.random.default_rng(seed)
    by_label: dict[str, list[int]] = {}
    for i, (_, label) in enumerate(dataset.samples):
        by_label.setdefault(label, []).append(i)
    test_idx: set[int] = set()
    for label in sorted(by_label):
        idx = np.array(by_label[label])
        rng.shuffle(idx)
        n_test = int(round(test_fraction * len(idx)))
        n_test = min(max(n_test, 1), len(idx) - 1)
        test_idx.update(idx[:n_test].tolist())
    train_samples = [s for i, s in enumerate(dataset.samples) if i not in test_idx]
    test_samples = [s for i, s in enumerate(dataset.samples) if i in test_idx]
    return (
        TopicDataset(samples=train_samples, labels=dataset.labels),
        TopicDataset(samples=test_samples, labels=dataset.labels),
    )


def _stratified_folds(
    labels_idx: np.ndarray, n_folds: int, seed: int, label_names: list[str]
) -> tuple[list[np.ndarray], list[str]]:
    """Round-robin per-class fold assignment; classes below n_folds samples
    are left out of every fold (they cannot be stratified) with a warning."""
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(n_folds)]
    excluded: list[str] = []
    for cls in np.unique(labels_idx):
        idx = np.flatnonzero(labels_idx == cls)
        if idx.size < n_folds:
            excluded.append(label_names[int(cls)])
            continue
        rng.shuffle(idx)
        for j, i in enumerate(idx):
            folds[j % n_folds].append(int(i))
    if excluded:
        warnings.warn(
            f"{len(excluded)} label(s) with fewer than {n_folds} samples excluded "
            f"from CV stratification: {', '.join(sorted(excluded))}"
        )
    return [np.array(sorted(f), dtype=np.int64) for f in folds], excluded


@dataclass
class EvalReport:
    uar: float
    per_class_recall: dict[str, float]
    confusion: np.ndarray  # (K, K), rows = true labels
    labels: list[str]
    warnings: list[str] = field(default_factory=list)

    def confusion_row_normalized(self) -> np.ndarray:
        totals = self.confusion.sum(axis=1, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = np.where(totals > 0, self.confusion / totals, 0.0)
        return out

    def confusion_csv(self) -> str:
        lines = ["true\\predicted," + ",".join(self.labels)]
        for i, label in enumerate(self.labels):
            lines.append(label + "," + ",".join(str(int(c)) for c in self.confusion[i]))
        return "\n".join(lines) + "\n"


def uar_from_confusion(confusion: np.ndarray, labels: list[str]) -> tuple[float, dict[str, float], list[str]]:
    """Mean of per-class recalls over classes that appear in the rows."""
    recalls: dict[str, float] = {}
    notes: list[str] = []
    for i, label in enumerate(labels):
        total = confusion[i].sum()
        if total == 0:
            notes.append(f"class {label!r} absent from test set; excluded from UAR")
            continue
        recalls[label] = float(confusion[i, i] / total)
    if not recalls:
        raise ValidationError("no test samples to evaluate")
    return float(np.mean(list(recalls.values()))), recalls, notes


def train(
    dataset: TopicDataset,
    featurizer: str = FEATURIZER_TFIDF,
    c_grid: tuple[float, ...] = DEFAULT_C_GRID,
    seed: int = 0,
    epochs: int = DEFAULT_EPOCHS,
    embed_dim: int = 256,
    n_folds: int = 5,
) -> tuple[TopicModel, dict]:
    """Cross-validated training; returns the refit model and a CV report.

    The best C is the grid value with the highest mean fold UAR (ties go to
    the smaller C); the final model is refit on all provided data.
    """
    texts = [t for t, _ in dataset.samples]
    sample_labels = [l for _, l in dataset.samples]
    if len(set(sample_labels)) < 2:
        raise ValidationError("need >= 2 classes")
    label_pos = {label: i for i, label in enumerate(dataset.labels)}
    y = np.array([label_pos[l] for l in sample_labels], dtype=np.int64)
    n_classes = len(dataset.labels)

    if featurizer == FEATURIZER_TFIDF:
        vocab = TfidfVocabulary.fit(texts)
        X = vocab.matrix(texts)
    elif featurizer == FEATURIZER_EMBEDDING:
        vocab = None
        X = ReferenceEmbedder(dim=embed_dim).embed_batch(texts).astype(np.float64)
    else:
        raise ValidationError(f"unknown featurizer {featurizer!r}")

    folds, excluded = _stratified_folds(y, n_folds, seed, dataset.labels)
    grid_report: dict[str, dict] = {}
    mean_uars: list[tuple[float, float]] = []  # (mean_uar, c)
    for c_value in c_grid:
        fold_uars: list[float] = []
        for held_out in range(n_folds):
            test_idx = folds[held_out]
            train_idx = np.concatenate([folds[j] for j in range(n_folds) if j != held_out])
            if test_idx.size == 0 or train_idx.size == 0:
                continue
            W, b = train_one_vs_rest(X[train_idx], y[train_idx], n_classes, c_value,
                                     epochs=epochs, seed=seed)
            pred = np.argmax(decision_scores(X[test_idx], W, b), axis=1)
            confusion = np.zeros((n_classes, n_classes), dtype=np.int64)
            for true_c, pred_c in zip(y[test_idx], pred):
                confusion[true_c, pred_c] += 1
            uar, _, _ = uar_from_confusion(confusion, dataset.labels)
            fold_uars.append(uar)
        mean_uar = float(np.mean(fold_uars)) if fold_uars else 0.0
        grid_report[str(c_value)] = {"fold_uars": fold_uars, "mean_uar": mean_uar}
        mean_uars.append((mean_uar, c_value))

    best_c = max(mean_uars, key=lambda mc: (mc[0], -mc[1]))[1]
    W, b = train_one_vs_rest(X, y, n_classes, best_c, epochs=epochs, seed=seed)

    cv_report = {
        "grid": grid_report,
        "best_c": best_c,
        "n_folds": n_folds,
        "seed": seed,
        "excluded_labels": excluded,
    }
    model = TopicModel(
        labels=list(dataset.labels),
        featurizer_kind=featurizer,
        weights=W,
        bias=b,
        vocab=vocab,
        embed_dim=embed_dim if featurizer == FEATURIZER_EMBEDDING else None,
        metadata={"seed": seed, "best_c": best_c, "epochs": epochs, "cv": cv_report},
    )
    return model, cv_report


def predict(model: TopicModel, text: str) -> tuple[str, dict[str, float]]:
    """Argmax topic label plus per-class decision scores (ties -> lowest index)."""
    X = model.featurize([text])
    scores = decision_scores(X, model.weights, model.bias)[0]
    return model.labels[int(np.argmax(scores))], dict(zip(model.labels, scores.tolist()))


def evaluate(model: TopicModel, test_samples: list[tuple[str, str]]) -> EvalReport:
    """UAR and confusion matrix (rows = true labels) on held-out samples."""
    label_pos = {label: i for i, label in enumerate(model.labels)}
    for _, label in test_samples:
        if label not in label_pos:
            raise ValidationError(f"test label {label!r} is outside the model's label set")
    X = model.featurize([t for t, _ in test_samples])
    pred = np.argmax(decision_scores(X, model.weights, model.bias), axis=1)
    n_classes = len(model.labels)
    confusion = np.zeros((n_classes, n_classes), dtype=np.int64)
    for (_, label), pred_c in zip(test_samples, pred):
        confusion[label_pos[label], pred_c] += 1
    uar, recalls, notes = uar_from_confusion(confusion, model.labels)
    if notes:
        warnings.warn(f"{len(notes)} class(es) absent from test set; excluded from UAR")
    return EvalReport(uar=uar, per_class_recall=recalls, confusion=confusion,
                      labels=list(model.labels), warnings=notes)


def topic_distribution(questions, year_range: tuple[int, int]) -> list[dict]:
    """Topic counts and fractions over questions in the year range, sorted
    by count descending (ties alphabetical). Fractions sum to 1."""
    lo, hi = year_range
    counts: dict[str, int] = {}
    for q in questions:
        if not lo <= q.year <= hi:
            continue
        if q.topic is None:
            raise ValidationError(f"question {q.id} has no assigned topic")
        counts[q.topic] = counts.get(q.topic, 0) + 1
    total = sum(counts.values())
    if total == 0:
        return []
    return [
        {"topic": topic, "count": count, "fraction": count / total}
        for topic, count in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    ]
