"""TF-IDF features over word unigrams and bigrams.

Tokenization: lowercase, maximal alphanumeric runs of length >= 2; bigrams
are adjacent token pairs joined by one space. Term weight is
``tf * (ln((1+N)/(1+df)) + 1)`` followed by L2 normalization of the
document vector; out-of-vocabulary terms are ignored.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np
from scipy import sparse

_TOKEN_RE = re.compile(r"[^\W_]{2,}", re.UNICODE)


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


def ngrams(text: str, ngram_range: tuple[int, int] = (1, 2)) -> list[str]:
    """Unigram and bigram terms of a document, in reading order."""
    tokens = tokenize(text)
    lo, hi = ngram_range
    terms: list[str] = []
    for n in range(lo, hi + 1):
        if n == 1:
            terms.extend(tokens)
        else:
            terms.extend(" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return terms


@dataclass
class TfidfVocabulary:
    """Frozen term -> index mapping plus document frequencies."""

    term_index: dict[str, int]
    doc_freq: np.ndarray  # df per index
    n_docs: int
    ngram_range: tuple[int, int] = (1, 2)

    @classmethod
    def fit(cls, corpus: list[str], ngram_range: tuple[int, int] = (1, 2)) -> "TfidfVocabulary":
        """Build the vocabulary from a document corpus.

        Indices are dense 0..V-1 assigned in sorted term order so the
        mapping is deterministic for a given corpus.
        """
        df: dict[str, int] = {}
        for doc in corpus:
            for term in set(ngrams(doc, ngram_range)):
                df[term] = df.get(term, 0) + 1
        terms = sorted(df)
        term_index = {t: i for i, t in enumerate(terms)}
        doc_freq = np.array([df[t] for t in terms], dtype=np.int64)
        return cls(term_index=term_index, doc_freq=doc_freq, n_docs=len(corpus),
                   ngram_range=ngram_range)

    @property
    def size(self) -> int:
        return len(self.term_index)

    def idf(self) -> np.ndarray:
        return np.log((1.0 + self.n_docs) / (1.0 + self.doc_freq)) + 1.0

    def vector(self, text: str) -> sparse.csr_matrix:
        """L2-normalized TF-IDF vector of one document, shape (1, V)."""
        counts: dict[int, int] = {}
        for term in ngrams(text, self.ngram_range):
            idx = self.term_index.get(term)
            if idx is not None:
                counts[idx] = counts.get(idx, 0) + 1
        if not counts:
            return sparse.csr_matrix((1, self.size), dtype=np.float64)
        idf = self.idf()
        indices = np.fromiter(sorted(counts), dtype=np.int64, count=len(counts))
        weights = np.array([counts[i] for i in indices], dtype=np.float64) * idf[indices]
        norm = math.sqrt(float(weights @ weights))
        if norm > 0:
            weights /= norm
        return sparse.csr_matrix(
            (weights, indices, np.array([0, len(indices)])), shape=(1, self.size)
        )

    def matrix(self, texts: list[str]) -> sparse.csr_matrix:
        """Stacked TF-IDF vectors, shape (len(texts), V)."""
        if not texts:
            return sparse.csr_matrix((0, self.size), dtype=np.float64)
        return sparse.vstack([self.vector(t) for t in texts], format="csr")

    def to_dict(self) -> dict:
        terms = sorted(self.term_index, key=self.term_index.get)
        return {
            "ngram_range": list(self.ngram_range),
            "n_docs": self.n_docs,
            "terms": terms,
            "doc_freq": self.doc_freq.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TfidfVocabulary":
        terms = data["terms"]
        return cls(
            term_index={t: i for i, t in enumerate(terms)},
            doc_freq=np.asarray(data["doc_freq"], dtype=np.int64),
            n_docs=int(data["n_docs"]),
            ngram_range=tuple(data["ngram_range"]),
        )


def tfidf_features(text: str, vocab: TfidfVocabulary) -> sparse.csr_matrix:
    """Module-level alias for ``vocab.vector``."""
    return vocab.vector(text)
