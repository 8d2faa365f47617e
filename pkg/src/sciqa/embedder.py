"""Embedding providers behind one small contract.

Two implementations:

* ``ReferenceEmbedder`` — a deterministic hashed-feature embedder. Text is
  lowercased, tokenized into maximal alphanumeric runs; features are all
  word unigrams plus all character trigrams of each token. Each feature is
  hashed with 64-bit FNV-1a; the hash picks a bucket (``h mod dim``) and a
  sign (+1 if the top bit is 0, else -1); signs accumulate into buckets and
  the result is L2-normalized. Empty/featureless text maps to the zero
  vector. No model weights, fully reproducible.
* ``RemoteEmbedder`` — a JSON-over-HTTP client for a real sentence-encoder
  service (POST {"texts": [...]} -> {"vectors": [...], "dim": N}).

Inputs longer than ``max_input_chars`` (512) are rejected here; user-facing
limits are enforced upstream.
"""

from __future__ import annotations

import os
import re
import threading
from dataclasses import dataclass, field

import numpy as np

from .errors import UpstreamError, ValidationError

FNV64_OFFSET_BASIS = 14695981039346656037
FNV64_PRIME = 1099511628211
_U64_MASK = 0xFFFFFFFFFFFFFFFF

MAX_INPUT_CHARS = 512
DEFAULT_REFERENCE_DIM = 256
DEFAULT_REMOTE_DIM = 768

# Alphanumeric runs; underscore is not alphanumeric.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a hash (offset basis 14695981039346656037, prime 1099511628211)."""
    h = FNV64_OFFSET_BASIS
    for byte in data:
        h ^= byte
        h = (h * FNV64_PRIME) & _U64_MASK
    return h


def tokenize(text: str) -> list[str]:
    """Lowercased maximal alphanumeric runs."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class EmbedderConfig:
    provider: str = "reference"  # "reference" | "remote"
    dim: int = DEFAULT_REFERENCE_DIM
    url: str | None = None
    timeout_ms: int = 10_000
    max_input_chars: int = MAX_INPUT_CHARS
    max_in_flight: int = 8

    def __post_init__(self) -> None:
        if self.provider not in ("reference", "remote"):
            raise ValidationError(f"unknown embedding provider {self.provider!r}")
        if self.dim < 8:
            raise ValidationError("embedding dim must be >= 8")
        if self.timeout_ms <= 0:
            raise ValidationError("timeout must be > 0")
        if self.provider == "remote" and not self.url:
            raise ValidationError("remote provider requires an endpoint URL")

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> "EmbedderConfig":
        """Build a config from EMBED_PROVIDER / EMBED_DIM / EMBED_URL / EMBED_TIMEOUT_MS."""
        e = os.environ if env is None else env
        provider = e.get("EMBED_PROVIDER", "reference").lower()
        default_dim = DEFAULT_REMOTE_DIM if provider == "remote" else DEFAULT_REFERENCE_DIM
        return cls(
            provider=provider,
            dim=int(e.get("EMBED_DIM", default_dim)),
            url=e.get("EMBED_URL"),
            timeout_ms=int(e.get("EMBED_TIMEOUT_MS", 10_000)),
        )


class ReferenceEmbedder:
    """Deterministic hashed-feature embedder; pure and safe for concurrent use."""

    def __init__(self, dim: int = DEFAULT_REFERENCE_DIM, max_input_chars: int = MAX_INPUT_CHARS):
        if dim < 8:
            raise ValidationError("embedding dim must be >= 8")
        self.dim = dim
        self.max_input_chars = max_input_chars

    def _features(self, text: str) -> list[str]:
        feats: list[str] = []
        for token in tokenize(text):
            feats.append(token)
            for i in range(len(token) - 2):
                feats.append(token[i : i + 3])
        return feats

    def embed(self, text: str) -> np.ndarray:
        """Embed one text into a unit-norm float32 vector (zero if featureless)."""
        if len(text) > self.max_input_chars:
            raise ValidationError(
                f"text length {len(text)} exceeds embedder limit of {self.max_input_chars} characters"
            )
        acc = np.zeros(self.dim, dtype=np.float64)
        for feat in self._features(text):
            h = fnv1a64(feat.encode("utf-8"))
            bucket = h % self.dim
            acc[bucket] += 1.0 if (h >> 63) == 0 else -1.0
        norm = np.linalg.norm(acc)
        if norm > 0:
            acc /= norm
        return acc.astype(np.float32)

    def embed_batch(self, texts: list[str]) -> np.ndarray:
        """Embed texts in order; shape (len(texts), dim)."""
        if not texts:
            return np.zeros((0, self.dim), dtype=np.float32)
        return np.stack([self.embed(t) for t in texts])


class RemoteEmbedder:
    """Client for the remote embedding protocol.

    Concurrency is bounded by a semaphore (``max_in_flight``). Transport
    failures and non-2xx responses raise ``UpstreamError`` carrying the
    endpoint and status; a batch fails atomically.
    """

    def __init__(self, config: EmbedderConfig):
        if config.provider != "remote":
            raise ValidationError("RemoteEmbedder requires provider='remote'")
        self.config = config
        self.dim = config.dim
        self.max_input_chars = config.max_input_chars
        self._gate = threading.Semaphore(config.max_in_flight)

    def embed(self, text: str) -> np.ndarray:
        return self.embed_batch([text])[0]

    def embed_batch(self, texts: list[str]) -> np.ndarray:
        import requests

        for t in texts:
            if len(t) > self.max_input_chars:
                raise ValidationError(
                    f"text length {len(t)} exceeds embedder limit of {self.max_input_chars} characters"
                )
        if not texts:
            return np.zeros((0, self.dim), dtype=np.float32)
        url = self.config.url
        with self._gate:
            try:
                resp = requests.post(
                    url, json={"texts": texts}, timeout=self.config.timeout_ms / 1000.0
                )
            except requests.RequestException as exc:
                raise UpstreamError(f"embedding service unreachable: {exc}", endpoint=url) from exc
        if not 200 <= resp.status_code < 300:
            raise UpstreamError(
                f"embedding service returned status {resp.status_code}",
                endpoint=url,
                status=resp.status_code,
            )
        body = resp.json()
        vectors = np.asarray(body["vectors"], dtype=np.float32)
        if vectors.ndim != 2 or vectors.shape != (len(texts), body.get("dim", self.dim)):
            raise UpstreamError("embedding service returned malformed vectors", endpoint=url)
        if body.get("dim") != self.dim:
            raise UpstreamError(
                f"embedding service dim {body.get('dim')} does not match configured dim {self.dim}",
                endpoint=url,
            )
        return vectors


def make_embedder(config: EmbedderConfig):
    """Instantiate the provider named by the config."""
    if config.provider == "remote":
        return RemoteEmbedder(config)
    return ReferenceEmbedder(dim=config.dim, max_input_chars=config.max_input_chars)
