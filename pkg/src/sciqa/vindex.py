"""Exact cosine top-k retrieval over embedding banks.

The normative algorithm is a brute-force scan over contiguous vector
storage. Vectors are quantized to float32 on entry (the snapshot
precision); similarity scores are computed in float64 over those values, so
save/load round trips answer every query bit-identically. Results are
sorted by score descending with ties broken by ascending id, which makes
retrieval deterministic across runs.

Snapshot layout (all integers little-endian): magic ``KW4S``, format
version u16, dim u32, count u64, then per entry a u16 id byte-length, the
UTF-8 id, one kind byte, and dim little-endian float32 values. A CRC-32 of
everything before it is appended as the trailer.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import SnapshotCorruptError, ValidationError

MAGIC = b"KW4S"
FORMAT_VERSION = 1

KIND_PASSAGE = "passage"
KIND_EXAM_QUESTION = "exam_question"
_KIND_TO_BYTE = {KIND_PASSAGE: 0, KIND_EXAM_QUESTION: 1}
_BYTE_TO_KIND = {v: k for k, v in _KIND_TO_BYTE.items()}

DEFAULT_PASSAGE_THRESHOLD = 0.30
DEFAULT_QUESTION_THRESHOLD = 0.30

_CHUNK = 4096


@dataclass(frozen=True)
class IndexEntry:
    id: str
    vector: Sequence[float]
    kind: str = KIND_PASSAGE


@dataclass(frozen=True)
class ScoredHit:
    id: str
    score: float


class VectorIndex:
    """Immutable after build; queries are safe for unrestricted concurrency."""

    def __init__(self, ids: list[str], kinds: np.ndarray, vectors: np.ndarray):
        self._ids = ids
        self._kinds = kinds
        self._vectors = np.ascontiguousarray(vectors, dtype=np.float32)
        self._compute: np.ndarray | None = None  # lazy float64 view of the same values

    @classmethod
    def build(cls, entries: Iterable[IndexEntry]) -> "VectorIndex":
        """Build from a stream of entries; fails on duplicate ids or mixed dims."""
        ids: list[str] = []
        kinds: list[int] = []
        chunks: list[np.ndarray] = []
        buffer: list[np.ndarray] = []
        seen: set[str] = set()
        dim: int | None = None

        for entry in entries:
            if entry.id in seen:
                raise ValidationError(f"duplicate id {entry.id}")
            seen.add(entry.id)
            if entry.kind not in _KIND_TO_BYTE:
                raise ValidationError(f"unknown entry kind {entry.kind!r}")
            vec = np.asarray(entry.vector, dtype=np.float32)
            if vec.ndim != 1:
                raise ValidationError(f"entry {entry.id} vector must be one-dimensional")
            if dim is None:
                dim = int(vec.shape[0])
            elif vec.shape[0] != dim:
                raise ValidationError(
                    f"entry {entry.id} has dim {vec.shape[0]}, index dim is {dim}"
                )
            ids.append(entry.id)
            kinds.append(_KIND_TO_BYTE[entry.kind])
            buffer.append(vec)
            if len(buffer) >= _CHUNK:
                chunks.append(np.stack(buffer))
                buffer = []
        if buffer:
            chunks.append(np.stack(buffer))

        if dim is None:
            vectors = np.zeros((0, 0), dtype=np.float32)
        else:
            vectors = np.concatenate(chunks, axis=0)
        return cls(ids, np.asarray(kinds, dtype=np.uint8), vectors)

    def __len__(self) -> int:
        return len(self._ids)

    @property
    def dim(self) -> int:
        return int(self._vectors.shape[1]) if len(self._ids) else 0

    def kind_of(self, position: int) -> str:
        return _BYTE_TO_KIND[int(self._kinds[position])]

    def _compute_matrix(self) -> np.ndarray:
        if self._compute is None:
            self._compute = self._vectors.astype(np.float64)
        return self._compute

    def top_k(self, query: Sequence[float], k: int, threshold: float) -> list[ScoredHit]:
        """The k highest-cosine entries with score >= threshold.

        Assumes unit-norm (or zero) stored vectors and query, so the dot
        product is the cosine. A zero query returns no hits.
        """
        if k < 1:
            raise ValidationError("k must be >= 1")
        if len(self._ids) == 0:
            return []
        q = np.asarray(query, dtype=np.float64)
        if q.shape != (self._vectors.shape[1],):
            raise ValidationError(
                f"query dim {q.shape} does not match index dim {self._vectors.shape[1]}"
            )
        if not np.any(q):
            return []

        scores = self._compute_matrix() @ q
        eligible = np.flatnonzero(scores >= threshold)
        m = eligible.size
        if m == 0:
            return []
        if m > k:
            vals = scores[eligible]
            kth = np.partition(vals, m - k)[m - k]
            eligible = eligible[vals >= kth]  # keeps boundary ties for exact ordering
        order = sorted(eligible.tolist(), key=lambda i: (-scores[i], self._ids[i]))
        return [ScoredHit(id=self._ids[i], score=float(scores[i])) for i in order[:k]]

    def save(self, path: str | Path) -> None:
        path = Path(path)
        with path.open("wb") as fh:
            crc = 0
            header = MAGIC + struct.pack(
                "<HIQ", FORMAT_VERSION, self._vectors.shape[1] if len(self._ids) else 0, len(self._ids)
            )
            fh.write(header)
            crc = zlib.crc32(header, crc)
            for i, entry_id in enumerate(self._ids):
                id_bytes = entry_id.encode("utf-8")
                if len(id_bytes) > 0xFFFF:
                    raise ValidationError(f"id too long to snapshot: {entry_id[:32]}...")
                rec = (
                    struct.pack("<H", len(id_bytes))
                    + id_bytes
                    + struct.pack("<B", int(self._kinds[i]))
                    + self._vectors[i].astype("<f4").tobytes()
                )
                fh.write(rec)
                crc = zlib.crc32(rec, crc)
            fh.write(struct.pack("<I", crc & 0xFFFFFFFF))

    @classmethod
    def load(cls, path: str | Path) -> "VectorIndex":
        path = Path(path)
        blob = path.read_bytes()
        if len(blob) < len(MAGIC) + 14 + 4:
            raise SnapshotCorruptError(f"corrupt snapshot {path}: file too short")
        payload, trailer = blob[:-4], blob[-4:]
        (stored_crc,) = struct.unpack("<I", trailer)
        if zlib.crc32(payload) & 0xFFFFFFFF != stored_crc:
            raise SnapshotCorruptError(f"corrupt snapshot {path}: checksum mismatch")
        if payload[: len(MAGIC)] != MAGIC:
            raise SnapshotCorruptError(f"corrupt snapshot {path}: bad magic bytes")
        off = len(MAGIC)
        version, dim, count = struct.unpack_from("<HIQ", payload, off)
        off += 14
        if version != FORMAT_VERSION:
            raise SnapshotCorruptError(
                f"corrupt snapshot {path}: unsupported format version {version}"
            )
        ids: list[str] = []
        kinds = np.zeros(count, dtype=np.uint8)
        vectors = np.zeros((count, dim), dtype=np.float32)
        try:
            for i in range(count):
                (id_len,) = struct.unpack_from("<H", payload, off)
                off += 2
                ids.append(payload[off : off + id_len].decode("utf-8"))
                off += id_len
                kinds[i] = payload[off]
                off += 1
                vectors[i] = np.frombuffer(payload, dtype="<f4", count=dim, offset=off)
                off += 4 * dim
        except (struct.error, ValueError, IndexError) as exc:
            raise SnapshotCorruptError(f"corrupt snapshot {path}: truncated entry {i}") from exc
        if off != len(payload):
            raise SnapshotCorruptError(f"corrupt snapshot {path}: trailing garbage")
        return cls(ids, kinds, vectors)
