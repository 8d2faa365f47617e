import numpy as np
import pytest

from sciqa.errors import SnapshotCorruptError, ValidationError
from sciqa.synth import random_unit_vectors
from sciqa.vindex import IndexEntry, KIND_EXAM_QUESTION, KIND_PASSAGE, VectorIndex


def brute_force_top_k(vectors, ids, query, k, threshold):
    """Independent oracle: per-row float64 dot products, full sort."""
    q = np.asarray(query, dtype=np.float64)
    if not np.any(q):
        return []
    scored = []
    for i in range(len(ids)):
        score = float(np.dot(vectors[i].astype(np.float64), q))
        if score >= threshold:
            scored.append((ids[i], score))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored[:k]


def small_index():
    return VectorIndex.build(
        [
            IndexEntry("a", [1.0, 0.0]),
            IndexEntry("b", [0.0, 1.0]),
            IndexEntry("c", [0.6, 0.8]),
        ]
    )


class TestTopK:
    def test_hand_computed_scores(self):
        hits = small_index().top_k([1.0, 0.0], 3, 0.0)
        assert [h.id for h in hits] == ["a", "c", "b"]
        np.testing.assert_allclose([h.score for h in hits], [1.0, 0.6, 0.0], atol=1e-6)

    def test_threshold_gates(self):
        hits = small_index().top_k([1.0, 0.0], 3, 0.5)
        assert [h.id for h in hits] == ["a", "c"]

    def test_orthogonal_query_below_threshold(self):
        idx = VectorIndex.build([IndexEntry("a", [1.0, 0.0])])
        assert idx.top_k([0.0, 1.0], 3, 0.3) == []

    def test_zero_query(self):
        assert small_index().top_k([0.0, 0.0], 3, 0.0) == []

    def test_empty_index(self):
        idx = VectorIndex.build([])
        assert len(idx) == 0
        assert idx.top_k([1.0, 0.0], 5, 0.0) == []

    def test_k_limits_results(self):
        hits = small_index().top_k([1.0, 0.0], 1, 0.0)
        assert [h.id for h in hits] == ["a"]

    def test_tie_break_ascending_id(self):
        idx = VectorIndex.build(
            [IndexEntry("z", [1.0, 0.0]), IndexEntry("m", [1.0, 0.0]),
             IndexEntry("a", [1.0, 0.0])]
        )
        assert [h.id for h in idx.top_k([1.0, 0.0], 3, 0.0)] == ["a", "m", "z"]

    def test_dim_mismatch(self):
        with pytest.raises(ValidationError, match="dim"):
            small_index().top_k([1.0, 0.0, 0.0], 3, 0.0)

    def test_invalid_k(self):
        with pytest.raises(ValidationError):
            small_index().top_k([1.0, 0.0], 0, 0.0)


class TestBuild:
    def test_duplicate_id(self):
        with pytest.raises(ValidationError, match="duplicate id p1"):
            VectorIndex.build([IndexEntry("p1", [1.0]), IndexEntry("p1", [0.5])])

    def test_dim_mismatch_fails(self):
        with pytest.raises(ValidationError, match="dim"):
            VectorIndex.build([IndexEntry("a", [1.0, 0.0]), IndexEntry("b", [1.0])])

    def test_unknown_kind(self):
        with pytest.raises(ValidationError, match="kind"):
            VectorIndex.build([IndexEntry("a", [1.0], kind="document")])

    def test_kinds_preserved(self):
        idx = VectorIndex.build(
            [IndexEntry("p", [1.0], kind=KIND_PASSAGE),
             IndexEntry("q", [0.5], kind=KIND_EXAM_QUESTION)]
        )
        assert idx.kind_of(0) == KIND_PASSAGE
        assert idx.kind_of(1) == KIND_EXAM_QUESTION

    def test_streamed_build_count(self):
        n = 10_000
        vecs = random_unit_vectors(n, 16, seed=1)
        idx = VectorIndex.build(
            IndexEntry(f"e{i:06d}", vecs[i]) for i in range(n)
        )
        assert len(idx) == n
        assert idx.dim == 16

    def test_corpus_scale_streamed_build(self):
        """527K entries stream into the index without holding the input
        batch in memory (float32 storage: ~67 MB at dim 32)."""
        n, dim, chunk = 527_000, 32, 8192
        rng = np.random.default_rng(527)

        def entries():
            produced = 0
            while produced < n:
                take = min(chunk, n - produced)
                block = rng.standard_normal((take, dim))
                block /= np.linalg.norm(block, axis=1, keepdims=True)
                for row in block.astype(np.float32):
                    yield IndexEntry(f"p{produced:07d}", row)
                    produced += 1

        idx = VectorIndex.build(entries())
        assert len(idx) == n
        assert idx.dim == dim


class TestOracleEquivalence:
    def test_matches_brute_force(self):
        vecs = random_unit_vectors(500, 32, seed=9)
        ids = [f"v{i:05d}" for i in range(500)]
        idx = VectorIndex.build(IndexEntry(ids[i], vecs[i]) for i in range(500))
        queries = random_unit_vectors(20, 32, seed=10)
        for q in queries:
            for k in (1, 3, 5):
                for threshold in (0.0, 0.3):
                    expected = brute_force_top_k(vecs, ids, q, k, threshold)
                    actual = idx.top_k(q, k, threshold)
                    assert [h.id for h in actual] == [e[0] for e in expected]
                    np.testing.assert_allclose(
                        [h.score for h in actual], [e[1] for e in expected], atol=1e-9
                    )

    def test_monotonicity(self):
        vecs = random_unit_vectors(300, 16, seed=21)
        idx = VectorIndex.build(IndexEntry(f"v{i}", vecs[i]) for i in range(300))
        queries = random_unit_vectors(10, 16, seed=22)
        for q in queries:
            base = idx.top_k(q, 10, 0.0)
            # Raising the threshold never adds hits.
            for threshold in (0.1, 0.3, 0.8):
                subset = idx.top_k(q, 10, threshold)
                assert {h.id for h in subset} <= {h.id for h in base}
            # Raising k never removes hits from the prefix.
            for k in (1, 3, 5):
                assert idx.top_k(q, k, 0.0) == base[:k]

    def test_score_bounds(self):
        vecs = random_unit_vectors(200, 8, seed=31)
        idx = VectorIndex.build(IndexEntry(f"v{i}", vecs[i]) for i in range(200))
        for q in random_unit_vectors(20, 8, seed=32):
            for hit in idx.top_k(q, 200, -1.0):
                assert -1.0 - 1e-9 <= hit.score <= 1.0 + 1e-9


class TestSnapshot:
    def test_round_trip_queries_bit_identical(self, tmp_path):
        vecs = random_unit_vectors(1000, 24, seed=5)
        idx = VectorIndex.build(IndexEntry(f"v{i:05d}", vecs[i]) for i in range(1000))
        path = tmp_path / "bank.kw4s"
        idx.save(path)
        loaded = VectorIndex.load(path)
        assert len(loaded) == 1000
        for q in random_unit_vectors(25, 24, seed=6):
            assert idx.top_k(q, 5, 0.0) == loaded.top_k(q, 5, 0.0)

    def test_empty_round_trip(self, tmp_path):
        path = tmp_path / "empty.kw4s"
        VectorIndex.build([]).save(path)
        loaded = VectorIndex.load(path)
        assert len(loaded) == 0

    def test_truncated_file(self, tmp_path):
        path = tmp_path / "bank.kw4s"
        small_index().save(path)
        blob = path.read_bytes()
        path.write_bytes(blob[: len(blob) // 2])
        with pytest.raises(SnapshotCorruptError, match="corrupt snapshot"):
            VectorIndex.load(path)

    def test_flipped_byte_detected_by_checksum(self, tmp_path):
        path = tmp_path / "bank.kw4s"
        small_index().save(path)
        blob = bytearray(path.read_bytes())
        blob[len(blob) // 2] ^= 0xFF
        path.write_bytes(bytes(blob))
        with pytest.raises(SnapshotCorruptError, match="checksum"):
            VectorIndex.load(path)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bank.kw4s"
        small_index().save(path)
        blob = bytearray(path.read_bytes())
        blob[0] = ord("X")
        path.write_bytes(bytes(blob))
        with pytest.raises(SnapshotCorruptError):
            VectorIndex.load(path)

    def test_unicode_ids_round_trip(self, tmp_path):
        idx = VectorIndex.build([IndexEntry("pâragraphe:0", [1.0, 0.0])])
        path = tmp_path / "u.kw4s"
        idx.save(path)
        assert VectorIndex.load(path).top_k([1.0, 0.0], 1, 0.0)[0].id == "pâragraphe:0"
