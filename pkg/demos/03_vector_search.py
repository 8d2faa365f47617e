#!/usr/bin/env python3
"""Walkthrough: exact cosine top-k retrieval with threshold gating and
snapshot persistence."""

import tempfile
from pathlib import Path

from sciqa.embedder import ReferenceEmbedder
from sciqa.vindex import IndexEntry, VectorIndex

passages = {
    "sky:0": "Blue is the color of the Earth's sky and sea.",
    "digestion:0": "Enzymes break food into smaller molecules in the stomach.",
    "magnet:0": "A magnet attracts iron and like poles repel.",
    "soil:0": "Fertile soil supplies plants with minerals and nutrients.",
    "cells:0": "Cells are the basic unit of life in every organism.",
}

embedder = ReferenceEmbedder(dim=256)
index = VectorIndex.build(
    IndexEntry(pid, embedder.embed(text)) for pid, text in passages.items()
)
print(f"Indexed {len(index)} passages at dim {index.dim}.\n")

query = embedder.embed("Why is the sky blue")
print("top_k(k=3, threshold=0.0):")
for hit in index.top_k(query, 3, 0.0):
    print(f"  {hit.score:+.4f} {hit.id}: {passages[hit.id]}")

print("\ntop_k(k=3, threshold=0.30) gates out weak matches:")
for hit in index.top_k(query, 3, 0.30):
    print(f"  {hit.score:+.4f} {hit.id}")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "bank.kw4s"
    index.save(path)
    loaded = VectorIndex.load(path)
    same = loaded.top_k(query, 3, 0.0) == index.top_k(query, 3, 0.0)
    print(f"\nSnapshot round-trip ({path.stat().st_size} bytes, CRC-32 checked): "
          f"queries identical = {same}")
