#!/usr/bin/env python3
"""Walkthrough: the deterministic hashed-feature embedder.

Features are word unigrams plus character trigrams, hashed with 64-bit
FNV-1a into signed buckets, then L2-normalized. No model weights, so the
same text always produces the same vector on any machine.
"""

import numpy as np

from sciqa.embedder import ReferenceEmbedder, fnv1a64

embedder = ReferenceEmbedder(dim=256)

print(f"FNV-1a-64 of 'a' = {fnv1a64(b'a'):#x} (published test vector)\n")

texts = {
    "question": "Why is the sky blue",
    "sky passage": "Blue is the color of the Earth's sky and sea.",
    "unrelated": "Enzymes speed up digestion in the stomach.",
    "empty": "",
}
vectors = {name: embedder.embed(text) for name, text in texts.items()}

for name, vec in vectors.items():
    print(f"{name:12s} norm = {np.linalg.norm(vec):.6f}")

print("\nCosine similarities against the question:")
q = vectors["question"]
for name in ("sky passage", "unrelated"):
    print(f"  {name:12s} {float(q @ vectors[name]):+.4f}")

again = embedder.embed(texts["question"])
print(f"\nBit-identical across calls: {np.array_equal(q, again)}")
