#!/usr/bin/env python3
"""Walkthrough: splitting paragraphs into sentences and grouping them into
retrievable passages of up to 3 sentences."""

from sciqa.segmenter import make_passages, split_sentences

paragraph = (
    "Matter is anything that has mass and occupies space. It exists as a "
    "solid, a liquid, or a gas. Heating a solid can melt it into a liquid. "
    "Further heating turns the liquid into a gas. Dr. Mensah demonstrates "
    "this with e.g. ice and steam. Cooling reverses the changes. "
    "These changes of state are physical changes."
)

print("Paragraph:")
print(f"  {paragraph}\n")

spans = split_sentences(paragraph)
print(f"Split into {len(spans)} sentences (abbreviations like 'Dr.' and 'e.g.' do not split):")
for i, span in enumerate(spans):
    print(f"  [{i}] ({span.start:3d}..{span.end:3d}) {span.text}")

drafts = make_passages("demo-paragraph", spans)
print(f"\nGrouped into {len(drafts)} passages of up to 3 sentences "
      f"(the remainder is kept as a shorter final passage):")
for draft in drafts:
    print(f"  {draft.passage_id} [{draft.sentence_count} sentences] {draft.text}")
