"""Deterministic sentence segmentation and passage grouping.

Paragraphs are split into sentence spans with stable character offsets,
then grouped into passages of up to ``group_size`` consecutive sentences.
The boundary rules are intentionally small and fixed so that identical
input always yields byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

# Tokens ending in '.' that never close a sentence.
ABBREVIATIONS = frozenset(
    {"Dr", "Mr", "Mrs", "Ms", "Prof", "e.g", "i.e", "etc", "vs", "Fig", "No", "St"}
)

_TERMINALS = {".", "!", "?"}

DEFAULT_GROUP_SIZE = 3


@dataclass(frozen=True)
class SentenceSpan:
    """One sentence as a half-open character range into the source text."""

    start: int
    end: int
    text: str


@dataclass(frozen=True)
class PassageDraft:
    """A group of consecutive sentences, joined by single spaces."""

    passage_id: str
    ordinal: int
    text: str
    first_sentence: int
    last_sentence: int

    @property
    def sentence_count(self) -> int:
        return self.last_sentence - self.first_sentence + 1


def _token_before(text: str, dot_index: int) -> str:
    """Maximal run of non-whitespace characters ending just before ``dot_index``."""
    j = dot_index
    while j > 0 and not text[j - 1].isspace():
        j -= 1
    return text[j:dot_index]


def _is_boundary(text: str, i: int) -> bool:
    """Whether the terminal character at index ``i`` closes a sentence.

    A boundary requires whitespace-then-uppercase or end-of-text after the
    terminal, and for '.' the preceding token must not be a known
    abbreviation or a single letter.
    """
    ch = text[i]
    if ch == ".":
        token = _token_before(text, i)
        if token in ABBREVIATIONS:
            return False
        if len(token) == 1 and token.isalpha():
            return False

    j = i + 1
    if j >= len(text):
        return True
    if not text[j].isspace():
        return False
    while j < len(text) and text[j].isspace():
        j += 1
    if j >= len(text):
        return True
    return text[j].isupper()


def split_sentences(paragraph: str) -> list[SentenceSpan]:
    """Split a paragraph into ordered, non-overlapping sentence spans.

    Span texts exclude surrounding whitespace; concatenating span texts with
    the skipped inter-span source text reproduces the paragraph exactly.
    Empty or whitespace-only input yields an empty list. A trailing fragment
    without terminal punctuation is kept as a final sentence so no content
    is lost.
    """
    spans: list[SentenceSpan] = []
    n = len(paragraph)
    start = 0

    def emit(raw_start: int, raw_end: int) -> None:
        s, e = raw_start, raw_end
        while s < e and paragraph[s].isspace():
            s += 1
        while e > s and paragraph[e - 1].isspace():
            e -= 1
        if e > s:
            spans.append(SentenceSpan(start=s, end=e, text=paragraph[s:e]))

    for i in range(n):
        if paragraph[i] in _TERMINALS and _is_boundary(paragraph, i):
            emit(start, i + 1)
            start = i + 1

    emit(start, n)
    return spans


def make_passages(
    paragraph_id: str,
    sentences: list[SentenceSpan],
    group_size: int = DEFAULT_GROUP_SIZE,
) -> list[PassageDraft]:
    """Group consecutive sentences into passages of ``group_size``.

    A final remainder group of fewer sentences is kept rather than dropped.
    Passage text joins sentence texts with a single space.
    """
    if group_size < 1:
        raise ValueError("group_size must be >= 1")
    drafts: list[PassageDraft] = []
    for ordinal, lo in enumerate(range(0, len(sentences), group_size)):
        group = sentences[lo : lo + group_size]
        drafts.append(
            PassageDraft(
                passage_id=f"{paragraph_id}:{ordinal}",
                ordinal=ordinal,
                text=" ".join(s.text for s in group),
                first_sentence=lo,
                last_sentence=lo + len(group) - 1,
            )
        )
    return drafts
