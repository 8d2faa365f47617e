import numpy as np

from sciqa.segmenter import make_passages, split_sentences
from sciqa.synth import make_paragraph_text


class TestSplitSentences:
    def test_two_terminal_periods(self):
        spans = split_sentences("Matter has mass. It occupies space.")
        assert [s.text for s in spans] == ["Matter has mass.", "It occupies space."]

    def test_empty_input(self):
        assert split_sentences("") == []

    def test_whitespace_only(self):
        assert split_sentences("   \n\t ") == []

    def test_abbreviations_do_not_split(self):
        spans = split_sentences("Dr. Mensah teaches e.g. physics. He is here.")
        assert [s.text for s in spans] == [
            "Dr. Mensah teaches e.g. physics.",
            "He is here.",
        ]

    def test_single_letter_initial_does_not_split(self):
        spans = split_sentences("J. Mensah wrote this. It is good.")
        assert len(spans) == 2
        assert spans[0].text == "J. Mensah wrote this."

    def test_lowercase_continuation_does_not_split(self):
        spans = split_sentences("The value is 3.5 approx. then it grows.")
        assert len(spans) == 1

    def test_exclamation_and_question_marks(self):
        spans = split_sentences("Stop! Why? Because.")
        assert [s.text for s in spans] == ["Stop!", "Why?", "Because."]

    def test_trailing_fragment_kept(self):
        spans = split_sentences("First sentence. And a tail without punctuation")
        assert [s.text for s in spans] == [
            "First sentence.",
            "And a tail without punctuation",
        ]

    def test_span_offsets_match_source(self):
        text = "  Matter has mass.  It occupies space. "
        for span in split_sentences(text):
            assert text[span.start : span.end] == span.text


class TestMakePassages:
    def test_seven_sentences_group_sizes(self):
        spans = split_sentences(make_paragraph_text(np.random.default_rng(0), 7))
        assert len(spans) == 7
        drafts = make_passages("p1", spans)
        assert [d.sentence_count for d in drafts] == [3, 3, 1]
        assert [d.passage_id for d in drafts] == ["p1:0", "p1:1", "p1:2"]

    def test_exact_group(self):
        spans = split_sentences(make_paragraph_text(np.random.default_rng(1), 3))
        assert [d.sentence_count for d in make_passages("p", spans)] == [3]

    def test_empty(self):
        assert make_passages("p", []) == []

    def test_passage_text_joined_by_single_space(self):
        spans = split_sentences("One is here. Two is here. Three is here. Four is here.")
        drafts = make_passages("p", spans)
        assert drafts[0].text == "One is here. Two is here. Three is here."
        assert drafts[1].text == "Four is here."


class TestProperties:
    """Invariants over generated paragraphs: lossless coverage, size bound,
    and byte-identical determinism."""

    def test_generated_paragraphs(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            n_sentences = int(rng.integers(0, 12))
            text = make_paragraph_text(rng, n_sentences)
            spans = split_sentences(text)
            assert len(spans) == n_sentences
            # All non-whitespace content is inside spans.
            covered = set()
            for span in spans:
                assert text[span.start : span.end] == span.text
                covered.update(range(span.start, span.end))
            for i, ch in enumerate(text):
                if not ch.isspace():
                    assert i in covered
            drafts = make_passages("p", spans)
            assert sum(d.sentence_count for d in drafts) == len(spans)
            assert all(d.sentence_count <= 3 for d in drafts)
            # Each sentence is in exactly one passage.
            ranges = [(d.first_sentence, d.last_sentence) for d in drafts]
            seen = [i for lo, hi in ranges for i in range(lo, hi + 1)]
            assert seen == list(range(len(spans)))

    def test_determinism(self):
        text = make_paragraph_text(np.random.default_rng(5), 9)
        assert split_sentences(text) == split_sentences(text)
        spans = split_sentences(text)
        assert make_passages("x", spans) == make_passages("x", spans)
