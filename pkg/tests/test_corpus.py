import json

import pytest

from sciqa.corpus import (
    CorpusStore,
    EXAM_CSV_HEADER,
    ExamQuestion,
    QuestionFilter,
    SECTIONS,
)
from sciqa.errors import NotFoundError, ValidationError
from sciqa import synth


def write_lines(path, objs):
    path.write_text("".join(json.dumps(o) + "\n" for o in objs))


def para(pid, text, figure_refs=None):
    return {
        "id": pid, "source": "textbook_dataset", "heading": "Lesson",
        "text": text, "figure_refs": figure_refs or [],
    }


FOUR_SENTENCES = "One is here. Two is here. Three is here. Four is here."
THREE_SENTENCES = "One is here. Two is here. Three is here."


class TestIngestParagraphs:
    def test_passage_counts(self, tmp_path):
        path = tmp_path / "p.jsonl"
        write_lines(path, [para("p1", FOUR_SENTENCES), para("p2", THREE_SENTENCES)])
        store = CorpusStore()
        report = store.ingest_paragraphs(path)
        assert report.created == 2
        assert report.passages_created == 3  # 2 + 1
        assert store.passages["p1:0"].sentence_count == 3
        assert store.passages["p1:1"].sentence_count == 1

    def test_empty_file(self, tmp_path):
        path = tmp_path / "p.jsonl"
        path.write_text("")
        report = CorpusStore().ingest_paragraphs(path)
        assert report.created == 0
        assert report.passages_created == 0

    def test_dangling_figure_warns(self, tmp_path):
        path = tmp_path / "p.jsonl"
        write_lines(path, [para("p1", THREE_SENTENCES, figure_refs=["fig9"])])
        store = CorpusStore()
        report = store.ingest_paragraphs(path)
        assert report.created == 1
        assert len(report.warnings) == 1
        assert "fig9" in report.warnings[0]

    def test_resolved_figure_no_warning(self, tmp_path):
        fig_path = tmp_path / "f.jsonl"
        synth.write_figure_manifest(fig_path, ["fig1"])
        path = tmp_path / "p.jsonl"
        write_lines(path, [para("p1", THREE_SENTENCES, figure_refs=["fig1"])])
        store = CorpusStore()
        store.ingest_figures(fig_path)
        report = store.ingest_paragraphs(path)
        assert report.warnings == []
        assert store.passages["p1:0"].figure_refs == ["fig1"]

    def test_malformed_line_rejected_with_line_number(self, tmp_path):
        path = tmp_path / "p.jsonl"
        lines = [json.dumps(para(f"p{i}", THREE_SENTENCES)) for i in range(20)]
        lines.insert(4, "{not json")
        path.write_text("\n".join(lines) + "\n")
        store = CorpusStore()
        report = store.ingest_paragraphs(path)
        assert report.created == 20
        assert report.rejected == [(5, report.rejected[0][1])]
        assert "JSON" in report.rejected[0][1]

    def test_abort_when_over_ten_percent_fail(self, tmp_path):
        path = tmp_path / "p.jsonl"
        lines = [json.dumps(para("p1", THREE_SENTENCES))] + ["{bad"] * 3
        path.write_text("\n".join(lines) + "\n")
        store = CorpusStore()
        with pytest.raises(ValidationError, match="nothing ingested"):
            store.ingest_paragraphs(path)
        assert store.paragraphs == {}
        assert store.passages == {}

    def test_duplicate_paragraph_id_rejected(self, tmp_path):
        path = tmp_path / "p.jsonl"
        write_lines(path, [para("p1", THREE_SENTENCES)] * 2 + [para(f"p{i}", THREE_SENTENCES) for i in range(2, 20)])
        report = CorpusStore().ingest_paragraphs(path)
        assert any("duplicate" in reason for _, reason in report.rejected)

    def test_unknown_source_rejected(self, tmp_path):
        path = tmp_path / "p.jsonl"
        objs = [dict(para(f"p{i}", THREE_SENTENCES)) for i in range(20)]
        objs[0]["source"] = "wikipedia"
        write_lines(path, objs)
        report = CorpusStore().ingest_paragraphs(path)
        assert any("source" in reason for _, reason in report.rejected)


def exam_row(year=2015, exam_label="WASSCE 2015", section="objectives", number="1",
             answer="B", explanation="Because.", options=("O1", "O2", "O3", "O4"),
             figure_ids=""):
    return [str(year), exam_label, section, number, "What is matter?",
            *options, answer, explanation, figure_ids]


def write_csv(path, rows):
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(EXAM_CSV_HEADER)
        writer.writerows(rows)


class TestIngestExamCsv:
    def test_synthetic_bank_counts_per_section(self, tmp_path):
        path = tmp_path / "exams.csv"
        rows = synth.write_exam_csv(path, per_section=3, seed=1)
        store = CorpusStore()
        report = store.ingest_exam_csv(path)
        assert report.created == rows == 28 * 3 * 3
        for section in SECTIONS:
            count = sum(1 for q in store.questions.values() if q.section == section)
            assert count == 28 * 3

    def test_per_year_files_preserve_counts(self, tmp_path):
        # One worksheet CSV per exam year, as the bank is delivered.
        store = CorpusStore()
        for year in synth.EXAM_YEARS:
            path = tmp_path / f"exam_{year}.csv"
            synth.write_exam_csv(path, years=(year,), per_section=2, seed=year)
            report = store.ingest_exam_csv(path)
            assert report.created == 3 * 2
        assert len(store.questions) == 28 * 3 * 2
        for section in SECTIONS:
            count = sum(1 for q in store.questions.values() if q.section == section)
            assert count == 28 * 2

    def test_invalid_answer_key_rejected(self, tmp_path):
        path = tmp_path / "e.csv"
        write_csv(path, [exam_row(answer="E")])
        report = CorpusStore().ingest_exam_csv(path)
        assert report.created == 0
        assert report.rejected[0][1] == "invalid answer key"

    def test_objectives_missing_option_rejected(self, tmp_path):
        path = tmp_path / "e.csv"
        write_csv(path, [exam_row(options=("O1", "", "O3", "O4"))])
        report = CorpusStore().ingest_exam_csv(path)
        assert "option" in report.rejected[0][1]

    def test_theory_row_with_empty_options_accepted(self, tmp_path):
        path = tmp_path / "e.csv"
        write_csv(path, [exam_row(section="theory", options=("", "", "", ""),
                                  answer="A free-form answer.", explanation="")])
        store = CorpusStore()
        report = store.ingest_exam_csv(path)
        assert report.created == 1
        q = next(iter(store.questions.values()))
        assert q.options is None
        assert q.answer == "A free-form answer."

    def test_year_2010_rejected(self, tmp_path):
        path = tmp_path / "e.csv"
        write_csv(path, [exam_row(year=2010)])
        report = CorpusStore().ingest_exam_csv(path)
        assert "2010" in report.rejected[0][1]

    def test_year_out_of_range_rejected(self, tmp_path):
        path = tmp_path / "e.csv"
        write_csv(path, [exam_row(year=1992), exam_row(year=2022)])
        report = CorpusStore().ingest_exam_csv(path)
        assert len(report.rejected) == 2

    def test_section_case_insensitive(self, tmp_path):
        path = tmp_path / "e.csv"
        write_csv(path, [exam_row(section="Objectives")])
        store = CorpusStore()
        assert store.ingest_exam_csv(path).created == 1
        assert next(iter(store.questions.values())).section == "objectives"

    def test_wrong_header_fails(self, tmp_path):
        path = tmp_path / "e.csv"
        path.write_text("year,label\n2015,x\n")
        with pytest.raises(ValidationError, match="header"):
            CorpusStore().ingest_exam_csv(path)

    def test_figure_ids_split_on_semicolon(self, tmp_path):
        path = tmp_path / "e.csv"
        write_csv(path, [exam_row(figure_ids="f1;f2")])
        store = CorpusStore()
        report = store.ingest_exam_csv(path)
        q = next(iter(store.questions.values()))
        assert q.figure_refs == ["f1", "f2"]
        assert len(report.warnings) == 2  # both dangling


class TestFilterQuestions:
    @pytest.fixture
    def store(self, tmp_path):
        path = tmp_path / "exams.csv"
        synth.write_exam_csv(path, per_section=5, seed=3)
        store = CorpusStore()
        store.ingest_exam_csv(path)
        return store

    def test_year_and_section(self, store):
        items, total = store.filter_questions(
            QuestionFilter(year=2015, section="objectives", page_size=100)
        )
        assert total == 5
        assert all(q.year == 2015 and q.section == "objectives" for q in items)

    def test_empty_filter_returns_all(self, store):
        _, total = store.filter_questions(QuestionFilter(page_size=100))
        assert total == len(store.questions)

    def test_year_2010_always_empty(self, store):
        _, total = store.filter_questions(QuestionFilter(year=2010))
        assert total == 0

    def test_unknown_topic_empty_not_error(self, store):
        items, total = store.filter_questions(QuestionFilter(topic="Nope"))
        assert (items, total) == ([], 0)

    def test_composition_bound(self, store):
        _, year_total = store.filter_questions(QuestionFilter(year=2015, page_size=100))
        _, section_total = store.filter_questions(
            QuestionFilter(section="theory", page_size=100)
        )
        _, both = store.filter_questions(
            QuestionFilter(year=2015, section="theory", page_size=100)
        )
        assert both <= min(year_total, section_total)

    def test_ordering(self, store):
        items, _ = store.filter_questions(QuestionFilter(page_size=100))
        keys = [(-q.year, SECTIONS.index(q.section), q.number) for q in items]
        assert keys == sorted(keys)

    def test_pagination_partitions(self, store):
        full, total = store.filter_questions(QuestionFilter(year=2018, page_size=100))
        paged = []
        page = 1
        while True:
            items, _ = store.filter_questions(
                QuestionFilter(year=2018, page=page, page_size=4)
            )
            if not items:
                break
            paged.extend(items)
            page += 1
        assert [q.id for q in paged] == [q.id for q in full]

    def test_page_size_cap(self):
        with pytest.raises(ValidationError, match="page_size"):
            QuestionFilter(page_size=101)

    def test_bad_page(self):
        with pytest.raises(ValidationError):
            QuestionFilter(page=0)

    def test_unknown_section_rejected(self):
        with pytest.raises(ValidationError, match="section"):
            QuestionFilter(section="essay")


class TestPersistence:
    def test_question_export_import_round_trip(self, tmp_path):
        path = tmp_path / "exams.csv"
        synth.write_exam_csv(path, per_section=2, seed=5)
        store = CorpusStore()
        store.ingest_exam_csv(path)
        store.set_topic(next(iter(store.questions)), "Matter")

        out = tmp_path / "bank.jsonl"
        store.export_questions(out)
        restored = CorpusStore()
        restored.import_questions(out)
        assert restored.questions == store.questions

    def test_store_save_load_identity(self, tmp_path):
        fig_path = tmp_path / "f.jsonl"
        synth.write_figure_manifest(fig_path, ["fig1"])
        ppath = tmp_path / "p.jsonl"
        write_lines(ppath, [para("p1", FOUR_SENTENCES, figure_refs=["fig1"])])
        epath = tmp_path / "e.csv"
        synth.write_exam_csv(epath, years=(2015,), per_section=2, seed=1)

        store = CorpusStore()
        store.ingest_figures(fig_path)
        store.ingest_paragraphs(ppath)
        store.ingest_exam_csv(epath)

        store.save(tmp_path / "state")
        restored = CorpusStore.load(tmp_path / "state")
        assert restored.paragraphs == store.paragraphs
        assert restored.passages == store.passages
        assert restored.figures == store.figures
        assert restored.questions == store.questions

    def test_lookup_errors(self):
        store = CorpusStore()
        with pytest.raises(NotFoundError):
            store.question("nope")
        with pytest.raises(NotFoundError):
            store.passage("nope")

    def test_filter_values(self, tmp_path):
        path = tmp_path / "e.csv"
        synth.write_exam_csv(path, years=(2015, 2016), per_section=1, seed=0)
        store = CorpusStore()
        store.ingest_exam_csv(path)
        values = store.filter_values()
        assert values["years"] == [2016, 2015]
        assert values["sections"] == list(SECTIONS)
