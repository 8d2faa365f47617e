import { ApiClient } from './api.js';
import { escapeHtml, renderMarkdown } from './markdown.js';
import type { ActiveFilters } from './state.js';
import type { ExamQuestion, FilterValues, QuestionsPage } from './types.js';

/** Past-questions browser: dropdown filters fed from the API, paginated
 * listing, and expert answers revealed on demand. Selecting a year, a
 * question type, or a topic each emits its mapped usage event; showing an
 * answer emits show_answer. */
export class PastQuestionsBrowser {
  filters: ActiveFilters = {};
  available: FilterValues | null = null;
  page = 1;
  current: QuestionsPage = { items: [], total: 0 };

  constructor(
    private readonly api: ApiClient,
    private readonly pageSize = 20,
  ) {}

  async loadFilters(): Promise<FilterValues> {
    this.available = await this.api.filters();
    return this.available;
  }

  async load(page = 1): Promise<QuestionsPage> {
    this.page = page;
    this.current = await this.api.questions({
      year: this.filters.year,
      exam: this.filters.exam,
      section: this.filters.section,
      topic: this.filters.topic,
      page,
      page_size: this.pageSize,
    });
    return this.current;
  }

  async selectYear(year: number | undefined): Promise<QuestionsPage> {
    this.filters.year = year;
    await this.api.event('select_year');
    return this.load(1);
  }

  async selectQuestionType(section: string | undefined): Promise<QuestionsPage> {
    this.filters.section = section;
    await this.api.event('select_question_type');
    return this.load(1);
  }

  async selectTopic(topic: string | undefined): Promise<QuestionsPage> {
    this.filters.topic = topic;
    await this.api.event('select_topic');
    return this.load(1);
  }

  /** Exam label narrows the listing but is not a tracked interaction. */
  async selectExam(exam: string | undefined): Promise<QuestionsPage> {
    this.filters.exam = exam;
    return this.load(1);
  }

  renderList(): string {
    if (this.current.total === 0) {
      return `<div class="empty-state">No questions match the selected filters.</div>`;
    }
    const cards = this.current.items.map((q) =>
      [
        `<article class="question-card" data-id="${escapeHtml(q.id)}">`,
        `<header>${q.year} · ${escapeHtml(q.section)} · #${escapeHtml(q.number)}`,
        q.topic ? ` · ${escapeHtml(q.topic)}` : '',
        `</header>`,
        `<div class="question-text">${renderMarkdown(q.text)}</div>`,
        `<button class="show-answer">Show answer</button>`,
        `</article>`,
      ].join(''),
    );
    const pages = Math.max(1, Math.ceil(this.current.total / this.pageSize));
    return `<section class="questions">${cards.join('')}</section>` +
      `<nav class="pager">page ${this.page} of ${pages} (${this.current.total} questions)</nav>`;
  }

  /** Reveal the expert answer (markdown + math). Emits one show_answer event. */
  async showAnswer(questionId: string): Promise<string> {
    const question = this.current.items.find((q) => q.id === questionId);
    if (!question) throw new Error(`question ${questionId} is not on this page`);
    await this.api.event('show_answer');
    return renderAnswerDetail(question);
  }
}

export function renderAnswerDetail(question: ExamQuestion): string {
  const parts = [`<div class="answer-detail">`];
  if (question.options) {
    const items = Object.entries(question.options)
      .map(([key, text]) => `<li><strong>${escapeHtml(key)}.</strong> ${renderMarkdown(text)}</li>`)
      .join('');
    parts.push(`<ol class="options">${items}</ol>`);
    parts.push(`<p class="answer-key">Answer: <strong>${escapeHtml(question.answer)}</strong></p>`);
    if (question.explanation) {
      parts.push(`<div class="explanation">${renderMarkdown(question.explanation)}</div>`);
    }
  } else {
    parts.push(`<div class="expert-answer">${renderMarkdown(question.answer)}</div>`);
  }
  parts.push(`</div>`);
  return parts.join('');
}
