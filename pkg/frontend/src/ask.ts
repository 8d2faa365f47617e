import { ApiClient } from './api.js';
import { renderMarkdown, escapeHtml } from './markdown.js';
import type { AskResponse, Vote } from './types.js';

export const COULD_NOT_ANSWER =
  'Your question could not be answered using the knowledge source for this subject.';

export function confidencePercent(score: number): string {
  return `${Math.round(score * 100)}%`;
}

/** Ask flow: submit a question, render answer cards and related past
 * questions, open details, expand related questions, and vote. Every
 * tracked interaction emits exactly one usage event. */
export class AskController {
  response: AskResponse | null = null;
  votes = new Map<number, Vote>();
  notice: string | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly userId: string,
  ) {}

  async submit(question: string): Promise<AskResponse> {
    const response = await this.api.ask(this.userId, question);
    this.response = response;
    this.votes.clear();
    this.notice = null;
    return response;
  }

  renderAnswers(): string {
    const response = this.response;
    if (!response) return '';
    if (response.unanswerable) {
      return `<div class="no-answer">${escapeHtml(COULD_NOT_ANSWER)}</div>`;
    }
    const cards = response.answers.map((card, i) => {
      const position = i + 1;
      const vote = this.votes.get(position);
      return [
        `<article class="answer-card" data-position="${position}">`,
        `<span class="confidence" title="cosine ${card.confidence.toFixed(4)}">`,
        `${confidencePercent(card.confidence)}</span>`,
        `<p class="passage">${escapeHtml(card.passage_text)}</p>`,
        `<div class="vote${vote ? ` voted-${vote}` : ''}">`,
        `<button class="vote-up">Was this helpful? 👍</button>`,
        `<button class="vote-down">👎</button></div>`,
        `</article>`,
      ].join('');
    });
    const related = response.related.map((card, i) =>
      [
        `<article class="related-card" data-index="${i}">`,
        `<span class="confidence">${confidencePercent(card.confidence)}</span>`,
        `<p>${escapeHtml(card.question_text)}</p>`,
        `</article>`,
      ].join(''),
    );
    return [
      `<section class="answers">${cards.join('')}</section>`,
      `<section class="related">${related.join('')}</section>`,
    ].join('');
  }

  /** Detailed answer view: the parent paragraph with the passage
   * highlighted. Emits one answer_detail_opened event. */
  async openAnswerDetail(index: number): Promise<string> {
    const card = this.requireResponse().answers[index];
    if (!card) throw new Error(`no answer card at index ${index}`);
    await this.api.event('answer_detail_opened');
    const paragraph = escapeHtml(card.paragraph_text);
    const passage = escapeHtml(card.passage_text);
    const highlighted = paragraph.includes(passage)
      ? paragraph.replace(passage, `<mark>${passage}</mark>`)
      : paragraph;
    const figures = card.figures
      .map((f) => `<figure><img src="${escapeHtml(f.uri)}" alt="${escapeHtml(f.caption)}">` +
        `<figcaption>${escapeHtml(f.caption)}</figcaption></figure>`)
      .join('');
    return `<div class="answer-detail"><p>${highlighted}</p>${figures}</div>`;
  }

  /** Expanded related question: expert answer plus exam metadata. Emits one
   * related_question_expanded event. */
  async expandRelated(index: number): Promise<string> {
    const card = this.requireResponse().related[index];
    if (!card) throw new Error(`no related question at index ${index}`);
    await this.api.event('related_question_expanded');
    return [
      `<div class="related-detail">`,
      `<p class="question">${escapeHtml(card.question_text)}</p>`,
      `<div class="expert-answer">${renderMarkdown(card.answer)}</div>`,
      `<dl><dt>Year</dt><dd>${card.year}</dd>`,
      `<dt>Exam</dt><dd>${escapeHtml(card.exam_label)}</dd>`,
      `<dt>Type</dt><dd>${escapeHtml(card.section)}</dd>`,
      card.topic ? `<dt>Topic</dt><dd>${escapeHtml(card.topic)}</dd>` : '',
      `</dl></div>`,
    ].join('');
  }

  /** Optimistic vote with revert-on-failure; re-voting overwrites. */
  async vote(position: number, vote: Vote): Promise<void> {
    const response = this.requireResponse();
    const previous = this.votes.get(position);
    this.votes.set(position, vote);
    this.notice = null;
    try {
      await this.api.feedback(response.question_id, position, vote);
    } catch (err) {
      if (previous === undefined) this.votes.delete(position);
      else this.votes.set(position, previous);
      this.notice = 'Your vote could not be saved. Please try again.';
      throw err;
    }
  }

  private requireResponse(): AskResponse {
    if (!this.response) throw new Error('no ask response yet');
    return this.response;
  }
}
