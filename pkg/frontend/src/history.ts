import { ApiClient } from './api.js';
import { escapeHtml } from './markdown.js';
import type { HistoryItem } from './types.js';

export class HistoryView {
  items: HistoryItem[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly userId: string,
  ) {}

  async load(page = 1): Promise<HistoryItem[]> {
    this.items = (await this.api.history(this.userId, page)).items;
    return this.items;
  }

  render(): string {
    if (!this.items.length) {
      return `<div class="empty-state">You have not asked any questions yet.</div>`;
    }
    const rows = this.items.map((item) =>
      [
        `<li class="history-item${item.unanswerable ? ' unanswerable' : ''}">`,
        `<time>${escapeHtml(item.ts)}</time> `,
        `<span class="question">${escapeHtml(item.question)}</span>`,
        `</li>`,
      ].join(''),
    );
    return `<ol class="history">${rows.join('')}</ol>`;
  }
}
