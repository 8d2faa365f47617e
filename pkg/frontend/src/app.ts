/** Browser bootstrap: wires the controllers to the DOM. The contract logic
 * all lives in the controllers so it stays testable without a browser. */

import { ApiClient } from './api.js';
import { AskController } from './ask.js';
import { PastQuestionsBrowser } from './browse.js';
import { HistoryView } from './history.js';
import {
  createViewState,
  setPage,
  setPendingQuestion,
  submitDisabled,
  type Page,
  type ViewState,
} from './state.js';

function userId(): string {
  const key = 'sciqa-user';
  let id = localStorage.getItem(key);
  if (!id) {
    id = `u-${Math.random().toString(36).slice(2, 12)}`;
    localStorage.setItem(key, id);
  }
  return id;
}

export async function bootstrap(root: HTMLElement, baseUrl = ''): Promise<void> {
  const api = new ApiClient(baseUrl);
  const config = await api.config();
  const uid = userId();
  const ask = new AskController(api, uid);
  const browser = new PastQuestionsBrowser(api);
  const history = new HistoryView(api, uid);
  let state: ViewState = createViewState(config.max_question_chars);

  root.innerHTML = `
    <nav class="tabs">
      <button data-page="ask">Ask</button>
      <button data-page="past_questions">Past questions</button>
      <button data-page="history">History</button>
    </nav>
    <section id="page-ask">
      <form id="ask-form">
        <textarea id="question" maxlength="${config.max_question_chars}"
                  placeholder="Ask a science question"></textarea>
        <div><span id="char-count">0/${config.max_question_chars}</span>
        <button id="submit" type="submit" disabled>Ask</button></div>
      </form>
      <div id="ask-results"></div>
      <div id="ask-detail"></div>
    </section>
    <section id="page-past_questions" hidden>
      <div id="filter-bar"></div>
      <div id="question-list"></div>
      <div id="question-detail"></div>
    </section>
    <section id="page-history" hidden><div id="history-list"></div></section>
  `;

  const show = (page: Page) => {
    state = setPage(state, page);
    for (const section of root.querySelectorAll('section[id^="page-"]')) {
      (section as HTMLElement).hidden = section.id !== `page-${page}`;
    }
  };
  root.querySelectorAll('.tabs button').forEach((button) =>
    button.addEventListener('click', async () => {
      const page = (button as HTMLElement).dataset.page as Page;
      show(page);
      if (page === 'past_questions' && !browser.available) {
        await browser.loadFilters();
        renderFilterBar();
        await browser.load(1);
        renderQuestions();
      }
      if (page === 'history') {
        await history.load();
        byId('history-list').innerHTML = history.render();
      }
    }),
  );

  const byId = (id: string) => root.querySelector(`#${id}`) as HTMLElement;
  const textarea = byId('question') as HTMLTextAreaElement;
  const submit = byId('submit') as HTMLButtonElement;

  textarea.addEventListener('input', () => {
    state = setPendingQuestion(state, textarea.value);
    byId('char-count').textContent = `${state.charCount}/${state.charLimit}`;
    submit.disabled = submitDisabled(state);
  });

  byId('ask-form').addEventListener('submit', async (event) => {
    event.preventDefault();
    if (submitDisabled(state)) return;
    await ask.submit(state.pendingQuestion);
    byId('ask-results').innerHTML = ask.renderAnswers();
    byId('ask-detail').innerHTML = '';
    wireAskCards();
  });

  function wireAskCards(): void {
    byId('ask-results').querySelectorAll('.answer-card').forEach((card, index) => {
      card.querySelector('.passage')?.addEventListener('click', async () => {
        byId('ask-detail').innerHTML = await ask.openAnswerDetail(index);
      });
      const position = index + 1;
      card.querySelector('.vote-up')?.addEventListener('click', () => voteSafely(position, 'up'));
      card.querySelector('.vote-down')?.addEventListener('click', () => voteSafely(position, 'down'));
    });
    byId('ask-results').querySelectorAll('.related-card').forEach((card, index) =>
      card.addEventListener('click', async () => {
        byId('ask-detail').innerHTML = await ask.expandRelated(index);
      }),
    );
  }

  async function voteSafely(position: number, vote: 'up' | 'down'): Promise<void> {
    try {
      await ask.vote(position, vote);
    } catch {
      // state reverted by the controller; surface the notice
    }
    byId('ask-results').innerHTML = ask.renderAnswers() +
      (ask.notice ? `<div class="notice">${ask.notice}</div>` : '');
    wireAskCards();
  }

  function renderFilterBar(): void {
    const values = browser.available!;
    const dropdown = (id: string, label: string, options: (string | number)[]) =>
      `<label>${label} <select id="${id}"><option value="">all</option>` +
      options.map((o) => `<option>${o}</option>`).join('') +
      `</select></label>`;
    byId('filter-bar').innerHTML =
      dropdown('f-year', 'Year', values.years) +
      dropdown('f-section', 'Type', values.sections) +
      dropdown('f-topic', 'Topic', values.topics) +
      dropdown('f-exam', 'Exam', values.exam_labels);
    const on = (id: string, handler: (value: string) => Promise<unknown>) =>
      byId(id).addEventListener('change', async (event) => {
        await handler((event.target as HTMLSelectElement).value);
        renderQuestions();
      });
    on('f-year', (v) => browser.selectYear(v ? Number(v) : undefined));
    on('f-section', (v) => browser.selectQuestionType(v || undefined));
    on('f-topic', (v) => browser.selectTopic(v || undefined));
    on('f-exam', (v) => browser.selectExam(v || undefined));
  }

  function renderQuestions(): void {
    byId('question-list').innerHTML = browser.renderList();
    byId('question-list').querySelectorAll('.question-card').forEach((card) =>
      card.querySelector('.show-answer')?.addEventListener('click', async () => {
        const id = (card as HTMLElement).dataset.id!;
        byId('question-detail').innerHTML = await browser.showAnswer(id);
      }),
    );
  }

  show('ask');
}

declare global {
  interface Window { sciqaBootstrap?: typeof bootstrap }
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  void bootstrap(document.getElementById('app')!);
}
