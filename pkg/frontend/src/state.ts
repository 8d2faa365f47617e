/** Client view state. The question-length limit is never hardcoded here:
 * it comes from the server config endpoint, so the counter and the
 * submit gate always match the backend's validation. */

export type Page = 'ask' | 'past_questions' | 'history';

export interface ActiveFilters {
  year?: number;
  exam?: string;
  section?: string;
  topic?: string;
}

export interface ViewState {
  page: Page;
  filters: ActiveFilters;
  pendingQuestion: string;
  charCount: number;
  charLimit: number;
}

export function createViewState(charLimit: number): ViewState {
  return { page: 'ask', filters: {}, pendingQuestion: '', charCount: 0, charLimit };
}

/** Mirror of the input control's maxlength behaviour: text is clamped to
 * the server limit and the counter tracks the clamped text. */
export function setPendingQuestion(state: ViewState, text: string): ViewState {
  const clamped = text.length > state.charLimit ? text.slice(0, state.charLimit) : text;
  return { ...state, pendingQuestion: clamped, charCount: clamped.length };
}

export function submitDisabled(state: ViewState): boolean {
  return state.charCount === 0 || state.charCount > state.charLimit;
}

export function setPage(state: ViewState, page: Page): ViewState {
  return { ...state, page };
}
