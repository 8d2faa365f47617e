import type {
  ApiErrorBody,
  AskResponse,
  FilterValues,
  HistoryItem,
  QuestionsPage,
  ServerConfig,
  Vote,
} from './types.js';
import type { UsageKind } from './events.js';

export class ApiError extends Error {
  readonly code: ApiErrorBody['code'];
  readonly retryable: boolean;
  readonly status: number;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.code = body.code;
    this.retryable = body.retryable;
    this.status = status;
  }
}

export interface QuestionQuery {
  year?: number;
  exam?: string;
  section?: string;
  topic?: string;
  page?: number;
  page_size?: number;
}

/** Thin typed client over the JSON API; the only backend the app talks to. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly sessionId: string = `web-${Math.random().toString(36).slice(2, 10)}`,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.baseUrl + path, {
      ...init,
      headers: {
        'Content-Type': 'application/json',
        'X-Session-Id': this.sessionId,
        ...(init?.headers ?? {}),
      },
    });
    if (resp.status === 204) return undefined as T;
    if (!resp.ok) {
      let body: ApiErrorBody;
      try {
        body = (await resp.json()) as ApiErrorBody;
      } catch {
        body = { code: 'Internal', message: `HTTP ${resp.status}`, retryable: false };
      }
      throw new ApiError(resp.status, body);
    }
    return (await resp.json()) as T;
  }

  config(): Promise<ServerConfig> {
    return this.request('/api/config');
  }

  ask(userId: string, question: string, subject?: string): Promise<AskResponse> {
    return this.request('/api/ask', {
      method: 'POST',
      body: JSON.stringify({ user_id: userId, question, ...(subject ? { subject } : {}) }),
    });
  }

  questions(query: QuestionQuery = {}): Promise<QuestionsPage> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(query)) {
      if (value !== undefined) params.set(key, String(value));
    }
    const qs = params.toString();
    return this.request(`/api/questions${qs ? `?${qs}` : ''}`);
  }

  filters(): Promise<FilterValues> {
    return this.request('/api/filters');
  }

  history(userId: string, page = 1): Promise<{ items: HistoryItem[] }> {
    return this.request(`/api/history?user_id=${encodeURIComponent(userId)}&page=${page}`);
  }

  feedback(questionId: string, position: number, vote: Vote): Promise<void> {
    return this.request('/api/feedback', {
      method: 'POST',
      body: JSON.stringify({ question_id: questionId, position, vote }),
    });
  }

  event(kind: UsageKind): Promise<void> {
    return this.request('/api/events', {
      method: 'POST',
      body: JSON.stringify({ kind }),
    });
  }
}
