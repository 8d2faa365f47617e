/** JSON payload types of the sciqa API. */

export interface FigureRef {
  id: string;
  caption: string;
  uri: string;
}

export interface AnswerCard {
  passage_id: string;
  passage_text: string;
  paragraph_text: string;
  confidence: number;
  figures: FigureRef[];
}

export interface RelatedQuestionCard {
  question_id: string;
  question_text: string;
  answer: string;
  year: number;
  exam_label: string;
  section: string;
  topic: string | null;
  confidence: number;
}

export interface AskResponse {
  question_id: string;
  unanswerable: boolean;
  answers: AnswerCard[];
  related: RelatedQuestionCard[];
}

export interface ExamQuestion {
  id: string;
  year: number;
  exam_label: string;
  section: string;
  number: string;
  text: string;
  options: Record<string, string> | null;
  answer: string;
  explanation: string | null;
  figure_refs: string[];
  topic: string | null;
}

export interface QuestionsPage {
  items: ExamQuestion[];
  total: number;
}

export interface FilterValues {
  years: number[];
  exam_labels: string[];
  sections: string[];
  topics: string[];
}

export interface ServerConfig {
  max_question_chars: number;
  max_answers: number;
  max_related: number;
  passage_threshold: number;
  question_threshold: number;
  subject: string;
}

export interface HistoryItem {
  id: string;
  user_id: string;
  question: string;
  subject: string;
  ts: string;
  unanswerable: boolean;
}

export type Vote = 'up' | 'down';

export interface ApiErrorBody {
  code: 'InvalidInput' | 'NotFound' | 'Upstream' | 'Internal';
  message: string;
  retryable: boolean;
}
