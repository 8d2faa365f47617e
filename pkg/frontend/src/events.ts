/** Usage-event taxonomy: every tracked UI interaction maps to exactly one
 * event kind, and no other kinds exist. */

export type UsageKind =
  | 'answer_detail_opened'
  | 'related_question_expanded'
  | 'show_answer'
  | 'select_year'
  | 'select_question_type'
  | 'select_topic';

export const EVENT_BY_INTERACTION: Readonly<Record<string, UsageKind>> = {
  openAnswerDetail: 'answer_detail_opened',
  expandRelatedQuestion: 'related_question_expanded',
  showAnswer: 'show_answer',
  selectYear: 'select_year',
  selectQuestionType: 'select_question_type',
  selectTopic: 'select_topic',
};
