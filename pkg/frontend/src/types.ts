/** Payload shapes of the grading-service HTTP API. */

export type Role = "examiner" | "student";

export type ExamState = "Draft" | "Published" | "Evaluated" | "Approved";

export interface KeywordGroup {
  canonical: string;
  synonyms: string[];
}

export interface RubricPayload {
  question_id?: string;
  question_text: string;
  ideal_answer: string;
  expected_word_count: number;
  keyword_groups: KeywordGroup[];
  total_marks: number;
}

export interface Rubric extends RubricPayload {
  question_id: string;
}

export interface Weights {
  w1: number;
  w2: number;
  w3: number;
  w4: number;
}

export interface SubmissionWindow {
  open?: string;
  close?: string;
}

export interface ExamPayload {
  exam_id?: string;
  rubrics: RubricPayload[];
  weights?: Weights;
  copying_threshold?: number;
  window?: SubmissionWindow;
}

export interface Exam {
  id: string;
  state: ExamState;
  rubrics: Rubric[];
  weights: Weights;
  copying_threshold: number;
  window: SubmissionWindow | null;
  created_at: string;
}

export interface SubmissionPayload {
  student_id: string;
  question_id: string;
  answer_text: string;
  submission_id?: string;
}

export interface Submission {
  id: string;
  exam_id: string;
  student_id: string;
  question_id: string;
  answer_text: string;
  submitted_at: string;
}

export interface Report {
  id: string;
  exam_id: string;
  submission_id: string;
  student_id: string;
  question_id: string;
  s1: number;
  s2: number;
  s3: number;
  s4: number;
  copying_index: number;
  copied_flag: boolean;
  total_fraction: number;
  awarded_marks: number;
  source: "evaluation" | "manual_override";
  run_id: string;
}

export interface ScoreEntry {
  submission_id: string;
  exam_id: string;
  question_id: string;
  submitted_at: string;
  status: "awaiting results" | "scored";
  report?: Report;
}

export interface Discrepancy {
  id: string;
  submission_id: string;
  question_id: string;
  student_id: string;
  exam_id: string;
  comment: string;
  status: "Open" | "Resolved";
  resolution: string | null;
  override: number | null;
  created_at: string;
}

export interface Health {
  status: string;
}
