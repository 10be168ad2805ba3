/** In-memory session: the bearer token plus who it belongs to. Nothing is
 * persisted client-side beyond this object's lifetime. */

import type { Role } from "./types.js";

export interface Session {
  token: string;
  role: Role;
  studentId?: string;
}

export interface SessionStore {
  current: Session | null;
  /** Exam ids seen this session (the API has no list endpoint). */
  knownExamIds: string[];
}

export function rememberExam(store: SessionStore, examId: string): void {
  if (!store.knownExamIds.includes(examId)) {
    store.knownExamIds.push(examId);
  }
}
