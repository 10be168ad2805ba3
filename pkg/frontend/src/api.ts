/** Typed client for the grading-service HTTP API (bearer-token auth). */

import type {
  Discrepancy,
  Exam,
  ExamPayload,
  Health,
  Report,
  ScoreEntry,
  Submission,
  SubmissionPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: unknown,
  ) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
    this.name = "ApiError";
  }

  /** Validation responses carry a list of violations; others a message. */
  get violations(): string[] {
    if (Array.isArray(this.detail)) return this.detail.map(String);
    return [String(this.detail)];
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private token: string = "",
  ) {}

  setToken(token: string): void {
    this.token = token;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    if (body !== undefined) headers["Content-Type"] = "application/json";
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      const detail =
        payload && typeof payload === "object" && "detail" in payload
          ? (payload as { detail: unknown }).detail
          : response.statusText;
      throw new ApiError(response.status, detail);
    }
    return payload as T;
  }

  health(): Promise<Health> {
    return this.request("GET", "/healthz");
  }

  createExam(payload: ExamPayload): Promise<Exam> {
    return this.request("POST", "/exams", payload);
  }

  publishExam(examId: string): Promise<Exam> {
    return this.request("PUT", `/exams/${examId}/publish`);
  }

  getExam(examId: string): Promise<Exam> {
    return this.request("GET", `/exams/${examId}`);
  }

  submitAnswer(examId: string, payload: SubmissionPayload): Promise<Submission> {
    return this.request("POST", `/exams/${examId}/submissions`, payload);
  }

  evaluateExam(examId: string, force = false): Promise<Report[]> {
    const query = force ? "?force=true" : "";
    return this.request("POST", `/exams/${examId}/evaluate${query}`);
  }

  examResults(examId: string): Promise<Report[]> {
    return this.request("GET", `/exams/${examId}/results`);
  }

  approveExam(examId: string): Promise<Exam> {
    return this.request("PUT", `/exams/${examId}/approve`);
  }

  studentScores(studentId: string): Promise<ScoreEntry[]> {
    return this.request("GET", `/students/${studentId}/scores`);
  }

  fileDiscrepancy(
    submissionId: string,
    questionId: string,
    comment: string,
  ): Promise<Discrepancy> {
    return this.request("POST", `/submissions/${submissionId}/discrepancies`, {
      question_id: questionId,
      comment,
    });
  }

  openDiscrepancies(): Promise<Discrepancy[]> {
    return this.request("GET", "/discrepancies");
  }

  resolveDiscrepancy(
    discrepancyId: string,
    resolution: string,
    override?: number,
  ): Promise<Discrepancy> {
    return this.request("PUT", `/discrepancies/${discrepancyId}/resolve`, {
      resolution,
      override: override ?? null,
    });
  }
}
