/** Student screens: take a published exam, review released scores, and
 * file a dispute on a scored answer. Displayed numbers come verbatim
 * from API payloads (two-decimal formatting only). */

import { ApiClient, ApiError } from "../api.js";
import { clear, el, errorList } from "../dom.js";
import { factor, marks } from "../format.js";
import { rememberExam, SessionStore } from "../session.js";
import type { ScoreEntry } from "../types.js";

function showErrors(host: HTMLElement, messages: string[]): void {
  host.querySelector('[data-role="errors"]')?.remove();
  if (messages.length) host.prepend(errorList(messages));
}

async function handleFailure(host: HTMLElement, error: unknown): Promise<void> {
  if (error instanceof ApiError) {
    showErrors(host, error.violations);
  } else {
    showErrors(host, [String(error)]);
  }
}

async function examTaking(
  client: ApiClient,
  store: SessionStore,
  studentId: string,
  examId: string,
): Promise<HTMLElement> {
  const exam = await client.getExam(examId);
  const panel = el("section", { class: "panel", "data-view": "exam-taking", "data-exam": exam.id });
  panel.append(
    el("h2", {}, `Exam ${exam.id}`),
    el("p", {}, "State: ", el("strong", { "data-role": "state" }, exam.state)),
  );
  if (exam.state !== "Published") {
    panel.append(el("p", {}, "This exam is not open for submissions."));
    return panel;
  }
  if (exam.window?.close) {
    panel.append(el("p", {}, `Window closes at ${exam.window.close}`));
  }
  for (const rubric of exam.rubrics) {
    const answer = el("textarea", { name: `answer_${rubric.question_id}` });
    const submit = el(
      "button",
      { "data-action": "submit-answer", "data-question": rubric.question_id },
      "Submit answer",
    );
    const block = el(
      "div",
      { class: "question", "data-question": rubric.question_id },
      el("h3", {}, `${rubric.question_id}: ${rubric.question_text}`),
      el("p", {}, el("small", {}, `about ${rubric.expected_word_count} words`)),
      answer,
      submit,
    );
    submit.addEventListener("click", async () => {
      try {
        await client.submitAnswer(exam.id, {
          student_id: studentId,
          question_id: rubric.question_id,
          answer_text: answer.value,
        });
        block.append(el("p", { "data-role": "receipt" }, "Submitted."));
      } catch (error) {
        await handleFailure(block, error);
      }
    });
    panel.append(block);
  }
  return panel;
}

function scoreRow(client: ApiClient, entry: ScoreEntry): HTMLElement {
  const row = el("div", { class: "score-entry", "data-submission": entry.submission_id });
  row.append(
    el(
      "p",
      {},
      `${entry.exam_id} / ${entry.question_id} — `,
      el("strong", { "data-role": "status" }, entry.status),
    ),
  );
  if (entry.status === "scored" && entry.report) {
    const r = entry.report;
    row.append(
      el(
        "p",
        {},
        "Marks: ",
        el("strong", { "data-role": "marks" }, marks(r.awarded_marks)),
        ` (S1 ${factor(r.s1)}, S2 ${factor(r.s2)}, S3 ${factor(r.s3)}, S4 ${factor(r.s4)},`,
        ` total ${factor(r.total_fraction)}, source ${r.source})`,
      ),
    );
    const comment = el("input", { name: "dispute_comment", placeholder: "what looks wrong?" });
    const dispute = el("button", { "data-action": "file-discrepancy" }, "Dispute");
    dispute.addEventListener("click", async () => {
      try {
        await client.fileDiscrepancy(entry.submission_id, entry.question_id, comment.value);
        row.append(el("p", { "data-role": "dispute-receipt" }, "Dispute filed."));
      } catch (error) {
        await handleFailure(row, error);
      }
    });
    row.append(comment, dispute);
  }
  return row;
}

export async function renderStudent(
  root: HTMLElement,
  client: ApiClient,
  store: SessionStore,
  studentId: string,
  selectedExamId: string | null,
  navigate: (examId: string | null) => Promise<void>,
): Promise<void> {
  clear(root);

  const picker = el("section", { class: "panel", "data-view": "exam-picker" });
  picker.append(el("h2", {}, "Take an exam"));
  const idInput = el("input", { name: "load_exam_id", placeholder: "exam id" });
  const load = el("button", { "data-action": "load-exam" }, "Open");
  load.addEventListener("click", async () => {
    const id = idInput.value.trim();
    if (!id) return;
    try {
      await client.getExam(id);
      rememberExam(store, id);
      await navigate(id);
    } catch (error) {
      await handleFailure(picker, error);
    }
  });
  picker.append(idInput, load);
  root.append(picker);

  if (selectedExamId) {
    try {
      root.append(await examTaking(client, store, studentId, selectedExamId));
    } catch (error) {
      const panel = el("section", { class: "panel", "data-view": "exam-taking" });
      await handleFailure(panel, error);
      root.append(panel);
    }
  }

  const history = el("section", { class: "panel", "data-view": "score-history" });
  history.append(el("h2", {}, "My scores"));
  try {
    const entries = await client.studentScores(studentId);
    if (entries.length === 0) {
      history.append(el("p", {}, "No submissions yet."));
    }
    for (const entry of entries) {
      history.append(scoreRow(client, entry));
    }
  } catch (error) {
    await handleFailure(history, error);
  }
  root.append(history);
}
