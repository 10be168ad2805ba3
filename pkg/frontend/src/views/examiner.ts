/** Examiner screens: exam composer, lifecycle actions, results review,
 * and the discrepancy queue. All numbers shown are API payload values. */

import { ApiClient, ApiError } from "../api.js";
import { clear, el, errorList } from "../dom.js";
import { factor, marks } from "../format.js";
import { rememberExam, SessionStore } from "../session.js";
import type { Discrepancy, Exam, KeywordGroup, Report } from "../types.js";
import { validateExam } from "../validation.js";

/** One keyword group per line: "canonical: synonym, synonym". */
export function parseKeywordGroups(text: string): KeywordGroup[] {
  const groups: KeywordGroup[] = [];
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (!line) continue;
    const [canonical, rest = ""] = line.split(":", 2);
    groups.push({
      canonical: canonical.trim(),
      synonyms: rest
        .split(",")
        .map((s) => s.trim())
        .filter(Boolean),
    });
  }
  return groups;
}

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

function examComposer(
  client: ApiClient,
  store: SessionStore,
  onCreated: (exam: Exam) => Promise<void>,
): HTMLElement {
  const form = el("form", { class: "panel", "data-view": "exam-composer" });
  const questionText = el("textarea", { name: "question_text" });
  const idealAnswer = el("textarea", { name: "ideal_answer" });
  const wordCount = el("input", { name: "expected_word_count", type: "number", value: "50" });
  const totalMarks = el("input", { name: "total_marks", type: "number", step: "0.5", value: "10" });
  const keywordGroups = el("textarea", {
    name: "keyword_groups",
    placeholder: "canonical: synonym, synonym (one group per line)",
  });
  const examId = el("input", { name: "exam_id", placeholder: "auto" });
  const submit = el("button", { type: "submit", "data-action": "create-exam" }, "Create draft");

  form.append(
    el("h2", {}, "New exam"),
    el("label", {}, "Exam id ", examId),
    el("label", {}, "Question ", questionText),
    el("label", {}, "Ideal answer ", idealAnswer),
    el("label", {}, "Expected word count ", wordCount),
    el("label", {}, "Total marks ", totalMarks),
    el("label", {}, "Keyword groups ", keywordGroups),
    submit,
  );

  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    const payload = {
      exam_id: examId.value.trim() || undefined,
      rubrics: [
        {
          question_text: questionText.value,
          ideal_answer: idealAnswer.value,
          expected_word_count: Number(wordCount.value),
          keyword_groups: parseKeywordGroups(keywordGroups.value),
          total_marks: Number(totalMarks.value),
        },
      ],
    };
    const violations = validateExam(payload);
    if (violations.length) {
      showErrors(form, violations);
      return;
    }
    try {
      const exam = await client.createExam(payload);
      rememberExam(store, exam.id);
      showErrors(form, []);
      await onCreated(exam);
    } catch (error) {
      await handleFailure(form, error);
    }
  });
  return form;
}

function resultsTable(reports: Report[]): HTMLElement {
  const table = el("table", { "data-view": "results" });
  const head = el(
    "tr",
    {},
    ...["Submission", "Student", "Question", "S1", "S2", "S3", "S4", "Total", "Marks", "Copying"].map(
      (h) => el("th", {}, h),
    ),
  );
  table.append(head);
  for (const r of reports) {
    const copyBadge = r.copied_flag
      ? el("span", { class: "badge badge-copied", "data-role": "copied-flag" }, "copied?")
      : el("span", { class: "badge", "data-role": "copied-flag" }, "clear");
    table.append(
      el(
        "tr",
        { "data-submission": r.submission_id },
        el("td", {}, r.submission_id),
        el("td", {}, r.student_id),
        el("td", {}, r.question_id),
        el("td", { "data-role": "s1" }, factor(r.s1)),
        el("td", { "data-role": "s2" }, factor(r.s2)),
        el("td", { "data-role": "s3" }, factor(r.s3)),
        el("td", { "data-role": "s4" }, factor(r.s4)),
        el("td", { "data-role": "total" }, factor(r.total_fraction)),
        el("td", { "data-role": "marks" }, marks(r.awarded_marks)),
        el("td", {}, copyBadge, " ", el("span", { "data-role": "copying-index" }, factor(r.copying_index))),
      ),
    );
  }
  return table;
}

function discrepancyQueue(
  client: ApiClient,
  items: Discrepancy[],
  refresh: () => Promise<void>,
): HTMLElement {
  const panel = el("section", { class: "panel", "data-view": "discrepancies" });
  panel.append(el("h2", {}, `Open discrepancies (${items.length})`));
  for (const item of items) {
    const row = el("div", { class: "discrepancy", "data-discrepancy": item.id });
    const note = el("input", { name: "resolution", placeholder: "resolution note" });
    const override = el("input", {
      name: "override",
      type: "number",
      step: "0.01",
      placeholder: "override marks (optional)",
    });
    const resolve = el("button", { "data-action": "resolve" }, "Resolve");
    resolve.addEventListener("click", async () => {
      try {
        const value = override.value.trim();
        await client.resolveDiscrepancy(
          item.id,
          note.value,
          value === "" ? undefined : Number(value),
        );
        await refresh();
      } catch (error) {
        await handleFailure(row, error);
      }
    });
    row.append(
      el(
        "p",
        {},
        `${item.student_id} on ${item.submission_id}/${item.question_id}: `,
        el("em", {}, item.comment),
      ),
      note,
      override,
      resolve,
    );
    panel.append(row);
  }
  return panel;
}

async function examDetail(
  client: ApiClient,
  examId: string,
  refresh: () => Promise<void>,
): Promise<HTMLElement> {
  const exam = await client.getExam(examId);
  const panel = el("section", { class: "panel", "data-view": "exam-detail", "data-exam": exam.id });
  panel.append(
    el("h2", {}, `Exam ${exam.id}`),
    el("p", {}, "State: ", el("strong", { "data-role": "state" }, exam.state)),
  );
  for (const rubric of exam.rubrics) {
    panel.append(
      el(
        "p",
        {},
        `${rubric.question_id}: ${rubric.question_text} `,
        el("small", {}, `(${rubric.expected_word_count} words, ${marks(rubric.total_marks)} marks)`),
      ),
    );
  }

  const act = (label: string, action: string, run: () => Promise<unknown>) => {
    const button = el("button", { "data-action": action }, label);
    button.addEventListener("click", async () => {
      try {
        await run();
        await refresh();
      } catch (error) {
        await handleFailure(panel, error);
      }
    });
    return button;
  };

  if (exam.state === "Draft") {
    panel.append(act("Publish", "publish", () => client.publishExam(exam.id)));
  }
  if (exam.state === "Published" || exam.state === "Evaluated") {
    panel.append(act("Evaluate", "evaluate", () => client.evaluateExam(exam.id, true)));
  }
  if (exam.state === "Evaluated") {
    panel.append(act("Approve", "approve", () => client.approveExam(exam.id)));
  }
  if (exam.state === "Evaluated" || exam.state === "Approved") {
    panel.append(resultsTable(await client.examResults(exam.id)));
  }
  return panel;
}

export async function renderExaminer(
  root: HTMLElement,
  client: ApiClient,
  store: SessionStore,
  selectedExamId: string | null,
  navigate: (examId: string | null) => Promise<void>,
): Promise<void> {
  clear(root);
  // Refresh through the app's serialized render so a concurrent
  // hashchange-triggered render cannot leave this view in a detached node.
  const refresh = () => navigate(selectedExamId);

  const picker = el("section", { class: "panel", "data-view": "exam-picker" });
  picker.append(el("h2", {}, "Exams this session"));
  const list = el("ul", {});
  for (const id of store.knownExamIds) {
    const link = el("a", { href: `#/examiner/${id}`, "data-exam-link": id }, id);
    list.append(el("li", {}, link));
  }
  picker.append(list);
  const idInput = el("input", { name: "load_exam_id", placeholder: "exam id" });
  const load = el("button", { "data-action": "load-exam" }, "Load");
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
      root.append(await examDetail(client, selectedExamId, refresh));
    } catch (error) {
      const panel = el("section", { class: "panel", "data-view": "exam-detail" });
      await handleFailure(panel, error);
      root.append(panel);
    }
  }

  root.append(examComposer(client, store, (exam) => navigate(exam.id)));

  try {
    const open = await client.openDiscrepancies();
    root.append(discrepancyQueue(client, open, refresh));
  } catch (error) {
    const panel = el("section", { class: "panel", "data-view": "discrepancies" });
    await handleFailure(panel, error);
    root.append(panel);
  }
}
