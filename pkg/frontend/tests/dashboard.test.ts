// @vitest-environment jsdom
/** Scripted browser walkthrough of the whole workflow: the examiner
 * composes/publishes an exam, two students answer, the examiner
 * evaluates and approves, a student disputes, the examiner resolves
 * with an override. Every displayed mark is checked character-for-
 * character against the API payload. */

import { afterAll, beforeAll, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App, createApp } from "../src/app.js";
import { Service, startService, TOKENS } from "./server.js";

let service: Service;
let app: App;
let root: HTMLElement;
/** Independent client used only to fetch expected payload values. */
let oracle: ApiClient;
let examId: string;

beforeAll(async () => {
  service = await startService();
  oracle = new ApiClient(service.baseUrl, TOKENS.examiner);
  root = document.createElement("div");
  document.body.append(root);
  app = createApp(root, service.baseUrl);
  await app.render();
});

afterAll(async () => {
  await service.stop();
});

async function waitFor<T>(probe: () => T | null | undefined, what: string): Promise<T> {
  const deadline = Date.now() + 15_000;
  for (;;) {
    const found = probe();
    if (found !== null && found !== undefined) return found;
    if (Date.now() > deadline) {
      throw new Error(`timed out waiting for ${what}\n${root.innerHTML}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

function input(selector: string): HTMLInputElement | HTMLTextAreaElement {
  const node = root.querySelector(selector);
  if (!node) throw new Error(`no element matches ${selector}`);
  return node as HTMLInputElement | HTMLTextAreaElement;
}

function click(selector: string): void {
  const node = root.querySelector<HTMLElement>(selector);
  if (!node) throw new Error(`no element matches ${selector}`);
  node.click();
}

function submitForm(selector: string): void {
  const form = root.querySelector<HTMLFormElement>(selector);
  if (!form) throw new Error(`no form matches ${selector}`);
  form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
}

async function signIn(token: string, role: string, studentId = ""): Promise<void> {
  // Returning to the login screen models switching accounts in one tab.
  app.store.current = null;
  await app.render();
  input('[data-view="login"] [name="token"]').value = token;
  (root.querySelector('[data-view="login"] [name="role"]') as HTMLSelectElement).value = role;
  input('[data-view="login"] [name="student_id"]').value = studentId;
  submitForm('[data-view="login"]');
  await waitFor(
    () => (root.querySelector('[data-role="whoami"]')?.textContent ?? "").includes(role) || null,
    `signed-in header for ${role}`,
  );
}

it("blocks an invalid exam client-side before any request is made", async () => {
  await signIn(TOKENS.examiner, "examiner");
  input('[data-view="exam-composer"] [name="question_text"]').value = "Explain entropy.";
  input('[data-view="exam-composer"] [name="ideal_answer"]').value = "   ";
  input('[data-view="exam-composer"] [name="expected_word_count"]').value = "0";
  submitForm('[data-view="exam-composer"]');
  const errors = await waitFor(
    () => root.querySelector('[data-view="exam-composer"] [data-role="errors"]'),
    "composer validation errors",
  );
  expect(errors.textContent).toContain("EmptyIdealAnswer");
  expect(errors.textContent).toContain("NonPositiveWordCount");
  expect(app.store.knownExamIds).toEqual([]);
});

it("creates and publishes an exam from the composer", async () => {
  input('[data-view="exam-composer"] [name="question_text"]').value =
    "Explain the first law of thermodynamics.";
  input('[data-view="exam-composer"] [name="ideal_answer"]').value =
    "The first law of thermodynamics states that energy cannot be created " +
    "or destroyed, only transformed; the change in internal energy equals " +
    "heat added minus work done by the system.";
  input('[data-view="exam-composer"] [name="expected_word_count"]').value = "30";
  input('[data-view="exam-composer"] [name="total_marks"]').value = "20";
  input('[data-view="exam-composer"] [name="keyword_groups"]').value =
    "energy: work\nheat";
  submitForm('[data-view="exam-composer"]');

  const state = await waitFor(
    () => root.querySelector('[data-view="exam-detail"] [data-role="state"]'),
    "draft exam detail",
  );
  expect(state.textContent).toBe("Draft");
  examId = app.store.knownExamIds[0];
  expect(examId).toBeTruthy();

  click('[data-action="publish"]');
  await waitFor(
    () =>
      root.querySelector('[data-view="exam-detail"] [data-role="state"]')?.textContent ===
        "Published" || null,
    "published state",
  );
});

it("lets two students submit answers through the exam screen", async () => {
  for (const [token, answer] of [
    [
      TOKENS.alice,
      "Energy cannot be created or destroyed only transformed so the " +
        "internal energy change equals the heat added minus the work the " +
        "system performs on its surroundings.",
    ],
    [TOKENS.bob, "Something vague about heat."],
  ] as const) {
    const who = token === TOKENS.alice ? "alice" : "bob";
    await signIn(token, "student", who);
    input('[data-view="exam-picker"] [name="load_exam_id"]').value = examId;
    click('[data-action="load-exam"]');
    const answerBox = await waitFor(
      () =>
        root.querySelector<HTMLTextAreaElement>(
          '[data-view="exam-taking"] textarea[name="answer_q1"]',
        ),
      "answer textarea",
    );
    answerBox.value = answer;
    click('[data-action="submit-answer"]');
    await waitFor(
      () => root.querySelector('[data-role="receipt"]'),
      "submission receipt",
    );
  }
});

it("shows students a pending status before approval", async () => {
  await signIn(TOKENS.alice, "student", "alice");
  const status = await waitFor(
    () => root.querySelector('[data-view="score-history"] [data-role="status"]'),
    "score history entry",
  );
  expect(status.textContent).toBe("awaiting results");
  expect(root.querySelector('[data-view="score-history"] [data-role="marks"]')).toBeNull();
});

it("evaluates and approves, displaying exactly the API's numbers", async () => {
  await signIn(TOKENS.examiner, "examiner");
  input('[data-view="exam-picker"] [name="load_exam_id"]').value = examId;
  click('[data-action="load-exam"]');
  await waitFor(
    () => root.querySelector('[data-action="evaluate"]'),
    "evaluate button",
  );
  click('[data-action="evaluate"]');
  await waitFor(
    () => root.querySelector('[data-view="results"]'),
    "results table",
  );
  click('[data-action="approve"]');
  await waitFor(
    () =>
      root.querySelector('[data-view="exam-detail"] [data-role="state"]')?.textContent ===
        "Approved" || null,
    "approved state",
  );

  const reports = await oracle.examResults(examId);
  expect(reports).toHaveLength(2);
  for (const report of reports) {
    const row = root.querySelector(`tr[data-submission="${report.submission_id}"]`);
    expect(row).not.toBeNull();
    const cell = (role: string) =>
      row!.querySelector(`[data-role="${role}"]`)!.textContent;
    expect(cell("s1")).toBe(report.s1.toFixed(2));
    expect(cell("s2")).toBe(report.s2.toFixed(2));
    expect(cell("s3")).toBe(report.s3.toFixed(2));
    expect(cell("s4")).toBe(report.s4.toFixed(2));
    expect(cell("total")).toBe(report.total_fraction.toFixed(2));
    expect(cell("marks")).toBe(report.awarded_marks.toFixed(2));
    expect(cell("copying-index")).toBe(report.copying_index.toFixed(2));
    expect(cell("copied-flag")).toBe(report.copied_flag ? "copied?" : "clear");
  }
});

it("shows the student their released marks and files a dispute", async () => {
  await signIn(TOKENS.alice, "student", "alice");
  const marksCell = await waitFor(
    () => root.querySelector('[data-view="score-history"] [data-role="marks"]'),
    "released marks",
  );
  const reports = await oracle.examResults(examId);
  const mine = reports.find((r) => r.student_id === "alice")!;
  expect(marksCell.textContent).toBe(mine.awarded_marks.toFixed(2));

  input('[data-view="score-history"] [name="dispute_comment"]').value =
    "My answer covers every keyword.";
  click('[data-action="file-discrepancy"]');
  await waitFor(
    () => root.querySelector('[data-role="dispute-receipt"]'),
    "dispute receipt",
  );
});

it("resolves the dispute with an override that the student then sees", async () => {
  await signIn(TOKENS.examiner, "examiner");
  const row = await waitFor(
    () => root.querySelector('[data-view="discrepancies"] [data-discrepancy]'),
    "open discrepancy",
  );
  expect(row.textContent).toContain("My answer covers every keyword.");
  (row.querySelector('[name="resolution"]') as HTMLInputElement).value =
    "Regraded by hand; keywords present.";
  (row.querySelector('[name="override"]') as HTMLInputElement).value = "18.5";
  click('[data-action="resolve"]');
  await waitFor(
    () =>
      root.querySelector('[data-view="discrepancies"] h2')?.textContent ===
        "Open discrepancies (0)" || null,
    "empty discrepancy queue",
  );

  await signIn(TOKENS.alice, "student", "alice");
  const marksCell = await waitFor(
    () => root.querySelector('[data-view="score-history"] [data-role="marks"]'),
    "overridden marks",
  );
  const reports = await oracle.examResults(examId);
  const mine = reports.find((r) => r.student_id === "alice")!;
  expect(mine.awarded_marks).toBe(18.5);
  expect(mine.source).toBe("manual_override");
  expect(marksCell.textContent).toBe(mine.awarded_marks.toFixed(2));
  expect(marksCell.textContent).toBe("18.50");
});
