/** Drives the full examiner/student workflow through the typed API
 * client against a real service process. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { Service, startService, TOKENS } from "./server.js";

const RUBRIC = {
  question_text: "Explain the first law of thermodynamics.",
  ideal_answer:
    "The first law of thermodynamics states that energy cannot be created " +
    "or destroyed, only transformed; the change in internal energy of a " +
    "system equals heat added minus work done by the system.",
  expected_word_count: 30,
  keyword_groups: [
    { canonical: "energy", synonyms: ["work"] },
    { canonical: "heat", synonyms: [] },
  ],
  total_marks: 20,
};

let service: Service;
let examiner: ApiClient;
let alice: ApiClient;
let bob: ApiClient;

beforeAll(async () => {
  service = await startService();
  examiner = new ApiClient(service.baseUrl, TOKENS.examiner);
  alice = new ApiClient(service.baseUrl, TOKENS.alice);
  bob = new ApiClient(service.baseUrl, TOKENS.bob);
});

afterAll(async () => {
  await service.stop();
});

describe("end-to-end workflow", () => {
  let examId: string;
  let aliceSubmissionId: string;
  let discrepancyId: string;

  it("rejects an invalid exam with the violation list", async () => {
    const error = await examiner
      .createExam({ rubrics: [{ ...RUBRIC, ideal_answer: " " }] })
      .then(
        () => null,
        (e) => e as ApiError,
      );
    expect(error).toBeInstanceOf(ApiError);
    expect(error!.status).toBe(422);
    expect(error!.violations.join(" ")).toContain("EmptyIdealAnswer");
  });

  it("creates and publishes an exam", async () => {
    const exam = await examiner.createExam({ rubrics: [RUBRIC] });
    examId = exam.id;
    expect(exam.state).toBe("Draft");
    const published = await examiner.publishExam(examId);
    expect(published.state).toBe("Published");
  });

  it("refuses student actions on examiner endpoints and vice versa", async () => {
    await expect(alice.publishExam(examId)).rejects.toMatchObject({ status: 403 });
    await expect(examiner.submitAnswer(examId, {
      student_id: "examiner",
      question_id: "q1",
      answer_text: "x",
    })).rejects.toMatchObject({ status: 403 });
  });

  it("accepts two student submissions while published", async () => {
    const sub = await alice.submitAnswer(examId, {
      student_id: "alice",
      question_id: "q1",
      answer_text:
        "Energy cannot be created or destroyed only transformed so the " +
        "internal energy change of a system equals the heat added minus " +
        "the work the system performs on its surroundings.",
    });
    aliceSubmissionId = sub.id;
    await bob.submitAnswer(examId, {
      student_id: "bob",
      question_id: "q1",
      answer_text: "Something about heat.",
    });
    await expect(
      alice.submitAnswer(examId, {
        student_id: "bob",
        question_id: "q1",
        answer_text: "not mine",
      }),
    ).rejects.toMatchObject({ status: 403 });
  });

  it("hides scores from students before approval", async () => {
    const entries = await alice.studentScores("alice");
    expect(entries).toHaveLength(1);
    expect(entries[0].status).toBe("awaiting results");
    expect(entries[0].report).toBeUndefined();
    await expect(alice.studentScores("bob")).rejects.toMatchObject({ status: 403 });
  });

  it("evaluates and returns one report per submission", async () => {
    const reports = await examiner.evaluateExam(examId, true);
    expect(reports).toHaveLength(2);
    for (const report of reports) {
      for (const key of ["s1", "s2", "s3", "s4", "total_fraction"] as const) {
        expect(report[key]).toBeGreaterThanOrEqual(0);
        expect(report[key]).toBeLessThanOrEqual(1);
      }
      expect(report.awarded_marks).toBeGreaterThanOrEqual(0);
      expect(report.awarded_marks).toBeLessThanOrEqual(RUBRIC.total_marks);
      expect(report.source).toBe("evaluation");
    }
    const exam = await examiner.getExam(examId);
    expect(exam.state).toBe("Evaluated");
  });

  it("rejects out-of-order transitions with 409", async () => {
    await expect(examiner.publishExam(examId)).rejects.toMatchObject({ status: 409 });
  });

  it("releases scores on approval", async () => {
    const approved = await examiner.approveExam(examId);
    expect(approved.state).toBe("Approved");
    const entries = await alice.studentScores("alice");
    expect(entries[0].status).toBe("scored");
    const results = await examiner.examResults(examId);
    const mine = results.find((r) => r.submission_id === aliceSubmissionId)!;
    expect(entries[0].report).toEqual(mine);
  });

  it("lets the student dispute and the examiner resolve with an override", async () => {
    const disc = await alice.fileDiscrepancy(
      aliceSubmissionId,
      "q1",
      "My answer covers all the keywords.",
    );
    discrepancyId = disc.id;
    expect(disc.status).toBe("Open");

    const queue = await examiner.openDiscrepancies();
    expect(queue.map((d) => d.id)).toContain(discrepancyId);

    await expect(
      examiner.resolveDiscrepancy(discrepancyId, "", undefined),
    ).rejects.toMatchObject({ status: 422 });
    await expect(
      examiner.resolveDiscrepancy(discrepancyId, "too generous", 25),
    ).rejects.toMatchObject({ status: 422 });

    const resolved = await examiner.resolveDiscrepancy(
      discrepancyId,
      "Regraded by hand; keywords present.",
      18.5,
    );
    expect(resolved.status).toBe("Resolved");
    expect(resolved.override).toBe(18.5);

    const entries = await alice.studentScores("alice");
    expect(entries[0].report!.awarded_marks).toBe(18.5);
    expect(entries[0].report!.source).toBe("manual_override");
    expect(entries[0].report!.run_id).toBe(discrepancyId);

    expect(await examiner.openDiscrepancies()).toHaveLength(0);
  });
});
