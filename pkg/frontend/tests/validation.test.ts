import { describe, expect, it } from "vitest";

import { marks } from "../src/format.js";
import { validateExam, validateRubric } from "../src/validation.js";
import { parseKeywordGroups } from "../src/views/examiner.js";

const GOOD_RUBRIC = {
  question_text: "Explain the first law of thermodynamics.",
  ideal_answer: "Energy is conserved in an isolated system.",
  expected_word_count: 40,
  keyword_groups: [{ canonical: "energy", synonyms: ["work"] }],
  total_marks: 20,
};

describe("validateRubric", () => {
  it("accepts a well-formed rubric", () => {
    expect(validateRubric(GOOD_RUBRIC)).toEqual([]);
  });

  it("collects every violation at once", () => {
    const bad = {
      ...GOOD_RUBRIC,
      ideal_answer: "  ",
      expected_word_count: 0,
      total_marks: 0,
    };
    expect(validateRubric(bad)).toEqual([
      "EmptyIdealAnswer",
      "NonPositiveWordCount",
      "NonPositiveMarks",
    ]);
  });

  it("flags a term shared by two groups, naming both", () => {
    const bad = {
      ...GOOD_RUBRIC,
      keyword_groups: [
        { canonical: "energy", synonyms: ["work"] },
        { canonical: "heat", synonyms: ["work"] },
      ],
    };
    expect(validateRubric(bad)).toEqual([
      "OverlappingKeywordGroups: 'work' in 'energy' and 'heat'",
    ]);
  });

  it("flags a canonical term listed among its own synonyms", () => {
    const bad = {
      ...GOOD_RUBRIC,
      keyword_groups: [{ canonical: "energy", synonyms: ["energy"] }],
    };
    expect(validateRubric(bad)).toContain("CanonicalListedAsSynonym: 'energy'");
  });
});

describe("validateExam", () => {
  it("requires at least one rubric", () => {
    expect(validateExam({ rubrics: [] })).toEqual(["exam needs at least one rubric"]);
  });

  it("rejects duplicate question ids and prefixes rubric violations", () => {
    const payload = {
      rubrics: [
        { ...GOOD_RUBRIC, question_id: "q1" },
        { ...GOOD_RUBRIC, question_id: "q1", ideal_answer: "" },
      ],
    };
    const violations = validateExam(payload);
    expect(violations).toContain("duplicate question_id");
    expect(violations).toContain("rubric 2: EmptyIdealAnswer");
  });
});

describe("parseKeywordGroups", () => {
  it("parses one group per line with optional synonyms", () => {
    expect(parseKeywordGroups("energy: work, heat\nentropy\n")).toEqual([
      { canonical: "energy", synonyms: ["work", "heat"] },
      { canonical: "entropy", synonyms: [] },
    ]);
  });

  it("ignores blank lines and trims whitespace", () => {
    expect(parseKeywordGroups("\n  pressure :  force \n\n")).toEqual([
      { canonical: "pressure", synonyms: ["force"] },
    ]);
  });
});

describe("marks formatting", () => {
  it("renders API numbers with exactly two decimals, no arithmetic", () => {
    expect(marks(16.9)).toBe("16.90");
    expect(marks(0)).toBe("0.00");
    expect(marks(12.25)).toBe("12.25");
  });
});
