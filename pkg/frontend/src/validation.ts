/** Client-side rubric validation mirroring the service's rules, so the
 * exam form can flag problems before the request is made. The server
 * remains authoritative; this is a convenience pre-check only. */

import type { ExamPayload, RubricPayload } from "./types.js";

export function validateRubric(rubric: RubricPayload): string[] {
  const violations: string[] = [];
  if (!rubric.question_text.trim()) violations.push("EmptyQuestionText");
  if (!rubric.ideal_answer.trim()) violations.push("EmptyIdealAnswer");
  if (rubric.expected_word_count < 1) violations.push("NonPositiveWordCount");
  if (!(rubric.total_marks > 0)) violations.push("NonPositiveMarks");
  const seen = new Map<string, string>();
  for (const group of rubric.keyword_groups) {
    const members = [group.canonical, ...group.synonyms];
    if (group.synonyms.includes(group.canonical)) {
      violations.push(`CanonicalListedAsSynonym: '${group.canonical}'`);
    }
    if (members.some((m) => !m)) {
      violations.push(`EmptyKeywordMember in group '${group.canonical}'`);
    }
    for (const m of members) {
      const owner = seen.get(m);
      if (owner !== undefined && owner !== group.canonical) {
        violations.push(
          `OverlappingKeywordGroups: '${m}' in '${owner}' and '${group.canonical}'`,
        );
      } else if (owner === undefined) {
        seen.set(m, group.canonical);
      }
    }
  }
  return violations;
}

export function validateExam(payload: ExamPayload): string[] {
  const violations: string[] = [];
  if (payload.rubrics.length === 0) {
    violations.push("exam needs at least one rubric");
  }
  const qids = payload.rubrics
    .map((r) => r.question_id)
    .filter((q): q is string => Boolean(q));
  if (new Set(qids).size !== qids.length) {
    violations.push("duplicate question_id");
  }
  for (const [i, rubric] of payload.rubrics.entries()) {
    for (const v of validateRubric(rubric)) {
      violations.push(`rubric ${i + 1}: ${v}`);
    }
  }
  return violations;
}
