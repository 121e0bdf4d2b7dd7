import type {
  Exercise,
  FeedbackReport,
  LineVerdict,
  Verdict,
} from "../src/types.js";

export function line(
  id: number,
  text: string,
  verdict: Verdict,
  extra: Partial<LineVerdict> = {},
): LineVerdict {
  return {
    line_id: id,
    text,
    function: "claim",
    verdict,
    messages: [],
    fallacies: [],
    content: null,
    ...extra,
  };
}

export function report(
  lines: LineVerdict[],
  extra: Partial<FeedbackReport> = {},
): FeedbackReport {
  const counts: Record<Verdict, number> = {
    verified: 0,
    "not-verified": 0,
    fallacy: 0,
    "type-error": 0,
    skipped: 0,
  };
  for (const l of lines) counts[l.verdict]++;
  const bad = counts["not-verified"] + counts.fallacy + counts["type-error"];
  return {
    exercise_id: "ex",
    language_ok: true,
    language_messages: [],
    lines,
    goal_status: "reached",
    goal_messages: [],
    summary: { all_verified: bad === 0, counts },
    ...extra,
  };
}

export const exercise: Exercise = {
  id: "ex",
  nat: "The product of a natural number and its successor is even.",
  form: "even(n*(n+1))",
  field: "number-theory",
  tier: "parity-basic",
  goal_check: true,
  assumptions: [],
  declarations: [],
  sample_proof: "Proof:\nLet n be a natural number.\nqed\n",
  hints: ["Distinguish the cases n even and n odd."],
};
