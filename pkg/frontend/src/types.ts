/** Wire types for the proof checking HTTP service. */

export interface ExerciseSummary {
  id: string;
  /** Natural-language statement. */
  nat: string;
  field: string;
  tier: string;
  goal_check: boolean;
}

export interface Exercise extends ExerciseSummary {
  /** Rendered formal goal, or null for free-form exercises. */
  form: string | null;
  assumptions: string[];
  /** Pairs of [name, sort]. */
  declarations: [string, string][];
  sample_proof: string;
  hints: string[];
}

export type Verdict =
  | "verified"
  | "not-verified"
  | "fallacy"
  | "type-error"
  | "skipped";

export interface LineVerdict {
  line_id: number;
  text: string;
  function: string;
  verdict: Verdict;
  messages: string[];
  fallacies: string[];
  content: string | null;
}

export type GoalStatus =
  | "reached"
  | "reached-under-extra-assumptions"
  | "not-reached"
  | "no-goal-declared"
  | "bypassed";

export interface FeedbackReport {
  exercise_id: string;
  language_ok: boolean;
  language_messages: string[];
  lines: LineVerdict[];
  goal_status: GoalStatus;
  goal_messages: string[];
  summary: {
    all_verified: boolean;
    counts: Record<Verdict, number>;
  };
}

export interface Hint {
  kind: "teacher" | "goal-form";
  text: string;
}

export interface CheckRequest {
  exercise_id: string;
  text: string;
  goal_check?: boolean | null;
  want_fallacies?: boolean;
  tier?: string | null;
}

export interface GenerateRequest {
  family: string;
  seed?: number;
  bounds?: Record<string, number>;
}
