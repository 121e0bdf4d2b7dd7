/** Pure state machine for one editing session against the checker. */

import type { Exercise, FeedbackReport } from "./types.js";

export interface SessionState {
  exercise: Exercise | null;
  text: string;
  report: FeedbackReport | null;
  /** True when the text changed after the last report came back. */
  dirty: boolean;
  checking: boolean;
  error: string | null;
}

export type SessionAction =
  | { type: "select-exercise"; exercise: Exercise }
  | { type: "edit-text"; text: string }
  | { type: "load-sample" }
  | { type: "check-started" }
  | { type: "check-finished"; report: FeedbackReport }
  | { type: "check-failed"; message: string };

export const initialSession: SessionState = {
  exercise: null,
  text: "",
  report: null,
  dirty: false,
  checking: false,
  error: null,
};

export function reduce(
  state: SessionState,
  action: SessionAction,
): SessionState {
  switch (action.type) {
    case "select-exercise":
      return {
        ...initialSession,
        exercise: action.exercise,
      };
    case "edit-text":
      return { ...state, text: action.text, dirty: true, error: null };
    case "load-sample":
      if (state.exercise === null) return state;
      return {
        ...state,
        text: state.exercise.sample_proof,
        dirty: true,
        error: null,
      };
    case "check-started":
      return { ...state, checking: true, error: null };
    case "check-finished":
      return {
        ...state,
        checking: false,
        report: action.report,
        dirty: false,
      };
    case "check-failed":
      return { ...state, checking: false, error: action.message };
  }
}

/** The report shown should be dimmed once the text has moved on. */
export function reportIsStale(state: SessionState): boolean {
  return state.report !== null && state.dirty;
}

export function canCheck(state: SessionState): boolean {
  return (
    state.exercise !== null && state.text.trim() !== "" && !state.checking
  );
}
