/** Staged hint disclosure: teacher hints first, goal form last. */

import type { Hint } from "./types.js";

/** Teacher hints before the goal-form hint, each group in given order. */
export function orderHints(hints: Hint[]): Hint[] {
  const teacher = hints.filter((h) => h.kind === "teacher");
  const goalForm = hints.filter((h) => h.kind === "goal-form");
  return [...teacher, ...goalForm];
}

export interface HintState {
  hints: Hint[];
  revealed: number;
}

export function initialHintState(hints: Hint[]): HintState {
  return { hints: orderHints(hints), revealed: 0 };
}

export function revealNext(state: HintState): HintState {
  return {
    ...state,
    revealed: Math.min(state.revealed + 1, state.hints.length),
  };
}

export function visibleHints(state: HintState): Hint[] {
  return state.hints.slice(0, state.revealed);
}

export function remainingHints(state: HintState): number {
  return state.hints.length - state.revealed;
}
