import { describe, expect, it } from "vitest";

import {
  canCheck,
  initialSession,
  reduce,
  reportIsStale,
  type SessionState,
} from "../src/session.js";
import { exercise, line, report } from "./fixtures.js";

function selected(): SessionState {
  return reduce(initialSession, { type: "select-exercise", exercise });
}

describe("session reducer", () => {
  it("selecting an exercise resets text and report", () => {
    let state = selected();
    state = reduce(state, { type: "edit-text", text: "Proof:" });
    state = reduce(state, {
      type: "check-finished",
      report: report([line(1, "a", "verified")]),
    });
    state = reduce(state, { type: "select-exercise", exercise });
    expect(state.text).toBe("");
    expect(state.report).toBeNull();
    expect(state.exercise).toBe(exercise);
  });

  it("loads the sample proof into the editor", () => {
    const state = reduce(selected(), { type: "load-sample" });
    expect(state.text).toBe(exercise.sample_proof);
    expect(state.dirty).toBe(true);
  });

  it("ignores load-sample without an exercise", () => {
    expect(reduce(initialSession, { type: "load-sample" })).toBe(
      initialSession,
    );
  });

  it("a finished check clears the dirty flag; editing sets it again", () => {
    let state = reduce(selected(), { type: "edit-text", text: "Proof:" });
    state = reduce(state, { type: "check-started" });
    expect(state.checking).toBe(true);
    state = reduce(state, {
      type: "check-finished",
      report: report([line(1, "Proof:", "skipped")]),
    });
    expect(state.checking).toBe(false);
    expect(reportIsStale(state)).toBe(false);
    state = reduce(state, { type: "edit-text", text: "Proof:\nqed" });
    expect(reportIsStale(state)).toBe(true);
  });

  it("a failed check records the error and stops the spinner", () => {
    let state = reduce(selected(), { type: "check-started" });
    state = reduce(state, {
      type: "check-failed",
      message: "HTTP 400: bad request",
    });
    expect(state.checking).toBe(false);
    expect(state.error).toBe("HTTP 400: bad request");
  });
});

describe("canCheck", () => {
  it("requires an exercise and non-blank text, and no check in flight", () => {
    expect(canCheck(initialSession)).toBe(false);
    let state = selected();
    expect(canCheck(state)).toBe(false);
    state = reduce(state, { type: "edit-text", text: "  \n" });
    expect(canCheck(state)).toBe(false);
    state = reduce(state, { type: "edit-text", text: "Proof:\nqed\n" });
    expect(canCheck(state)).toBe(true);
    state = reduce(state, { type: "check-started" });
    expect(canCheck(state)).toBe(false);
  });
});
