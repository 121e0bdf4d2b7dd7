/** Single-page client: pick an exercise, write a proof, get line feedback. */

import { ApiError, Client } from "./api.js";
import {
  initialHintState,
  remainingHints,
  revealNext,
  visibleHints,
  type HintState,
} from "./hints.js";
import { deriveMarkers, summarize } from "./markers.js";
import {
  canCheck,
  initialSession,
  reduce,
  reportIsStale,
  type SessionAction,
  type SessionState,
} from "./session.js";

const client = new Client();

let session: SessionState = initialSession;
let hintState: HintState = initialHintState([]);

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el;
}

function dispatch(action: SessionAction): void {
  session = reduce(session, action);
  render();
}

function render(): void {
  const editor = $("proof-text") as HTMLTextAreaElement;
  if (editor.value !== session.text) editor.value = session.text;
  editor.disabled = session.exercise === null;

  ($("check-button") as HTMLButtonElement).disabled = !canCheck(session);
  ($("sample-button") as HTMLButtonElement).disabled =
    session.exercise === null;

  const statement = $("statement");
  statement.textContent = session.exercise
    ? session.exercise.nat
    : "Pick an exercise to begin.";

  const errorBox = $("error");
  errorBox.textContent = session.error ?? "";
  errorBox.hidden = session.error === null;

  renderReport();
  renderHints();
}

function renderReport(): void {
  const box = $("report");
  box.classList.toggle("stale", reportIsStale(session));
  box.replaceChildren();
  if (session.report === null) {
    $("summary").textContent = session.checking ? "checking…" : "";
    return;
  }
  $("summary").textContent = summarize(session.report);
  const markers = deriveMarkers(session.text, session.report);
  markers.forEach((marker, i) => {
    const line = session.report!.lines[i];
    const row = document.createElement("div");
    row.className = `line ${marker.severity}`;
    row.title = marker.tooltip;
    const gutter = document.createElement("span");
    gutter.className = "gutter";
    gutter.textContent = marker.symbol;
    const text = document.createElement("span");
    text.textContent = line.text || `(${line.function})`;
    row.append(gutter, text);
    if (marker.tooltip) {
      const msg = document.createElement("div");
      msg.className = "messages";
      msg.textContent = marker.tooltip;
      row.append(msg);
    }
    box.append(row);
  });
}

function renderHints(): void {
  const list = $("hints");
  list.replaceChildren(
    ...visibleHints(hintState).map((h) => {
      const item = document.createElement("li");
      item.textContent = h.text;
      item.className = h.kind;
      return item;
    }),
  );
  const button = $("hint-button") as HTMLButtonElement;
  const left = remainingHints(hintState);
  button.disabled = left === 0;
  button.textContent = left === 0 ? "No more hints" : `Hint (${left} left)`;
}

async function selectExercise(id: string): Promise<void> {
  if (id === "") return;
  try {
    const [exercise, hints] = await Promise.all([
      client.getExercise(id),
      client.getHints(id),
    ]);
    hintState = initialHintState(hints);
    dispatch({ type: "select-exercise", exercise });
  } catch (err) {
    dispatch({ type: "check-failed", message: describe(err) });
  }
}

async function runCheck(): Promise<void> {
  if (!canCheck(session) || session.exercise === null) return;
  dispatch({ type: "check-started" });
  try {
    const report = await client.check({
      exercise_id: session.exercise.id,
      text: session.text,
    });
    dispatch({ type: "check-finished", report });
  } catch (err) {
    dispatch({ type: "check-failed", message: describe(err) });
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  return err instanceof Error ? err.message : String(err);
}

async function init(): Promise<void> {
  const picker = $("exercise-picker") as HTMLSelectElement;
  try {
    const exercises = await client.listExercises();
    picker.replaceChildren(
      new Option("— choose an exercise —", ""),
      ...exercises.map(
        (e) => new Option(`${e.id} — ${e.nat}`, e.id),
      ),
    );
  } catch (err) {
    dispatch({ type: "check-failed", message: describe(err) });
  }

  picker.addEventListener("change", () => {
    void selectExercise(picker.value);
  });
  ($("proof-text") as HTMLTextAreaElement).addEventListener("input", (ev) => {
    dispatch({
      type: "edit-text",
      text: (ev.target as HTMLTextAreaElement).value,
    });
  });
  $("check-button").addEventListener("click", () => {
    void runCheck();
  });
  $("sample-button").addEventListener("click", () => {
    dispatch({ type: "load-sample" });
  });
  $("hint-button").addEventListener("click", () => {
    hintState = revealNext(hintState);
    render();
  });
  render();
}

void init();
