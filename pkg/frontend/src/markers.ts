/** Pure derivation of editor gutter markers from a feedback report. */

import type { FeedbackReport, LineVerdict, Verdict } from "./types.js";

export type Severity = "ok" | "error" | "fallacy" | "type" | "muted";

export interface Marker {
  lineId: number;
  symbol: string;
  severity: Severity;
  tooltip: string;
  /** 0-based index into the student's text lines, or null if unaligned. */
  textLine: number | null;
}

const STYLE: Record<Verdict, { symbol: string; severity: Severity }> = {
  verified: { symbol: "✓", severity: "ok" },
  "not-verified": { symbol: "✗", severity: "error" },
  fallacy: { symbol: "‼", severity: "fallacy" },
  "type-error": { symbol: "?", severity: "type" },
  skipped: { symbol: "·", severity: "muted" },
};

export function tooltipFor(line: LineVerdict): string {
  const parts = [...line.messages];
  if (line.fallacies.length > 0) {
    parts.push(`fallacy: ${line.fallacies.join(", ")}`);
  }
  return parts.join("\n");
}

/**
 * Align report lines to the student's text lines.  Synthetic proof
 * markers have no counterpart in the text and align to null; each real
 * line is matched to the first not-yet-claimed text line containing its
 * sentence, scanning forward so duplicate sentences stay in order.
 */
export function alignToText(
  text: string,
  lines: LineVerdict[],
): (number | null)[] {
  const textLines = text.split("\n");
  let cursor = 0;
  let offset = 0;
  return lines.map((line) => {
    const needle = line.text.trim();
    if (needle === "") return null;
    for (let i = cursor; i < textLines.length; i++) {
      const from = i === cursor ? offset : 0;
      const at = textLines[i].indexOf(needle, from);
      if (at >= 0) {
        cursor = i;
        offset = at + needle.length;
        return i;
      }
    }
    return null;
  });
}

export function deriveMarkers(text: string, report: FeedbackReport): Marker[] {
  const positions = alignToText(text, report.lines);
  return report.lines.map((line, i) => {
    const style = STYLE[line.verdict];
    return {
      lineId: line.line_id,
      symbol: style.symbol,
      severity: style.severity,
      tooltip: tooltipFor(line),
      textLine: positions[i],
    };
  });
}

const GOAL_TEXT: Record<FeedbackReport["goal_status"], string> = {
  reached: "goal reached",
  "reached-under-extra-assumptions":
    "goal reached, but under assumptions that are still open",
  "not-reached": "goal not reached",
  "no-goal-declared": "no goal declared in the proof",
  bypassed: "goal checking disabled",
};

/** One-line human summary of a report. */
export function summarize(report: FeedbackReport): string {
  if (!report.language_ok) {
    return `language errors: ${report.language_messages.join("; ")}`;
  }
  const counts = report.summary.counts;
  const bad =
    counts["not-verified"] + counts.fallacy + counts["type-error"];
  const steps =
    bad === 0
      ? "all steps verified"
      : `${bad} step${bad === 1 ? "" : "s"} failed`;
  return `${steps}; ${GOAL_TEXT[report.goal_status]}`;
}
