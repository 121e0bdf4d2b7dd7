"""Feedback-report rendering: plain text for terminals, and a report
directory with the JSON document, a verdict table and a summary figure."""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Dict

from .docmodel import VERDICTS, FeedbackReport, serialize_report

_VERDICT_COLORS = {
    "verified": "#2a9d4e",
    "not-verified": "#d1495b",
    "fallacy": "#b0361c",
    "type-error": "#e0a000",
    "skipped": "#9aa0a6",
}

_MARKS = {"verified": "ok", "not-verified": "FAIL", "fallacy": "FALLACY",
          "type-error": "TYPE", "skipped": "--"}


def format_text(report: FeedbackReport) -> str:
    """Human-readable rendering used by the command line."""
    out = [f"exercise: {report.exercise_id}"]
    if not report.language_ok:
        out.append("language check failed:")
        out.extend(f"  {m}" for m in report.language_messages)
        return "\n".join(out)
    for line in report.lines:
        out.append(f"  [{_MARKS[line.verdict]:>7}] {line.line_id:>3} {line.text}")
        for m in line.messages:
            out.append(f"            - {m}")
    out.append(f"goal: {report.goal_status}")
    out.extend(f"  {m}" for m in report.goal_messages)
    counts = {v: sum(1 for l in report.lines if l.verdict == v)
              for v in VERDICTS}
    shown = ", ".join(f"{v}: {n}" for v, n in counts.items() if n)
    out.append(f"summary: {shown}")
    return "\n".join(out)


def _verdict_figure(report: FeedbackReport, path: Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    counts = {v: sum(1 for l in report.lines if l.verdict == v)
              for v in VERDICTS}
    fig, ax = plt.subplots(figsize=(6, 3.2))
    names = list(counts)
    values = [counts[v] for v in names]
    ax.bar(names, values, color=[_VERDICT_COLORS[v] for v in names])
    ax.set_ylabel("lines")
    ax.set_title(f"{report.exercise_id}: goal {report.goal_status}")
    ax.set_ylim(0, max(values + [1]) + 0.5)
    for i, v in enumerate(values):
        ax.text(i, v + 0.05, str(v), ha="center", va="bottom", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(report: FeedbackReport, directory: Path) -> Dict[str, Path]:
    """Write report.json, verdicts.csv and verdicts.png into a directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "json": directory / "report.json",
        "csv": directory / "verdicts.csv",
        "figure": directory / "verdicts.png",
    }
    paths["json"].write_text(serialize_report(report) + "\n")
    with paths["csv"].open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["line", "function", "verdict", "fallacies", "text"])
        for line in report.lines:
            w.writerow([line.line_id, line.function, line.verdict,
                        ";".join(line.fallacies), line.text])
    _verdict_figure(report, paths["figure"])
    return paths
