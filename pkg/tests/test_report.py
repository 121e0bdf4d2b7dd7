"""Report rendering: terminal text and the report directory artifacts."""
from __future__ import annotations

import csv
import json

from proofcheck.report import format_text, write_report
from proofcheck.service import check_text


def test_format_text_lists_every_line(corpus):
    ex = corpus["nt-product-successor-even"]
    report = check_text(ex, ex.sample_proof)
    out = format_text(report)
    assert ex.id in out
    for line in report.lines:
        assert line.text in out
    assert "goal: reached" in out
    assert "summary:" in out


def test_format_text_shows_language_failures(corpus):
    ex = corpus["nt-product-successor-even"]
    report = check_text(ex, "Gibberishword here.\n")
    out = format_text(report)
    assert "language check failed" in out


def test_write_report_creates_all_artifacts(tmp_path, corpus):
    ex = corpus["nt-product-successor-even"]
    report = check_text(ex, ex.sample_proof)
    paths = write_report(report, tmp_path / "out")
    assert set(paths) == {"json", "csv", "figure"}

    data = json.loads(paths["json"].read_text())
    assert data["exercise_id"] == ex.id
    assert data["summary"]["all_verified"] is True

    with paths["csv"].open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["line", "function", "verdict", "fallacies", "text"]
    assert len(rows) == len(report.lines) + 1

    png = paths["figure"].read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"
