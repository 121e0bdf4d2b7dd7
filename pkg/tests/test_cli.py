"""Command-line interface driven through click's test runner."""
from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from proofcheck.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def golden(corpus, exercise_id="nt-product-successor-even"):
    return corpus[exercise_id]


def test_exercises_listing(runner):
    result = runner.invoke(main, ["exercises"])
    assert result.exit_code == 0
    assert "nt-product-successor-even" in result.output


def test_check_golden_text_output(runner, corpus, tmp_path):
    ex = golden(corpus)
    proof = tmp_path / "proof.txt"
    proof.write_text(ex.sample_proof)
    result = runner.invoke(main, ["check", "--exercise", ex.id,
                                  "--file", str(proof)])
    assert result.exit_code == 0
    assert "goal: reached" in result.output


def test_check_json_output(runner, corpus, tmp_path):
    ex = golden(corpus)
    proof = tmp_path / "proof.txt"
    proof.write_text(ex.sample_proof)
    result = runner.invoke(main, ["check", "--exercise", ex.id,
                                  "--file", str(proof), "--format", "json"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["summary"]["all_verified"] is True


def test_check_failure_exits_nonzero(runner, corpus, tmp_path):
    proof = tmp_path / "proof.txt"
    proof.write_text("We show: even(n*(n+1)).\n\nProof:\n"
                     "Let n be a natural number.\nThen n*(n+1) is odd.\nqed\n")
    result = runner.invoke(main, ["check", "--exercise",
                                  "nt-product-successor-even",
                                  "--file", str(proof)])
    assert result.exit_code == 1


def test_check_writes_report_directory(runner, corpus, tmp_path):
    ex = golden(corpus)
    proof = tmp_path / "proof.txt"
    proof.write_text(ex.sample_proof)
    report_dir = tmp_path / "report"
    result = runner.invoke(main, ["check", "--exercise", ex.id,
                                  "--file", str(proof),
                                  "--report-dir", str(report_dir)])
    assert result.exit_code == 0
    assert (report_dir / "report.json").exists()
    assert (report_dir / "verdicts.csv").exists()
    assert (report_dir / "verdicts.png").exists()


def test_check_unknown_exercise_fails(runner):
    result = runner.invoke(main, ["check", "--exercise", "nope"],
                           input="")
    assert result.exit_code != 0
    assert "no exercise" in result.output


def test_show_prints_exercise_json(runner):
    result = runner.invoke(main, ["show", "--exercise", "geo-perp-transfer"])
    assert result.exit_code == 0
    assert json.loads(result.output)["id"] == "geo-perp-transfer"


def test_generate_command(runner):
    result = runner.invoke(main, ["generate", "parity-direct", "--seed", "4"])
    assert result.exit_code == 0
    assert json.loads(result.output)["id"] == "gen-parity-direct-4"


def test_generate_with_bound(runner):
    result = runner.invoke(main, ["generate", "divisibility-scale",
                                  "--seed", "1", "--bound", "max_divisor=3"])
    assert result.exit_code == 0


def test_generate_bad_family(runner):
    result = runner.invoke(main, ["generate", "bogus"])
    assert result.exit_code != 0


def test_families_command(runner):
    result = runner.invoke(main, ["families"])
    assert result.exit_code == 0
    assert "parity-cases" in result.output
