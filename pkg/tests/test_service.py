"""Checking service: options, tier overrides, hints, report serialization."""
from __future__ import annotations

import pytest

from proofcheck.docmodel import (Exercise, deserialize_report,
                                 serialize_report)
from proofcheck.fields import get_field
from proofcheck.formula_parser import parse_formula
from proofcheck.service import CheckOptions, check_text, hints, load_corpus


def test_packaged_corpus_loads(corpus):
    assert len(corpus) >= 5
    for ex in corpus.values():
        assert ex.id


def test_corpus_can_load_from_a_directory(tmp_path, corpus):
    from proofcheck.docmodel import serialize_exercise
    ex = corpus["geo-perp-transfer"]
    (tmp_path / "one.json").write_text(serialize_exercise(ex))
    loaded = load_corpus(tmp_path)
    assert set(loaded) == {"geo-perp-transfer"}


def test_goal_check_override(corpus):
    ex = corpus["nt-product-successor-even"]
    report = check_text(ex, ex.sample_proof,
                        CheckOptions(goal_check=False))
    assert report.goal_status == "bypassed"


def test_tier_monotonicity_on_golden_corpus(corpus):
    for ex in corpus.values():
        chain = get_field(ex.field).tier_chain
        for tier in chain[chain.index(ex.tier):]:
            report = check_text(ex, ex.sample_proof,
                                CheckOptions(tier=tier))
            assert report.all_verified, (ex.id, tier)
            assert report.goal_status in ("reached", "bypassed"), (ex.id, tier)


def test_insufficient_tier_blocks_rules(corpus):
    ex = corpus["nt-four-divides-even-square"]  # needs divisibility rules
    report = check_text(ex, ex.sample_proof,
                        CheckOptions(tier="parity-basic"))
    assert not report.all_verified


def test_timeout_budget_is_respected(corpus):
    ex = corpus["geo-perp-bisector-iff"]
    report = check_text(ex, ex.sample_proof, CheckOptions(timeout=0.0))
    assert not report.all_verified
    assert any("budget" in m for l in report.lines for m in l.messages)


def test_hints_order_teacher_then_goal_form(corpus):
    ex = corpus["nt-product-successor-even"]
    out = hints(ex)
    kinds = [h.kind for h in out]
    assert kinds == ["teacher"] * len(ex.hints) + ["goal-form"]


def test_goal_form_hint_matches_connective():
    ex = Exercise(id="t", nat="", form=parse_formula("even(n) -> even(n^2)"),
                  field="number-theory", tier="parity-basic",
                  declarations=(("n", "natural"),))
    assert "assume" in hints(ex)[-1].text.lower()
    ex2 = Exercise(id="t", nat="", form=parse_formula("even(n) <-> odd(n+1)"),
                   field="number-theory", tier="parity-basic",
                   declarations=(("n", "natural"),))
    assert "both directions" in hints(ex2)[-1].text


def test_report_round_trips_through_json(corpus):
    ex = corpus["nt-product-successor-even"]
    report = check_text(ex, ex.sample_proof)
    again = deserialize_report(serialize_report(report))
    assert again.exercise_id == report.exercise_id
    assert [l.verdict for l in again.lines] \
        == [l.verdict for l in report.lines]
    assert again.goal_status == report.goal_status
    assert again.all_verified == report.all_verified
