"""Goal tracking: candidate evolution, qed judgement, staged goals."""
from __future__ import annotations

from proofcheck.ast import render
from proofcheck.docmodel import Exercise
from proofcheck.formula_parser import parse_formula
from proofcheck.goals import GoalTracker, track_goals

from conftest import pipeline


def drive(tracker, lines, upto):
    """Feed lines to the tracker until (and including) line id `upto`."""
    for line in lines:
        fn = line.function
        if fn == "proof-start":
            tracker._on_proof_start(line)
        elif fn == "goal-announcement":
            tracker._on_announcement(line)
        elif fn in ("declaration", "naming", "definition"):
            tracker._on_declaration(line)
        elif fn == "assumption":
            tracker._on_assumption(line)
        elif fn == "method":
            tracker._on_method(line)
        if line.id == upto:
            return


def test_assuming_the_antecedent_adds_the_consequent():
    text = ("We show: even(n) -> even(n^2).\n\nProof:\n"
            "Suppose that n is even.\nThen n^2 is even.\nqed\n")
    lines = pipeline(text, {"n"})
    tracker = GoalTracker(lines)
    assumption = next(l for l in lines if l.function == "assumption")
    drive(tracker, lines, assumption.id)
    formulas = {render(f) for f in tracker.candidate_formulas()}
    assert formulas == {"even(n) -> even(n^2)", "even(n^2)"}


def test_direct_proof_of_implication_reaches_goal():
    text = ("We show: even(n) -> even(n^2).\n\nProof:\n"
            "Suppose that n is even.\nThen n^2 is even.\nqed\n")
    lines = pipeline(text, {"n"})
    status, _ = track_goals(lines, None, {l.id for l in lines})
    assert status == "reached"


def test_qed_under_open_extra_assumption():
    ex = Exercise(id="t", nat="", form=parse_formula("even(n^2)"),
                  field="number-theory", tier="parity-basic",
                  declarations=(("n", "natural"),))
    text = ("We show: even(n^2).\n\nProof:\nSuppose that n is even.\n"
            "Then n^2 is even.\nqed\n")
    lines = pipeline(text, {"n"})
    status, messages = track_goals(lines, ex, {l.id for l in lines})
    assert status == "reached-under-extra-assumptions"
    assert any("still open" in m for m in messages)


def test_unverified_claims_do_not_reach_the_goal():
    text = ("We show: even(n^2).\n\nProof:\nThen n^2 is even.\nqed\n")
    lines = pipeline(text, {"n"})
    claim = next(l.id for l in lines if l.function == "claim")
    status, _ = track_goals(
        lines, None, {l.id for l in lines} - {claim})
    assert status == "not-reached"


def test_both_iff_directions_reach_the_goal():
    text = ("We show: even(n) <-> odd(n+1).\n\n=>\n\n"
            "Suppose that n is even.\nThen n+1 is odd.\nqed\n\n<=\n\n"
            "Suppose that n+1 is odd.\nThen n is even.\nqed\nqed\n")
    lines = pipeline(text, {"n"})
    status, _ = track_goals(lines, None, {l.id for l in lines})
    assert status == "reached"


def test_single_iff_direction_is_not_enough():
    text = ("We show: even(n) <-> odd(n+1).\n\n=>\n\n"
            "Suppose that n is even.\nThen n+1 is odd.\nqed\nqed\n")
    lines = pipeline(text, {"n"})
    status, _ = track_goals(lines, None, {l.id for l in lines})
    assert status == "not-reached"


def test_induction_method_stages_base_and_step():
    text = ("We show: even(n^2+n).\n\nProof:\nBy induction.\n"
            "Then 0^2+0 is even.\n"
            "Suppose that n^2+n is even.\nThen (n+1)^2+(n+1) is even.\nqed\n")
    lines = pipeline(text, {"n"})
    status, _ = track_goals(lines, None, {l.id for l in lines})
    assert status == "reached"


def test_induction_without_step_fails():
    text = ("We show: even(n^2+n).\n\nProof:\nBy induction.\n"
            "Then 0^2+0 is even.\nqed\n")
    lines = pipeline(text, {"n"})
    status, _ = track_goals(lines, None, {l.id for l in lines})
    assert status == "not-reached"


def test_contradiction_closes_negated_goal():
    text = ("We show: n is not even.\n\nProof:\nSuppose that n is even.\n"
            "Contradiction.\nqed\n")
    lines = pipeline(text, {"n"})
    status, _ = track_goals(lines, None, {l.id for l in lines})
    assert status == "reached"


def test_goal_check_bypass():
    ex = Exercise(id="t", nat="", form=parse_formula("even(2)"),
                  field="number-theory", tier="parity-basic",
                  goal_check=False)
    lines = pipeline("Then 2 is even.", set())
    status, messages = track_goals(lines, ex, {l.id for l in lines})
    assert status == "bypassed" and messages == []


def test_no_goal_declared():
    lines = pipeline("Proof:\nThen 2 is even.\nqed\n", set())
    status, _ = track_goals(lines, None, {l.id for l in lines})
    assert status == "no-goal-declared"
