"""Annotation: line classification, referent extraction, formalization."""
from __future__ import annotations

import pytest

from proofcheck.annotate import AnnotationError, annotate_text
from proofcheck.ast import render
from proofcheck.surface import preprocess

from conftest import CASES_TEXT, TRANSFER_TEXT, pipeline


def by_function(lines):
    return [l.function for l in lines]


def test_cases_text_line_functions(cases_lines):
    assert by_function(cases_lines) == [
        "proof-start", "declaration", "assumption", "claim",
        "assumption", "claim", "claim", "claim", "proof-end"]


def test_transfer_text_with_synthetic_markers(transfer_lines):
    assert by_function(transfer_lines) == [
        "proof-start", "declaration", "assumption", "claim", "proof-end"]
    assert transfer_lines[0].synthetic and transfer_lines[-1].synthetic
    assert not transfer_lines[2].synthetic


def test_conjunction_is_formalized_from_mixed_prose(transfer_lines):
    assumption = transfer_lines[2]
    assert render(assumption.content) == "g||l & l_|_h"


def test_refs_are_ordered_by_first_occurrence(transfer_lines):
    assert transfer_lines[2].refs == ("g", "l", "h")
    assert transfer_lines[3].refs == ("g", "h")


def test_declaration_names_and_content(transfer_lines):
    decl = transfer_lines[1]
    assert decl.names == ("g", "h", "l")
    assert render(decl.content) == "g is line & h is line & l is line"


def test_method_announcement():
    lines = pipeline("By case distinction.", {"n"})
    method = lines[1]
    assert method.function == "method"
    assert method.names == ("case-distinction",)


def test_induction_method_announcement():
    lines = pipeline("By induction.", set(), "induction")
    assert lines[1].function == "method"
    assert lines[1].names == ("induction",)


def test_naming_with_property():
    lines = pipeline("Let k be a natural number such that n = 2*k.", {"n"})
    naming = lines[1]
    assert naming.function == "naming"
    assert naming.names == ("k",)
    assert render(naming.content) == "k is natural & n=2*k"


def test_existential_claim_keeps_witness_name():
    lines = pipeline("There is a natural number k such that n = 2*k.", {"n"})
    claim = lines[1]
    assert claim.function == "claim"
    assert claim.names == ("k",)
    assert render(claim.content) == "exists k:natural. n=2*k"


def test_justified_claim_becomes_implication():
    lines = pipeline("Since v(a,b,c,d) is a rhombus, s(a,b) ~ s(b,c).",
                     {"a", "b", "c", "d"}, "geometry")
    claim = lines[1]
    assert claim.function == "justified-claim"
    assert render(claim.content) == "rhombus(v(a,b,c,d)) -> s(a,b)~s(b,c)"


def test_citation_claim_records_rule_name():
    lines = pipeline(
        "By the perpendicular bisector rule, it follows that s(x,a) ~ s(x,b).",
        {"a", "b", "x"}, "geometry")
    claim = lines[1]
    assert claim.function == "citation-claim"
    assert claim.names == ("the perpendicular bisector rule",)
    assert render(claim.content) == "s(x,a)~s(x,b)"


def test_goal_announcement():
    lines = pipeline("We show: even(n^2).", {"n"})
    assert lines[0].function == "goal-announcement"
    assert render(lines[0].content) == "even(n^2)"


def test_equation_chain_expands_to_conjunction():
    lines = pipeline("n^2 = (2*k)^2 = 4*k^2.", {"n", "k"})
    claim = lines[1]
    assert claim.function == "claim"
    assert render(claim.content) == "n^2=(2*k)^2 & (2*k)^2=4*k^2"


def test_article_a_coexists_with_point_named_a():
    # the word "a" in "is a rhombus" must not be read as the point a
    lines = pipeline("Since v(a,b,c,d) is a rhombus, s(a,b) ~ s(b,c).",
                     {"a", "b", "c", "d"}, "geometry")
    assert lines[1].function == "justified-claim"


def test_unprocessable_sentence_raises():
    sentences = preprocess("Perhaps wonder about n.", {"n"})
    with pytest.raises(AnnotationError):
        annotate_text(sentences, "number-theory")


def test_line_ids_are_consecutive(cases_lines):
    assert [l.id for l in cases_lines] == list(range(1, 10))
