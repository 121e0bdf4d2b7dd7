"""Type checking: introduction before use, sort signatures, constructors."""
from __future__ import annotations

import pytest

from proofcheck.ast import App, Sym, Var
from proofcheck.docmodel import Exercise
from proofcheck.formula_parser import parse_formula, parse_term
from proofcheck.typecheck import check_types, compute_sort

from conftest import CASES_TEXT, TRANSFER_TEXT, pipeline


def issues(text, symbols=(), field="number-theory", exercise=None):
    lines = pipeline(text, symbols, field)
    return check_types(lines, exercise, field)


def test_golden_texts_are_clean():
    assert issues(CASES_TEXT) == []
    assert issues(TRANSFER_TEXT, field="geometry") == []


def test_assumption_does_not_declare():
    # assuming a property of x does not introduce x
    out = issues("Proof:\nSuppose that x is even.\nThen x+1 is odd.\nqed\n")
    assert out
    assert out[0].line_id == 2
    assert "x" in out[0].message


def test_exercise_declarations_introduce_symbols():
    ex = Exercise(id="t", nat="", form=parse_formula("even(n)"),
                  field="number-theory", tier="parity-basic",
                  declarations=(("n", "natural"),))
    out = issues("Proof:\nSuppose that n is even.\nqed\n", {"n"},
                 exercise=ex)
    assert out == []


def test_sort_signature_violation():
    out = issues("Let g, h be lines.\nThen g | h.\n", (), "geometry")
    assert any("g" in i.message or "divides" in i.message or "|" in i.message
               for i in out)


def test_parity_predicate_rejects_points():
    out = issues("Let a, b be points.\nThen s(a,b) ~ s(b,a).\n", (),
                 "geometry")
    assert out == []
    out = issues("Let a be a point.\nSuppose that a is even.\nqed\n", (),
                 "geometry")
    assert out


def test_compute_sort_of_constructors():
    env = {"a": "point", "b": "point"}
    assert compute_sort(parse_term("s(a,b)", "geometry"), env) == "segment"
    assert compute_sort(parse_term("l(a,b)", "geometry"), env) == "line"
    assert compute_sort(parse_term("m(s(a,b))", "geometry"), env) == "point"
    assert compute_sort(parse_term("d(a,b,a)", "geometry"), env) == "triangle"
    assert compute_sort(parse_term("v(a,b,a,b)", "geometry"), env) \
        == "quadrangle"


def test_compute_sort_rejects_bad_constructor_arguments():
    from proofcheck.typecheck import _SortError
    env = {"g": "line", "h": "line"}
    with pytest.raises(_SortError):
        compute_sort(App("seg", (Var("g"), Var("h"))), env)


def test_arithmetic_stays_integer_sorted():
    env = {"n": "natural"}
    assert compute_sort(parse_term("n^2+2*n+1"), env) in ("natural", "integer")
