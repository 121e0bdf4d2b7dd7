"""Formula parser: round-tripping, precedence, chains, and error cases."""
from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proofcheck.ast import render, render_term
from proofcheck.formula_parser import (Chain, ManipulationChain, SyntaxErr,
                                       parse_chain, parse_formula,
                                       parse_manipulation_chain, parse_term)

ATOMS = ("even(n)", "odd(m+1)", "2|n", "n <= m", "n = 2*k", "square(n)",
         "n ~(3) m", "k > 0")


def random_formula(rng: random.Random, depth: int = 0) -> str:
    if depth >= 3 or rng.random() < 0.4:
        return rng.choice(ATOMS)
    kind = rng.choice(("and", "or", "not", "implies", "iff"))
    a = random_formula(rng, depth + 1)
    b = random_formula(rng, depth + 1)
    if kind == "not":
        return f"!({a})"
    op = {"and": "&", "or": "\\/", "implies": "->", "iff": "<->"}[kind]
    return f"({a}) {op} ({b})"


def test_round_trip_on_random_formulas():
    rng = random.Random(1)
    for _ in range(500):
        f = parse_formula(random_formula(rng))
        text = render(f)
        again = parse_formula(text)
        assert again == f
        assert render(again) == text


@settings(max_examples=200, deadline=None)
@given(st.integers(-99, 99), st.integers(0, 5), st.integers(1, 9))
def test_term_round_trip(a, e, b):
    t = parse_term(f"{a}*n^{e}+{b}")
    assert parse_term(render_term(t)) == t


def test_precedence():
    f = parse_formula("even(n) & odd(m) -> even(n+m)")
    assert render(f) == "even(n) & odd(m) -> even(n+m)"
    assert parse_term("2*n+1") == parse_term("(2*n)+1")
    assert parse_term("2*n^2") == parse_term("2*(n^2)")
    assert parse_term("2^3^2") != parse_term("(2^3)^2")


def test_unicode_operators_are_accepted():
    assert parse_formula("g ∥ l ∧ l ⊥ h") == parse_formula("g || l & l _|_ h")
    assert parse_formula("even(n) → odd(n+1)") \
        == parse_formula("even(n) -> odd(n+1)")


def test_geometry_constructors():
    f = parse_formula("s(x,a) ~ s(x,b)")
    assert render(f) == "s(x,a)~s(x,b)"
    f = parse_formula("l(m,x) _|_ l(a,b)")
    assert render(f) == "l(m,x)_|_l(a,b)"
    f = parse_formula("m = m(s(a,b))")
    assert render(f) == "m=m(s(a,b))"


def test_equation_chain_expands_to_adjacent_relations():
    c = parse_chain("n^2 = (2*k)^2 = 4*k^2")
    assert isinstance(c, Chain)
    assert len(c.terms) == 3
    assert c.relations == ("eq", "eq")
    c = parse_chain("a = b >= 0")
    assert c.relations == ("eq", "ge")


def test_manipulation_chain():
    m = parse_manipulation_chain("n+1 = 3 <=> n = 2")
    assert isinstance(m, ManipulationChain)
    assert len(m.elements) == 2
    assert m.links[0][0] == "iff"


@pytest.mark.parametrize("bad", ["even(", "n + ", "-> odd(n)", "n = ",
                                 "even(n) &", "((n)"])
def test_syntax_errors(bad):
    with pytest.raises(SyntaxErr):
        parse_formula(bad)
