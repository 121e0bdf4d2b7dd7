"""Polynomial normalization checked against direct term evaluation."""
from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proofcheck.ast import BinOp, IntLit, Neg, Term, Var, eval_term
from proofcheck.formula_parser import parse_term
from proofcheck.poly import (DegreeBoundExceeded, poly_eval, poly_key,
                             poly_normalize)

VARS = ("n", "m", "k")


def random_term(rng: random.Random, depth: int = 0) -> Term:
    """A random term in the +,-,*,^ fragment with bounded nesting."""
    if depth >= 3 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return Var(rng.choice(VARS))
        return IntLit(rng.randint(-9, 9))
    op = rng.choice("++-**^u")
    if op == "u":
        return Neg(random_term(rng, depth + 1))
    if op == "^":
        return BinOp("^", random_term(rng, depth + 1),
                     IntLit(rng.randint(0, 3)))
    return BinOp(op, random_term(rng, depth + 1), random_term(rng, depth + 1))


def test_normalize_agrees_with_evaluation_on_random_pairs():
    rng = random.Random(20260824)
    checked = 0
    while checked < 10_000:
        t = random_term(rng)
        env = {v: rng.randint(-10, 10) for v in VARS}
        try:
            p = poly_normalize(t)
        except DegreeBoundExceeded:
            continue
        assert poly_eval(p, env) == eval_term(t, env)
        checked += 1


def test_even_square_normalizes_to_four_k_squared():
    assert poly_key(poly_normalize(parse_term("(2*k)^2"))) \
        == poly_key(poly_normalize(parse_term("4*k^2")))


def test_binomial_square_does_not_collapse():
    assert poly_key(poly_normalize(parse_term("(n+m)^2"))) \
        != poly_key(poly_normalize(parse_term("n^2+m^2")))
    assert poly_key(poly_normalize(parse_term("(n+m)^2"))) \
        == poly_key(poly_normalize(parse_term("n^2+2*n*m+m^2")))


def test_degree_bound_is_enforced():
    with pytest.raises(DegreeBoundExceeded):
        poly_normalize(parse_term("n^9"))


@settings(max_examples=200, deadline=None)
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_distributivity_property(a, b, c):
    left = parse_term(f"({a}+n)*({b}+n)")
    right = parse_term(f"{a * b}+{a + b}*n+n^2")
    assert poly_key(poly_normalize(left)) == poly_key(poly_normalize(right))
    assert c == poly_eval(poly_normalize(IntLit(c)), {})
