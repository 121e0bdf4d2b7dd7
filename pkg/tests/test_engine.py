"""Forward-chaining engine: matching, canonicalization, saturation."""
from __future__ import annotations

from proofcheck.ast import Atom, IntLit, TVar, Var, render
from proofcheck.engine import (Engine, canon_formula, canon_term,
                               match_formula, match_term, match_term_all,
                               prove)
from proofcheck.fields import get_field
from proofcheck.formula_parser import parse_formula, parse_term
from proofcheck.tasks import ProverTask

NT_RULES = get_field("number-theory").rules_for("nt-full")
GEO_RULES = get_field("geometry").rules_for("geo-full")


def task(goal, assumptions=(), declarations=(), claims=(), field=None):
    return ProverTask(
        assumptions=tuple(parse_formula(a, field) for a in assumptions),
        claims=tuple(parse_formula(c, field) for c in claims),
        former=(),
        declarations=tuple(parse_formula(d, field) for d in declarations),
        goal=parse_formula(goal, field))


# --- canonicalization ----------------------------------------------------------


def test_polynomial_terms_canonicalize():
    assert render(canon_formula(parse_formula("n^2 = (2*k)^2"))) \
        == render(canon_formula(parse_formula("n*n = 4*k*k")))


def test_symmetric_predicates_canonicalize():
    assert canon_formula(parse_formula("n = m")) \
        == canon_formula(parse_formula("m = n"))


def test_unordered_constructor_arguments_are_sorted():
    a = canon_term(parse_term("s(b,a)", "geometry"))
    b = canon_term(parse_term("s(a,b)", "geometry"))
    assert a == b


# --- matching ------------------------------------------------------------------


def test_match_term_binds_pattern_variables():
    env = match_term(TVar("X"), parse_term("n+1"), {})
    assert env == {"X": parse_term("n+1")}


def test_match_term_consistency_check():
    pat = Atom("eq", (TVar("X"), TVar("X")))
    assert next(match_formula(pat, parse_formula("n = n"), {}, {}), None) \
        is not None
    assert next(match_formula(pat, parse_formula("n = m"), {}, {}), None) \
        is None


def test_unordered_constructors_match_both_argument_orders():
    from proofcheck.ast import render_term
    stored = canon_term(parse_term("s(a,b)", "geometry"))
    pattern = type(stored)(stored.func, (TVar("P"), TVar("Q")))
    envs = list(match_term_all(pattern, stored, {}))
    bindings = {(render_term(e["P"]), render_term(e["Q"])) for e in envs}
    assert bindings == {("a", "b"), ("b", "a")}


# --- proving -------------------------------------------------------------------


def test_parity_case_rule():
    t = task("even(n*(n+1))",
             assumptions=["even(n) -> even(n*(n+1))",
                          "odd(n) -> even(n*(n+1))"],
             declarations=["n is natural"])
    assert prove(t, NT_RULES).verified


def test_divisibility_from_equation():
    t = task("4 | n^2", assumptions=["n = 2*k"],
             declarations=["n is natural", "k is natural"])
    assert prove(t, NT_RULES).verified


def test_unprovable_goal_stays_unproved():
    t = task("odd(n)", assumptions=["even(n)"],
             declarations=["n is natural"])
    assert not prove(t, NT_RULES).verified


def test_geometry_transfer():
    t = task("g _|_ h", assumptions=["g || l", "l _|_ h"],
             declarations=["g is line", "h is line", "l is line"],
             field="geometry")
    assert prove(t, GEO_RULES).verified


def test_perpendicular_bisector_needs_distinct_endpoints():
    # degenerate segment s(a,a): the bisector rule must not fire
    t = task("l(x,a) _|_ l(a,a)",
             assumptions=["s(x,a) ~ s(x,a)"],
             declarations=["a is point", "x is point"],
             field="geometry")
    assert not prove(t, GEO_RULES).verified


def test_saturation_is_bounded():
    t = task("odd(n)", assumptions=["even(n+2)"],
             declarations=["n is natural"])
    v = prove(t, NT_RULES)
    assert not v.verified
    assert v.stats["facts"] < 100_000


def test_proof_trace_records_used_rules():
    t = task("even(n+1)", assumptions=["odd(n)"],
             declarations=["n is natural"])
    v = prove(t, NT_RULES)
    assert v.verified
    assert any(rid.startswith("nt.") for rid in v.trace.rule_ids())
