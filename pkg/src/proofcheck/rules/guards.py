"""Guard conditions and goal solvers referenced by the rule packs.

A guard receives the engine, the current variable binding and its
argument list; it yields zero or more (possibly extended) bindings.
String arguments name pattern variables, integer arguments are literals.
"""
from __future__ import annotations

from ..ast import (App, Atom, BinOp, IntLit, Neg, NotGround, Sym, Term, Var,
                   eval_atom, render)
from ..engine import Engine, canon_formula, canon_term, guard, solver
from .. import poly as P


def _resolve(arg, env):
    if isinstance(arg, int):
        return IntLit(arg)
    return env.get(arg)


def _lit_value(t: Term):
    t = canon_term(t)
    if isinstance(t, IntLit):
        return t.value
    if isinstance(t, Neg) and isinstance(t.arg, IntLit):
        return -t.arg.value
    return None


def known_parities(engine: Engine) -> dict:
    """Parity residues of plain variables recorded in the fact store."""
    out = {}
    for fact in engine.store.by_head.get(("atom", "even"), []):
        if isinstance(fact.formula.args[0], Var):
            out[fact.formula.args[0].name] = 0
    for fact in engine.store.by_head.get(("atom", "odd"), []):
        if isinstance(fact.formula.args[0], Var):
            out[fact.formula.args[0].name] = 1
    return out


def term_sort(engine: Engine, t: Term):
    """Best-effort sort of a term, for enumeration guards."""
    if isinstance(t, App):
        return {"seg": "segment", "line": "line", "triangle": "triangle",
                "quadrangle": "quadrangle", "midpoint": "point",
                "isect": "point"}[t.func]
    if isinstance(t, (IntLit,)):
        return "integer"
    if isinstance(t, Var):
        for sort in ("point", "line", "segment", "natural", "integer"):
            key = f"{t.name} is {sort}"
            if key in engine.store:
                return sort
    if P.is_polynomial(t):
        return "integer"
    return None


# ---------------------------------------------------------------------------
# Guards


@guard("enum_terms")
def enum_terms(engine: Engine, env: dict, args):
    """Bind the named variable to each arithmetical term in context."""
    (name,) = args
    if env.get(name) is not None:
        yield env
        return
    for t in engine.universe():
        if P.is_polynomial(t):
            yield {**env, name: t}


@guard("enum_sorted")
def enum_sorted(engine: Engine, env: dict, args):
    """Bind the named variable to each context term of the given sort."""
    name, sort = args
    if env.get(name) is not None:
        s = term_sort(engine, env[name])
        if s == sort or (sort == "integer" and s == "natural"):
            yield env
        return
    for t in engine.universe():
        s = term_sort(engine, t)
        if s == sort or (sort == "integer" and s == "natural"):
            yield {**env, name: t}


@guard("enum_small")
def enum_small(engine: Engine, env: dict, args):
    """Bind the named variable to a small positive literal exponent."""
    (name,) = args
    if env.get(name) is not None:
        yield env
        return
    for k in (2, 3, 4):
        yield {**env, name: IntLit(k)}


@guard("literal")
def literal(engine: Engine, env: dict, args):
    (name,) = args
    t = _resolve(name, env)
    if t is not None and _lit_value(t) is not None:
        yield env


@guard("positive")
def positive(engine: Engine, env: dict, args):
    (name,) = args
    t = _resolve(name, env)
    if t is not None:
        v = _lit_value(t)
        if v is not None and v > 0:
            yield env


@guard("distinct")
def distinct(engine: Engine, env: dict, args):
    """Syntactically different terms that are not known to be equal."""
    a, b = (_resolve(x, env) for x in args)
    if a is None or b is None:
        return
    ca, cb = canon_term(a), canon_term(b)
    if ca == cb:
        return
    if render(canon_formula(Atom("eq", (ca, cb)))) in engine.store:
        return
    if render(canon_formula(Atom("eq", (cb, ca)))) in engine.store:
        return
    yield env


@guard("uniform_parity")
def uniform_parity(engine: Engine, env: dict, args):
    """The named term's polynomial takes the given parity for all inputs,
    given the parities already known for context variables."""
    name, parity = args
    t = _resolve(name, env)
    if t is None:
        return
    try:
        p = P.poly_normalize(t)
    except (P.NotPolynomial, P.DegreeBoundExceeded):
        return
    if P.poly_parity(p, known_parities(engine)) == parity:
        yield env


@guard("content_divisor")
def content_divisor(engine: Engine, env: dict, args):
    """Bind (or check) a literal divisor >= 2 of every coefficient of the
    named term's polynomial."""
    name, dname = args
    t = _resolve(name, env)
    if t is None:
        return
    try:
        content = P.poly_content(P.poly_normalize(t))
    except (P.NotPolynomial, P.DegreeBoundExceeded):
        return
    if content < 2:
        return
    bound = _resolve(dname, env)
    if bound is not None:
        v = _lit_value(bound)
        if v is not None and v >= 2 and content % v == 0:
            yield env
        return
    for d in range(2, content + 1):
        if content % d == 0:
            yield {**env, dname: IntLit(d)}


# ---------------------------------------------------------------------------
# Goal solvers


def _poly_of(t: Term):
    try:
        return P.poly_normalize(t)
    except (P.NotPolynomial, P.DegreeBoundExceeded):
        return None


@solver("eq_poly")
def solve_eq_poly(engine: Engine, goal: Atom) -> bool:
    """An equation holds outright when both sides normalize identically."""
    if goal.pred != "eq":
        return False
    a, b = (_poly_of(x) for x in goal.args)
    return a is not None and b is not None and a == b


@solver("parity_eval")
def solve_parity_eval(engine: Engine, goal: Atom) -> bool:
    """even/odd goals decided by uniform polynomial parity under the
    parities known for context variables."""
    if goal.pred not in ("even", "odd"):
        return False
    p = _poly_of(goal.args[0])
    if p is None:
        return False
    want = 0 if goal.pred == "even" else 1
    return P.poly_parity(p, known_parities(engine)) == want


@solver("divides_content")
def solve_divides_content(engine: Engine, goal: Atom) -> bool:
    """c | t holds when c divides every coefficient of t's polynomial."""
    if goal.pred != "divides":
        return False
    c = _lit_value(goal.args[0])
    if c is None or c == 0:
        return False
    p = _poly_of(goal.args[1])
    if p is None:
        return False
    if not p:
        return True
    return all(coef % c == 0 for coef in p.values())


@solver("congmod_from_divides")
def solve_congmod(engine: Engine, goal: Atom) -> bool:
    """a ~(m) b reduces to m | (a-b)."""
    if goal.pred != "congmod":
        return False
    m, a, b = goal.args
    for diff in (BinOp("-", a, b), BinOp("-", b, a)):
        probe = canon_formula(Atom("divides", (m, diff)))
        if render(probe) in engine.store:
            return True
        if solve_divides_content(engine, probe):
            return True
    return False


@solver("ground_eval")
def solve_ground_eval(engine: Engine, goal: Atom) -> bool:
    """Variable-free arithmetical goals are decided by direct evaluation."""
    try:
        return eval_atom(goal)
    except Exception:
        return False
