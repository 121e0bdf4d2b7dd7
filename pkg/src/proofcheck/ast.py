"""Term and formula representations shared by every pipeline stage."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Optional, Union

# ---------------------------------------------------------------------------
# Terms

GEO_CONSTRUCTORS = {
    "seg": 2,
    "line": 2,
    "triangle": 3,
    "quadrangle": 4,
    "midpoint": 1,
    "isect": 2,
}

ARITH_OPS = {"+", "-", "*", "^"}


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self):
        return f"Var({self.name})"


@dataclass(frozen=True)
class IntLit:
    value: int

    def __repr__(self):
        return f"IntLit({self.value})"


@dataclass(frozen=True)
class Sym:
    """Enumerated constant such as a sort or shape name."""

    name: str

    def __repr__(self):
        return f"Sym({self.name})"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * ^
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class App:
    func: str  # geometry constructor name
    args: tuple


@dataclass(frozen=True)
class TVar:
    """Pattern variable standing for a term inside an inference rule."""

    name: str


Term = Union[Var, IntLit, Sym, BinOp, Neg, App, TVar]

# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple

    def __repr__(self):
        return f"Atom({self.pred}, {list(self.args)})"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Implies:
    antecedent: "Formula"
    consequent: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Quant:
    kind: str  # 'exists' | 'forall'
    var: str
    sort: str
    body: "Formula"


@dataclass(frozen=True)
class Falsum:
    pass


@dataclass(frozen=True)
class FVar:
    """Pattern variable standing for a whole formula inside a rule."""

    name: str


Formula = Union[Atom, And, Or, Not, Implies, Iff, Quant, Falsum, FVar]

FALSUM = Falsum()

# Predicates whose two arguments may be swapped without change of meaning.
SYMMETRIC_PREDS = {"eq", "parallel", "perpendicular", "seg_congruent", "not_eq"}

# Geometry constructors whose argument order is irrelevant.
UNORDERED_CONSTRUCTORS = {"seg", "line"}


def conj(parts) -> Formula:
    parts = tuple(parts)
    if not parts:
        raise ValueError("empty conjunction")
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def and_parts(f: Formula):
    if isinstance(f, And):
        out = []
        for p in f.parts:
            out.extend(and_parts(p))
        return out
    return [f]


# ---------------------------------------------------------------------------
# Traversals


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, BinOp):
        yield from subterms(t.left)
        yield from subterms(t.right)
    elif isinstance(t, Neg):
        yield from subterms(t.arg)
    elif isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def formula_terms(f: Formula) -> Iterator[Term]:
    if isinstance(f, Atom):
        yield from f.args
    elif isinstance(f, And) or isinstance(f, Or):
        for p in f.parts:
            yield from formula_terms(p)
    elif isinstance(f, Not):
        yield from formula_terms(f.body)
    elif isinstance(f, Implies):
        yield from formula_terms(f.antecedent)
        yield from formula_terms(f.consequent)
    elif isinstance(f, Iff):
        yield from formula_terms(f.left)
        yield from formula_terms(f.right)
    elif isinstance(f, Quant):
        yield from formula_terms(f.body)


def term_vars(t: Term):
    out = []
    for s in subterms(t):
        if isinstance(s, Var) and s.name not in out:
            out.append(s.name)
    return out


def free_symbols(f: Optional[Formula]):
    """Free variable names in first-occurrence order."""
    if f is None:
        return []
    out: list[str] = []

    def walk(g: Formula, bound: frozenset):
        if isinstance(g, Atom):
            for t in g.args:
                for s in subterms(t):
                    if isinstance(s, Var) and s.name not in bound and s.name not in out:
                        out.append(s.name)
        elif isinstance(g, (And, Or)):
            for p in g.parts:
                walk(p, bound)
        elif isinstance(g, Not):
            walk(g.body, bound)
        elif isinstance(g, Implies):
            walk(g.antecedent, bound)
            walk(g.consequent, bound)
        elif isinstance(g, Iff):
            walk(g.left, bound)
            walk(g.right, bound)
        elif isinstance(g, Quant):
            walk(g.body, bound | {g.var})

    walk(f, frozenset())
    return out


# ---------------------------------------------------------------------------
# Substitution (both for object variables and pattern variables)


def subst_term(t: Term, env: Mapping[str, Term], pattern: bool = False) -> Term:
    if isinstance(t, Var) and not pattern and t.name in env:
        return env[t.name]
    if isinstance(t, TVar) and pattern:
        if t.name not in env:
            raise KeyError(f"unbound pattern variable ?{t.name}")
        return env[t.name]
    if isinstance(t, BinOp):
        return BinOp(t.op, subst_term(t.left, env, pattern), subst_term(t.right, env, pattern))
    if isinstance(t, Neg):
        return Neg(subst_term(t.arg, env, pattern))
    if isinstance(t, App):
        return App(t.func, tuple(subst_term(a, env, pattern) for a in t.args))
    return t


def subst(f: Formula, env: Mapping[str, Term], fenv: Optional[Mapping[str, Formula]] = None,
          pattern: bool = False) -> Formula:
    fenv = fenv or {}
    if isinstance(f, FVar):
        if f.name not in fenv:
            raise KeyError(f"unbound formula pattern variable ?{f.name}")
        return fenv[f.name]
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(subst_term(a, env, pattern) for a in f.args))
    if isinstance(f, And):
        return And(tuple(subst(p, env, fenv, pattern) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(subst(p, env, fenv, pattern) for p in f.parts))
    if isinstance(f, Not):
        return Not(subst(f.body, env, fenv, pattern))
    if isinstance(f, Implies):
        return Implies(subst(f.antecedent, env, fenv, pattern),
                       subst(f.consequent, env, fenv, pattern))
    if isinstance(f, Iff):
        return Iff(subst(f.left, env, fenv, pattern), subst(f.right, env, fenv, pattern))
    if isinstance(f, Quant):
        inner = {k: v for k, v in env.items() if k != f.var}
        return Quant(f.kind, f.var, f.sort, subst(f.body, inner, fenv, pattern))
    return f


def replace_subterm(t: Term, old: Term, new: Term) -> Term:
    if t == old:
        return new
    if isinstance(t, BinOp):
        return BinOp(t.op, replace_subterm(t.left, old, new), replace_subterm(t.right, old, new))
    if isinstance(t, Neg):
        return Neg(replace_subterm(t.arg, old, new))
    if isinstance(t, App):
        return App(t.func, tuple(replace_subterm(a, old, new) for a in t.args))
    return t


def replace_in_formula(f: Formula, old: Term, new: Term) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(replace_subterm(a, old, new) for a in f.args))
    if isinstance(f, And):
        return And(tuple(replace_in_formula(p, old, new) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(replace_in_formula(p, old, new) for p in f.parts))
    if isinstance(f, Not):
        return Not(replace_in_formula(f.body, old, new))
    if isinstance(f, Implies):
        return Implies(replace_in_formula(f.antecedent, old, new),
                       replace_in_formula(f.consequent, old, new))
    if isinstance(f, Iff):
        return Iff(replace_in_formula(f.left, old, new), replace_in_formula(f.right, old, new))
    if isinstance(f, Quant):
        return Quant(f.kind, f.var, f.sort, replace_in_formula(f.body, old, new))
    return f


# ---------------------------------------------------------------------------
# Rendering

_PREC = {"+": 1, "-": 1, "*": 2, "^": 4}


@lru_cache(maxsize=200_000)
def render_term(t: Term, parent_prec: int = 0) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, TVar):
        return "?" + t.name
    if isinstance(t, IntLit):
        return str(t.value)
    if isinstance(t, Sym):
        return t.name
    if isinstance(t, Neg):
        s = "-" + render_term(t.arg, 3)
        return f"({s})" if parent_prec > 3 else s
    if isinstance(t, BinOp):
        prec = _PREC[t.op]
        left = render_term(t.left, prec)
        # left association: right operand needs a bump except for ^ (rendered bracketed)
        right = render_term(t.right, prec + 1)
        s = f"{left}{t.op}{right}"
        return f"({s})" if prec < parent_prec else s
    if isinstance(t, App):
        short = {"seg": "s", "line": "l", "triangle": "d", "quadrangle": "v",
                 "midpoint": "m", "isect": "isect"}[t.func]
        return f"{short}({','.join(render_term(a) for a in t.args)})"
    raise TypeError(f"cannot render {t!r}")


_ATOM_INFIX = {"eq": "=", "lt": "<", "le": "<=", "gt": ">", "ge": ">=",
               "divides": "|", "parallel": "||", "perpendicular": "_|_",
               "seg_congruent": "~", "on": " in ", "defeq": ":=", "not_eq": "!="}


@lru_cache(maxsize=200_000)
def render(f: Formula, parent_prec: int = 0) -> str:
    if isinstance(f, Falsum):
        return "falsum"
    if isinstance(f, FVar):
        return "?" + f.name
    if isinstance(f, Atom):
        if f.pred == "congmod":
            m, a, b = f.args
            return f"{render_term(a)}~({render_term(m)}){render_term(b)}"
        if f.pred == "is_sort" and len(f.args) == 2:
            return f"{render_term(f.args[0])} is {render_term(f.args[1])}"
        if f.pred in _ATOM_INFIX and len(f.args) == 2:
            op = _ATOM_INFIX[f.pred]
            return f"{render_term(f.args[0])}{op}{render_term(f.args[1])}"
        return f"{f.pred}({','.join(render_term(a) for a in f.args)})"
    if isinstance(f, Not):
        s = "!" + render(f.body, 5)
        return f"({s})" if parent_prec > 5 else s
    if isinstance(f, And):
        s = " & ".join(render(p, 4) for p in f.parts)
        return f"({s})" if parent_prec >= 4 else s
    if isinstance(f, Or):
        s = " \\/ ".join(render(p, 3) for p in f.parts)
        return f"({s})" if parent_prec >= 3 else s
    if isinstance(f, Implies):
        s = f"{render(f.antecedent, 3)} -> {render(f.consequent, 2)}"
        return f"({s})" if parent_prec >= 3 else s
    if isinstance(f, Iff):
        s = f"{render(f.left, 2)} <-> {render(f.right, 2)}"
        return f"({s})" if parent_prec >= 2 else s
    if isinstance(f, Quant):
        kw = "exists" if f.kind == "exists" else "forall"
        s = f"{kw} {f.var}:{f.sort}. {render(f.body, 1)}"
        return f"({s})" if parent_prec > 1 else s
    raise TypeError(f"cannot render {f!r}")


# ---------------------------------------------------------------------------
# Exact integer semantics for ground number-theory material


class NotGround(Exception):
    pass


def eval_term(t: Term, env: Optional[Mapping[str, int]] = None) -> int:
    env = env or {}
    if isinstance(t, IntLit):
        return t.value
    if isinstance(t, Var):
        if t.name in env:
            return env[t.name]
        raise NotGround(t.name)
    if isinstance(t, Neg):
        return -eval_term(t.arg, env)
    if isinstance(t, BinOp):
        a, b = eval_term(t.left, env), eval_term(t.right, env)
        if t.op == "+":
            return a + b
        if t.op == "-":
            return a - b
        if t.op == "*":
            return a * b
        if t.op == "^":
            if b < 0:
                raise NotGround("negative exponent")
            return a ** b
    raise NotGround(repr(t))


def eval_atom(f: Atom, env: Optional[Mapping[str, int]] = None) -> bool:
    """Exact truth value of a number-theory atom under an integer assignment."""
    env = env or {}
    p = f.pred
    if p == "even":
        return eval_term(f.args[0], env) % 2 == 0
    if p == "odd":
        return eval_term(f.args[0], env) % 2 == 1
    if p == "square":
        v = eval_term(f.args[0], env)
        return v >= 0 and round(v ** 0.5) ** 2 == v
    if p == "cube":
        v = eval_term(f.args[0], env)
        r = round(abs(v) ** (1 / 3)) if v else 0
        return any((r + d) ** 3 == v or -((r + d) ** 3) == v for d in (-1, 0, 1))
    if p == "divides":
        a, b = (eval_term(x, env) for x in f.args)
        return b % a == 0 if a != 0 else b == 0
    if p == "congmod":
        m, a, b = (eval_term(x, env) for x in f.args)
        if m == 0:
            return a == b
        return (a - b) % m == 0
    if p in ("eq", "lt", "le", "gt", "ge", "not_eq"):
        a, b = (eval_term(x, env) for x in f.args)
        return {"eq": a == b, "not_eq": a != b, "lt": a < b, "le": a <= b,
                "gt": a > b, "ge": a >= b}[p]
    if p == "is_sort":
        v = eval_term(f.args[0], env)
        sort = f.args[1].name if isinstance(f.args[1], Sym) else str(f.args[1])
        if sort == "natural":
            return v >= 0
        return True  # integer
    raise NotGround(f"cannot evaluate atom {p}")


def eval_formula(f: Formula, env: Optional[Mapping[str, int]] = None) -> bool:
    env = dict(env or {})
    if isinstance(f, Falsum):
        return False
    if isinstance(f, Atom):
        return eval_atom(f, env)
    if isinstance(f, And):
        return all(eval_formula(p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(eval_formula(p, env) for p in f.parts)
    if isinstance(f, Not):
        return not eval_formula(f.body, env)
    if isinstance(f, Implies):
        return (not eval_formula(f.antecedent, env)) or eval_formula(f.consequent, env)
    if isinstance(f, Iff):
        return eval_formula(f.left, env) == eval_formula(f.right, env)
    if isinstance(f, Quant):
        hi = max([8] + [abs(v) + 2 for v in env.values()])
        lo = 0 if f.sort == "natural" else -hi
        vals = range(lo, hi + 1)
        if f.kind == "exists":
            return any(eval_formula(f.body, {**env, f.var: v}) for v in vals)
        return all(eval_formula(f.body, {**env, f.var: v}) for v in vals)
    raise NotGround(repr(f))
