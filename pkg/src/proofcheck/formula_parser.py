"""Recursive-descent parser for the relaxed formal syntax.

Covers arithmetical terms with the usual priority rules, formulas with
infix relations, inequality chains (expanded to conjunctions of adjacent
comparisons), manipulation chains linked by =>/<=> with optional
both-sides operation annotations, and geometry constructor notation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .ast import (And, App, Atom, BinOp, Falsum, Formula, FVar, IntLit, Neg,
                  Quant, Sym, Term, TVar, Var, conj)

# Unicode operators are normalized to ASCII before lexing.
_UNICODE_ALIASES = {
    "∥": "||", "⊥": "_|_", "∼": "~", "≤": "<=", "≥": ">=",
    "→": "->", "↔": "<->", "⇒": "=>", "⇐": "<=", "⇔": "<=>",
    "∧": "&", "∨": r"\/", "¬": "!", "≠": "!=", "·": "*", "∈": " in ",
    "−": "-", "√": "sqrt",
}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)"
    r"|(?P<pvar>\?[A-Za-z](?:[A-Za-z0-9]|_(?=[A-Za-z0-9]))*)"
    r"|(?P<op><=>|<->|:=|!=|->|=>|<=|>=|\|\||_\|_|/\\|\\/|[-+*^()=<>|~&!.,:])"
    r"|(?P<ident>[A-Za-z](?:[A-Za-z0-9]|_(?=[A-Za-z0-9]))*))"
)

CONSTRUCTOR_NAMES = {"s": "seg", "l": "line", "d": "triangle", "v": "quadrangle",
                     "m": "midpoint", "isect": "isect"}
CONSTRUCTOR_ARITY = {"seg": 2, "line": 2, "triangle": 3, "quadrangle": 4,
                     "midpoint": 1, "isect": 2}

COMPARISONS = {"=": "eq", "<": "lt", ">": "gt", "<=": "le", ">=": "ge"}
RELATIONS = dict(COMPARISONS)
RELATIONS.update({"|": "divides", "~": "seg_congruent", "||": "parallel",
                  "_|_": "perpendicular", ":=": "defeq", "!=": "not_eq"})

SORT_NAMES = {"natural", "integer", "point", "line", "segment", "triangle", "quadrangle"}


class SyntaxErr(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at token {position})")
        self.position = position


@dataclass(frozen=True)
class Chain:
    """Alternating term, relation, term, ... sequence (terms at both ends)."""

    terms: tuple
    relations: tuple  # relation names, len == len(terms) - 1

    def expand(self) -> Formula:
        atoms = [Atom(rel, (self.terms[i], self.terms[i + 1]))
                 for i, rel in enumerate(self.relations)]
        return conj(atoms)


@dataclass(frozen=True)
class ManipulationChain:
    elements: tuple  # two-sided (in)equality Atoms
    links: tuple     # (kind, op) with kind 'iff'|'implies', op None or (sym, Term)


def normalize_input(text: str) -> str:
    for u, a in _UNICODE_ALIASES.items():
        text = text.replace(u, a)
    return text


def tokenize(text: str):
    text = normalize_input(text)
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip() == "":
                break
            raise SyntaxErr(f"unexpected character {text[pos:].strip()[0]!r}", len(tokens))
        if m.group("num") is not None:
            tokens.append(("num", m.group("num")))
        elif m.group("pvar") is not None:
            tokens.append(("pvar", m.group("pvar")[1:]))
        elif m.group("op") is not None:
            tokens.append(("op", m.group("op")))
        else:
            tokens.append(("ident", m.group("ident")))
        pos = m.end()
    return tokens


class Parser:
    def __init__(self, tokens, field: Optional[str] = None):
        self.toks = tokens
        self.i = 0
        self.field = field  # playing field gates constructor productions

    # -- token helpers ----------------------------------------------------
    def peek(self, offset=0):
        j = self.i + offset
        return self.toks[j] if j < len(self.toks) else (None, None)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise SyntaxErr(f"expected {op!r}, found {val!r}", self.i - 1)

    def at_end(self):
        return self.i >= len(self.toks)

    # -- terms ------------------------------------------------------------
    def term(self) -> Term:
        return self.additive()

    def additive(self) -> Term:
        t = self.multiplicative()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.next()
            t = BinOp(op, t, self.multiplicative())
        return t

    def multiplicative(self) -> Term:
        t = self.unary()
        while self.peek() == ("op", "*"):
            self.next()
            t = BinOp("*", t, self.unary())
        return t

    def unary(self) -> Term:
        if self.peek() == ("op", "-"):
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Term:
        base = self.atom_term()
        if self.peek() == ("op", "^"):
            self.next()
            return BinOp("^", base, self.unary())
        return base

    def atom_term(self) -> Term:
        kind, val = self.peek()
        if kind == "pvar":
            self.next()
            return TVar(val)
        if kind == "num":
            self.next()
            return IntLit(int(val))
        if kind == "op" and val == "(":
            self.next()
            t = self.term()
            self.expect_op(")")
            return t
        if kind == "ident":
            if self.peek(1) == ("op", "(") and val in CONSTRUCTOR_NAMES:
                if self.field in ("number-theory", "induction"):
                    raise SyntaxErr(f"geometry notation {val}(...) not available here", self.i)
                return self.constructor(CONSTRUCTOR_NAMES[val])
            self.next()
            return Var(val)
        raise SyntaxErr(f"expected a term, found {val!r}", self.i)

    def constructor(self, func: str) -> Term:
        self.next()  # name
        self.expect_op("(")
        args = [self.term()]
        while self.peek() == ("op", ","):
            self.next()
            args.append(self.term())
        self.expect_op(")")
        if len(args) != CONSTRUCTOR_ARITY[func]:
            raise SyntaxErr(f"{func} takes {CONSTRUCTOR_ARITY[func]} arguments", self.i)
        return App(func, tuple(args))

    # -- formulas ---------------------------------------------------------
    def formula(self) -> Formula:
        return self.iff()

    def iff(self) -> Formula:
        left = self.implication()
        while self.peek() == ("op", "<->"):
            self.next()
            left = Iff_(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == ("op", "->"):
            self.next()
            return Implies_(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.peek() == ("op", "\\/"):
            self.next()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or_(tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.negation()]
        while self.peek() == ("op", "&"):
            self.next()
            parts.append(self.negation())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def negation(self) -> Formula:
        if self.peek() == ("op", "!"):
            self.next()
            return Not_(self.negation())
        kind, val = self.peek()
        if kind == "ident" and val in ("forall", "exists") and self.peek(1)[0] == "ident":
            return self.quantifier()
        return self.primary()

    def quantifier(self) -> Formula:
        _, kw = self.next()
        kind, var = self.next()
        if kind != "ident":
            raise SyntaxErr("expected a variable after quantifier", self.i - 1)
        sort = "integer"
        if self.peek() == ("op", ":"):
            self.next()
            k, s = self.next()
            if k != "ident" or s not in SORT_NAMES:
                raise SyntaxErr(f"unknown sort {s!r}", self.i - 1)
            sort = s
        self.expect_op(".")
        return Quant(kw, var, sort, self.iff())

    def primary(self) -> Formula:
        kind, val = self.peek()
        if kind == "ident" and val == "falsum":
            self.next()
            return Falsum()
        mark = self.i
        try:
            return self.relational()
        except SyntaxErr:
            self.i = mark
        if self.peek() == ("op", "("):
            self.next()
            f = self.formula()
            self.expect_op(")")
            return f
        raise SyntaxErr(f"expected a formula, found {val!r}", self.i)

    def relational(self) -> Formula:
        # predicate-style atoms: even(x), parallelogram(v(a,b,c,d)), ...
        kind, val = self.peek()
        if (kind == "ident" and self.peek(1) == ("op", "(")
                and val not in CONSTRUCTOR_NAMES):
            self.next()
            self.next()
            args = [self.term()]
            while self.peek() == ("op", ","):
                self.next()
                args.append(self.term())
            self.expect_op(")")
            return Atom(val, tuple(args))
        first = self.term()
        terms = [first]
        relations = []
        while True:
            k, v = self.peek()
            if k == "op" and v == "~" and self.peek(1) == ("op", "("):
                # congruence modulo m: a~(m)b
                self.next()
                self.next()
                mod = self.term()
                self.expect_op(")")
                right = self.term()
                if relations:
                    raise SyntaxErr("congruences cannot appear inside chains", self.i)
                return Atom("congmod", (mod, first, right))
            if k == "ident" and v == "in":
                self.next()
                right = self.term()
                if relations:
                    raise SyntaxErr("'in' cannot appear inside chains", self.i)
                return Atom("on", (first, right))
            if k == "ident" and v == "is":
                self.next()
                k2, s = self.next()
                if k2 != "ident" or s not in SORT_NAMES:
                    raise SyntaxErr(f"unknown sort {s!r}", self.i - 1)
                if relations:
                    raise SyntaxErr("'is' cannot appear inside chains", self.i)
                return Atom("is_sort", (first, Sym(s)))
            if k == "op" and v in RELATIONS:
                self.next()
                relations.append(RELATIONS[v])
                terms.append(self.term())
            else:
                break
        if not relations:
            # a lone pattern variable at formula level stands for a formula
            if isinstance(first, TVar):
                return FVar(first.name)
            raise SyntaxErr("expected a relation", self.i)
        if len(relations) == 1:
            return Atom(relations[0], (terms[0], terms[1]))
        if any(r not in COMPARISONS.values() for r in relations):
            raise SyntaxErr("only =, <, >, <=, >= may be chained", self.i)
        return Chain(tuple(terms), tuple(relations)).expand()


# avoid shadowing by dataclass imports with local helper names
from .ast import Iff as Iff_, Implies as Implies_, Not as Not_, Or as Or_  # noqa: E402


def parse_term(fragment: str, field: Optional[str] = None) -> Term:
    p = Parser(tokenize(fragment), field)
    t = p.term()
    if not p.at_end():
        raise SyntaxErr("trailing input after term", p.i)
    return t


def parse_formula(fragment: str, field: Optional[str] = None) -> Formula:
    p = Parser(tokenize(fragment), field)
    f = p.formula()
    if not p.at_end():
        raise SyntaxErr("trailing input after formula", p.i)
    return f


def parse_chain(fragment: str, field: Optional[str] = None) -> Chain:
    p = Parser(tokenize(fragment), field)
    terms = [p.term()]
    relations = []
    while not p.at_end():
        k, v = p.next()
        if k != "op" or v not in COMPARISONS:
            raise SyntaxErr(f"expected a comparison, found {v!r}", p.i - 1)
        relations.append(COMPARISONS[v])
        terms.append(p.term())
    if not relations:
        raise SyntaxErr("chain needs at least one relation", p.i)
    return Chain(tuple(terms), tuple(relations))


class ChainElementNotTwoSided(ValueError):
    pass


def parse_manipulation_chain(fragment: str, field: Optional[str] = None) -> ManipulationChain:
    p = Parser(tokenize(fragment), field)

    def element() -> Atom:
        left = p.term()
        k, v = p.next()
        if k != "op" or v not in COMPARISONS:
            raise SyntaxErr(f"expected a comparison, found {v!r}", p.i - 1)
        right = p.term()
        k2, v2 = p.peek()
        if k2 == "op" and v2 in COMPARISONS:
            raise ChainElementNotTwoSided(
                "manipulation chain elements must be single two-sided (in)equalities")
        return Atom(COMPARISONS[v], (left, right))

    elements = [element()]
    links = []
    while not p.at_end():
        k, v = p.next()
        if k != "op" or v not in ("=>", "<=>"):
            raise SyntaxErr(f"expected => or <=>, found {v!r}", p.i - 1)
        kind = "iff" if v == "<=>" else "implies"
        op = None
        if p.peek() == ("op", "(") and p.peek(1)[0] == "op" and p.peek(1)[1] in "+-*":
            p.next()
            _, sym = p.next()
            operand = p.term()
            p.expect_op(")")
            op = (sym, operand)
        links.append((kind, op))
        elements.append(element())
    if not links:
        raise SyntaxErr("manipulation chain needs at least one link", p.i)
    return ManipulationChain(tuple(elements), tuple(links))


def try_parse_fragment(fragment: str, field: Optional[str] = None):
    """Classify a formal fragment: ('manip', mc) / ('formula', f) / ('term', t)."""
    if "=>" in normalize_input(fragment):
        try:
            return "manip", parse_manipulation_chain(fragment, field)
        except ChainElementNotTwoSided:
            raise
        except SyntaxErr:
            pass
    try:
        return "formula", parse_formula(fragment, field)
    except SyntaxErr:
        pass
    return "term", parse_term(fragment, field)
