"""Finite affine-plane models used as soundness oracles for geometry.

The main model is the affine plane over GF(3): nine points, twelve
lines, squared-distance congruence (x is a nonresidue mod 3, so two
points are "congruent-distance zero" apart only if equal), dot-product
orthogonality (no direction is self-orthogonal mod 3) and exact
midpoints (2 is invertible).  The plane over GF(2) serves the incidence
axioms only; its dot product admits a self-orthogonal direction, so
orthogonality and congruence are not meaningful there.

Partial functions follow the convention of the checker: a term such as a
line through a single point is undefined, and any rule instantiation
involving an undefined term is vacuous.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .ast import (And, App, Atom, Falsum, Formula, Iff, Implies, IntLit, Not,
                  Or, Quant, Sym, TVar, Term, Var)
from .engine import Rule

Point = Tuple[int, int]


@dataclass(frozen=True)
class Line:
    direction: Tuple[int, int]  # canonical: first nonzero coordinate = 1
    points: frozenset


class FiniteModel:
    def __init__(self, q: int):
        self.q = q
        self.points: List[Point] = [(x, y) for x in range(q) for y in range(q)]
        self.directions = [(1, t) for t in range(q)] + [(0, 1)]
        self.lines: List[Line] = []
        self._through: Dict[frozenset, Line] = {}
        for d in self.directions:
            starts = set()
            for p in self.points:
                pts = frozenset(self._shift(p, d, t) for t in range(q))
                if pts not in starts:
                    starts.add(pts)
                    self.lines.append(Line(d, pts))
        for line in self.lines:
            for a, b in itertools.combinations(line.points, 2):
                self._through[frozenset((a, b))] = line

    def _shift(self, p: Point, d: Tuple[int, int], t: int) -> Point:
        return ((p[0] + t * d[0]) % self.q, (p[1] + t * d[1]) % self.q)

    # -- geometric primitives (partial: None = undefined) -----------------
    def line_through(self, a: Point, b: Point) -> Optional[Line]:
        if a == b:
            return None
        return self._through[frozenset((a, b))]

    def dist2(self, a: Point, b: Point) -> int:
        return ((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2) % self.q

    def dot(self, u: Tuple[int, int], v: Tuple[int, int]) -> int:
        return (u[0] * v[0] + u[1] * v[1]) % self.q

    def midpoint(self, a: Point, b: Point) -> Optional[Point]:
        if self.q % 2 == 0:
            return None
        inv2 = pow(2, -1, self.q)
        return ((a[0] + b[0]) * inv2 % self.q, (a[1] + b[1]) * inv2 % self.q)

    def isect(self, g: Line, h: Line) -> Optional[Point]:
        if g.points == h.points or g.direction == h.direction:
            return None
        (common,) = g.points & h.points
        return common

    def parallel(self, g: Line, h: Line) -> bool:
        return g.direction == h.direction

    def perpendicular(self, g: Line, h: Line) -> bool:
        return self.dot(g.direction, h.direction) == 0

    def collinear(self, a: Point, b: Point, c: Point) -> bool:
        line = self.line_through(a, b)
        return a == b or (line is not None and c in line.points)

    # -- objects for composite sorts --------------------------------------
    def objects_of_sort(self, sort: str) -> Iterable:
        if sort == "point":
            return self.points
        if sort == "line":
            return self.lines
        if sort == "segment":
            return [("segment", tuple(sorted((a, b))))
                    for a, b in itertools.combinations_with_replacement(self.points, 2)]
        if sort == "triangle":
            return [("triangle", t) for t in itertools.permutations(self.points, 3)]
        if sort == "quadrangle":
            return [("quadrangle", t) for t in itertools.permutations(self.points, 4)]
        raise KeyError(sort)


class Undefined(Exception):
    pass


def _pt(v) -> Point:
    if isinstance(v, tuple) and len(v) == 2 and all(isinstance(c, int) for c in v):
        return v
    raise Undefined(v)


def eval_term(model: FiniteModel, t: Term, env: dict):
    if isinstance(t, (Var, TVar)):
        name = t.name
        if name not in env:
            raise Undefined(name)
        return env[name]
    if isinstance(t, App):
        args = [eval_term(model, a, env) for a in t.args]
        if t.func == "seg":
            return ("segment", tuple(sorted((_pt(args[0]), _pt(args[1])))))
        if t.func == "line":
            line = model.line_through(_pt(args[0]), _pt(args[1]))
            if line is None:
                raise Undefined("line through equal points")
            return line
        if t.func == "triangle":
            pts = tuple(_pt(a) for a in args)
            if len(set(pts)) != 3:
                raise Undefined("degenerate triangle")
            return ("triangle", pts)
        if t.func == "quadrangle":
            pts = tuple(_pt(a) for a in args)
            if len(set(pts)) != 4:
                raise Undefined("degenerate quadrangle")
            return ("quadrangle", pts)
        if t.func == "midpoint":
            kind, (a, b) = args[0]
            m = model.midpoint(a, b)
            if m is None:
                raise Undefined("midpoint")
            return m
        if t.func == "isect":
            p = model.isect(args[0], args[1])
            if p is None:
                raise Undefined("intersection")
            return p
    raise Undefined(repr(t))


def _quad_parallelogram(model, pts):
    a, b, c, d = pts
    return all((b[i] - a[i]) % model.q == (c[i] - d[i]) % model.q for i in (0, 1))


def _sides(pts):
    a, b, c, d = pts
    return [(a, b), (b, c), (c, d), (d, a)]


def _dir(model, a, b):
    line = model.line_through(a, b)
    if line is None:
        raise Undefined("direction of equal points")
    return line.direction


def eval_atom(model: FiniteModel, atom: Atom, env: dict) -> bool:
    args = [eval_term(model, a, env) for a in atom.args]
    p = atom.pred
    if p == "on":
        return _pt(args[0]) in args[1].points
    if p == "parallel":
        return model.parallel(args[0], args[1])
    if p == "perpendicular":
        return model.perpendicular(args[0], args[1])
    if p == "seg_congruent":
        (_, (a1, a2)), (_, (b1, b2)) = args[0], args[1]
        return model.dist2(a1, a2) == model.dist2(b1, b2)
    if p in ("eq", "not_eq"):
        if isinstance(args[0], Line) != isinstance(args[1], Line):
            same = False
        elif isinstance(args[0], Line):
            same = args[0].points == args[1].points
        else:
            same = args[0] == args[1]
        return same if p == "eq" else not same
    if p == "is_sort":
        return True
    if p == "proper_triangle":
        _, (x, y, z) = args[0]
        return not model.collinear(x, y, z)
    if p == "right_angled":
        _, (x, y, z) = args[0]
        u = ((x[0] - z[0]) % model.q, (x[1] - z[1]) % model.q)
        v = ((y[0] - z[0]) % model.q, (y[1] - z[1]) % model.q)
        return model.dot(u, v) == 0
    if p == "isosceles":
        _, (x, y, z) = args[0]
        return model.dist2(x, z) == model.dist2(z, y)
    if p == "parallelogram":
        return _quad_parallelogram(model, args[0][1])
    if p == "rhombus":
        pts = args[0][1]
        sides = [model.dist2(a, b) for a, b in _sides(pts)]
        return _quad_parallelogram(model, pts) and len(set(sides)) == 1
    if p == "rectangle":
        a, b, c, d = args[0][1]
        u = ((b[0] - a[0]) % model.q, (b[1] - a[1]) % model.q)
        v = ((c[0] - b[0]) % model.q, (c[1] - b[1]) % model.q)
        return _quad_parallelogram(model, args[0][1]) and model.dot(u, v) == 0
    if p == "square":
        return (eval_atom(model, Atom("rhombus", atom.args), env)
                and eval_atom(model, Atom("rectangle", atom.args), env))
    if p == "trapezoid":
        a, b, c, d = args[0][1]
        try:
            first = _dir(model, a, b) == _dir(model, c, d)
        except Undefined:
            first = False
        try:
            second = _dir(model, b, c) == _dir(model, d, a)
        except Undefined:
            second = False
        return first or second
    if p == "kite":
        a, b, c, d = args[0][1]
        axis_ac = (model.dist2(a, b) == model.dist2(a, d)
                   and model.dist2(c, b) == model.dist2(c, d))
        axis_bd = (model.dist2(b, a) == model.dist2(b, c)
                   and model.dist2(d, a) == model.dist2(d, c))
        return axis_ac or axis_bd
    raise Undefined(f"predicate {p}")


def eval_formula(model: FiniteModel, f: Formula, env: dict) -> bool:
    """Three-valued evaluation collapsed: undefined atoms propagate as
    Undefined, except under a quantifier where an undefined witness simply
    fails to witness."""
    if isinstance(f, Atom):
        return eval_atom(model, f, env)
    if isinstance(f, Falsum):
        return False
    if isinstance(f, And):
        return all(eval_formula(model, p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(eval_formula(model, p, env) for p in f.parts)
    if isinstance(f, Not):
        return not eval_formula(model, f.body, env)
    if isinstance(f, Implies):
        try:
            if not eval_formula(model, f.antecedent, env):
                return True
        except Undefined:
            return True
        return eval_formula(model, f.consequent, env)
    if isinstance(f, Iff):
        return (eval_formula(model, f.left, env)
                == eval_formula(model, f.right, env))
    if isinstance(f, Quant):
        witnesses = model.objects_of_sort(f.sort)
        results = []
        for w in witnesses:
            try:
                results.append(eval_formula(model, f.body, {**env, f.var: w}))
            except Undefined:
                results.append(False)
        return any(results) if f.kind == "exists" else all(results)
    raise Undefined(repr(f))


# ---------------------------------------------------------------------------
# Rule soundness


def _guard_ok(model: FiniteModel, g, env: dict) -> bool:
    """Model reading of the guards that occur in geometry rules."""
    if g.name == "distinct":
        try:
            a, b = (eval_term(model, Var(x), env) for x in g.args)
        except Undefined:
            return False
        if isinstance(a, Line) and isinstance(b, Line):
            return a.points != b.points
        return a != b
    # enumeration guards impose no constraint: the check enumerates anyway
    if g.name in ("enum_sorted", "enum_terms"):
        return True
    raise Undefined(f"guard {g.name} has no model semantics")


def check_rule(model: FiniteModel, rule: Rule):
    """Exhaustively check one rule; returns the first unsound assignment
    or None.  Assignments with undefined terms are vacuous."""
    if rule.conclusion is None:
        return None
    names = [n for n, _ in rule.var_sorts]
    domains = [list(model.objects_of_sort(s)) for _, s in rule.var_sorts]
    for combo in itertools.product(*domains):
        env = dict(zip(names, combo))
        try:
            if not all(_guard_ok(model, g, env) for g in rule.guards):
                continue
            if not all(eval_formula(model, p, env) for p in rule.premises):
                continue
            if not eval_formula(model, rule.conclusion, env):
                return env
        except Undefined:
            continue
    return None


# ---------------------------------------------------------------------------
# Axiom verification


def check_axioms(model: FiniteModel) -> Dict[str, bool]:
    """Machine-check the geometric axioms the rule packs encode."""
    out: Dict[str, bool] = {}
    pts, lines = model.points, model.lines

    out["unique-line-through-two-points"] = all(
        sum(1 for l in lines if a in l.points and b in l.points) == 1
        for a, b in itertools.combinations(pts, 2))

    out["three-noncollinear-points"] = any(
        not model.collinear(a, b, c)
        for a, b, c in itertools.combinations(pts, 3))

    out["unique-parallel-through-point"] = all(
        sum(1 for h in lines if p in h.points and model.parallel(h, g)) == 1
        for g in lines for p in pts)

    if model.q > 2:
        out["congruence-equivalence"] = all(
            model.dist2(a, a) == model.dist2(b, b)
            for a in pts for b in pts) and all(
            (model.dist2(a, b) == 0) == (a == b)
            for a in pts for b in pts)

        out["unique-perpendicular-through-point"] = all(
            sum(1 for h in lines
                if p in h.points and model.perpendicular(h, g)) == 1
            for g in lines for p in pts)

        out["parallelogram-side-congruence"] = all(
            (not _quad_parallelogram(model, combo))
            or (model.dist2(combo[0], combo[1]) == model.dist2(combo[3], combo[2])
                and model.dist2(combo[1], combo[2]) == model.dist2(combo[0], combo[3]))
            for combo in itertools.permutations(pts, 4))

        def equidistant(x, a, b):
            return model.dist2(x, a) == model.dist2(x, b)

        def perp_bisector_iff():
            for a, b in itertools.permutations(pts, 2):
                ab = model.line_through(a, b)
                m = model.midpoint(a, b)
                perp = next(h for h in lines
                            if m in h.points and model.perpendicular(h, ab))
                for x in pts:
                    if (x in perp.points) != equidistant(x, a, b):
                        return False
            return True

        out["perpendicular-bisector"] = perp_bisector_iff()

        def rhombus_with_midpoint():
            for combo in itertools.permutations(pts, 4):
                env = {"q": ("quadrangle", combo)}
                if eval_atom(model, Atom("rhombus", (Var("q"),)), env):
                    a, b, c, d = combo
                    if model.midpoint(a, c) == model.midpoint(b, d):
                        return True
            return False

        out["rhombus-with-midpoint-exists"] = rhombus_with_midpoint()

    return out


def build_test_model(q: int = 3) -> FiniteModel:
    return FiniteModel(q)
