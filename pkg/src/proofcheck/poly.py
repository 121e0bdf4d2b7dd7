"""Canonical multivariate integer polynomials for term normalization.

A polynomial is a mapping from monomials to nonzero integer coefficients,
where a monomial is a sorted tuple of (variable, exponent) pairs.  Two
arithmetical terms denote the same polynomial function over the integers
iff they normalize to the same mapping.
"""
from __future__ import annotations

import math
from typing import Dict, Tuple

from .ast import App, BinOp, IntLit, Neg, Sym, Term, Var

Monomial = Tuple[Tuple[str, int], ...]
Poly = Dict[Monomial, int]

MAX_DEGREE = 8


class DegreeBoundExceeded(Exception):
    pass


class NotPolynomial(Exception):
    """Raised for terms outside the +,-,*,^(literal>=0) fragment."""


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: Dict[str, int] = {}
    for v, e in a + b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _check_degree(m: Monomial):
    if sum(e for _, e in m) > MAX_DEGREE:
        raise DegreeBoundExceeded(m)


def p_const(c: int) -> Poly:
    return {(): c} if c else {}


def p_var(name: str) -> Poly:
    return {((name, 1),): 1}


def p_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, c in b.items():
        nc = out.get(m, 0) + c
        if nc:
            out[m] = nc
        else:
            out.pop(m, None)
    return out


def p_neg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}


def p_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = _mono_mul(ma, mb)
            _check_degree(m)
            nc = out.get(m, 0) + ca * cb
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
    return out


def p_pow(a: Poly, n: int) -> Poly:
    out = p_const(1)
    for _ in range(n):
        out = p_mul(out, a)
    return out


def poly_normalize(t: Term) -> Poly:
    if isinstance(t, IntLit):
        return p_const(t.value)
    if isinstance(t, Var):
        return p_var(t.name)
    if isinstance(t, Neg):
        return p_neg(poly_normalize(t.arg))
    if isinstance(t, BinOp):
        if t.op == "^":
            if not isinstance(t.right, IntLit) or t.right.value < 0:
                raise NotPolynomial("exponent must be a literal >= 0")
            return p_pow(poly_normalize(t.left), t.right.value)
        a, b = poly_normalize(t.left), poly_normalize(t.right)
        if t.op == "+":
            return p_add(a, b)
        if t.op == "-":
            return p_add(a, p_neg(b))
        if t.op == "*":
            return p_mul(a, b)
    if isinstance(t, (App, Sym)):
        raise NotPolynomial(repr(t))
    raise NotPolynomial(repr(t))


def is_polynomial(t: Term) -> bool:
    try:
        poly_normalize(t)
        return True
    except (NotPolynomial, DegreeBoundExceeded):
        return False


def poly_key(p: Poly) -> tuple:
    """Hashable canonical key: monomials sorted by descending total degree,
    then lexicographically."""
    return tuple(sorted(p.items(), key=lambda mc: (-sum(e for _, e in mc[0]), mc[0])))


def poly_eval(p: Poly, env) -> int:
    total = 0
    for m, c in p.items():
        v = c
        for var, e in m:
            v *= env[var] ** e
        total += v
    return total


def poly_content(p: Poly) -> int:
    """GCD of all coefficients (0 for the zero polynomial)."""
    g = 0
    for c in p.values():
        g = math.gcd(g, abs(c))
    return g


def poly_vars(p: Poly):
    out = set()
    for m in p:
        for v, _ in m:
            out.add(v)
    return sorted(out)


def poly_parity(p: Poly, known_parity: Dict[str, int] | None = None):
    """Uniform parity of the polynomial's values over all integer inputs.

    Variables listed in ``known_parity`` are fixed to the given residue
    mod 2; the rest range over both residues.  Returns 0 (always even),
    1 (always odd) or None (mixed).  Parity of a polynomial's value is
    determined by its arguments mod 2, so checking residue assignments
    is exact.
    """
    known_parity = known_parity or {}
    free = [v for v in poly_vars(p) if v not in known_parity]
    seen = set()
    for mask in range(1 << len(free)):
        env = dict(known_parity)
        for i, v in enumerate(free):
            env[v] = (mask >> i) & 1
        seen.add(poly_eval(p, env) % 2)
        if len(seen) > 1:
            return None
    return seen.pop()


def poly_to_term(p: Poly) -> Term:
    """Canonical term rendering of a polynomial (used for fact keys)."""
    items = poly_key(p)
    if not items:
        return IntLit(0)
    term = None
    for m, c in items:
        factor: Term | None = None
        for var, e in m:
            piece: Term = Var(var) if e == 1 else BinOp("^", Var(var), IntLit(e))
            factor = piece if factor is None else BinOp("*", factor, piece)
        if factor is None:
            piece = IntLit(c)
        elif c == 1:
            piece = factor
        elif c == -1:
            piece = Neg(factor)
        else:
            piece = BinOp("*", IntLit(c), factor)
        term = piece if term is None else BinOp("+", term, piece)
    return term
