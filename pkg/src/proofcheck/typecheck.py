"""Sort checking: every symbol introduced before use, every predicate and
constructor applied at its signature."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .ast import (And, App, Atom, BinOp, Falsum, Formula, Iff, Implies,
                  IntLit, Neg, Not, Or, Quant, Sym, Term, Var)
from .docmodel import AnnotatedLine, Exercise
from .fields import POLY_PREDS, get_field
from .structure import governors, match_blocks, scope_ends

_CONSTRUCTOR_SIG = {
    "seg": (("point", "point"), "segment"),
    "line": (("point", "point"), "line"),
    "triangle": (("point", "point", "point"), "triangle"),
    "quadrangle": (("point",) * 4, "quadrangle"),
    "midpoint": (("segment",), "point"),
    "isect": (("line", "line"), "point"),
}

_NUMERIC = ("natural", "integer")


@dataclass(frozen=True)
class TypeIssue:
    line_id: int
    message: str


class _SortError(Exception):
    pass


def _compatible(actual: str, expected: str) -> bool:
    if actual == expected:
        return True
    return actual == "natural" and expected == "integer"


def compute_sort(t: Term, env: Dict[str, str]) -> str:
    if isinstance(t, IntLit):
        return "natural" if t.value >= 0 else "integer"
    if isinstance(t, Var):
        if t.name not in env:
            raise _SortError(f"symbol '{t.name}' used but not introduced")
        return env[t.name]
    if isinstance(t, Sym):
        return "sort"
    if isinstance(t, (BinOp, Neg)):
        args = (t.left, t.right) if isinstance(t, BinOp) else (t.body,)
        for a in args:
            s = compute_sort(a, env)
            if s not in _NUMERIC:
                raise _SortError(
                    f"arithmetic applied to a {s} (expected a number)")
        return "integer"
    if isinstance(t, App):
        if t.func not in _CONSTRUCTOR_SIG:
            raise _SortError(f"unknown constructor '{t.func}'")
        arg_sorts, result = _CONSTRUCTOR_SIG[t.func]
        if len(t.args) != len(arg_sorts):
            raise _SortError(f"'{t.func}' expects {len(arg_sorts)} arguments")
        for a, want in zip(t.args, arg_sorts):
            got = compute_sort(a, env)
            if not _compatible(got, want):
                raise _SortError(
                    f"'{t.func}' expects a {want}, got a {got}")
        return result
    raise _SortError(f"cannot type term {t!r}")


def _check_atom(at: Atom, env: Dict[str, str], signatures: Dict) -> None:
    if at.pred == "is_sort":
        compute_sort(at.args[0], env)
        return
    if at.pred in POLY_PREDS:
        sorts = [compute_sort(a, env) for a in at.args]
        kinds = {("numeric" if s in _NUMERIC else s) for s in sorts}
        if len(kinds) > 1:
            raise _SortError(
                f"'{at.pred}' compares a {sorts[0]} with a {sorts[1]}")
        return
    if at.pred not in signatures:
        raise _SortError(f"unknown predicate '{at.pred}' in this playing field")
    want = signatures[at.pred]
    if len(at.args) != len(want):
        raise _SortError(f"'{at.pred}' expects {len(want)} arguments")
    for a, w in zip(at.args, want):
        got = compute_sort(a, env)
        if not _compatible(got, w):
            raise _SortError(f"'{at.pred}' expects a {w}, got a {got}")


def _check_formula(f: Formula, env: Dict[str, str], signatures: Dict) -> None:
    if isinstance(f, Atom):
        _check_atom(f, env, signatures)
    elif isinstance(f, (And, Or)):
        for p in f.parts:
            _check_formula(p, env, signatures)
    elif isinstance(f, Not):
        _check_formula(f.body, env, signatures)
    elif isinstance(f, Implies):
        _check_formula(f.antecedent, env, signatures)
        _check_formula(f.consequent, env, signatures)
    elif isinstance(f, Iff):
        _check_formula(f.left, env, signatures)
        _check_formula(f.right, env, signatures)
    elif isinstance(f, Quant):
        inner = dict(env)
        inner[f.var] = f.sort
        _check_formula(f.body, inner, signatures)
    elif isinstance(f, Falsum):
        pass


def _introduced_sorts(line: AnnotatedLine,
                      env: Dict[str, str]) -> Dict[str, str]:
    """Sorts a declaration-like line (or a witness-naming claim) binds."""
    out: Dict[str, str] = {}
    if line.content is None:
        return out
    from .ast import and_parts
    if isinstance(line.content, Quant) and line.content.kind == "exists":
        for n in line.names:
            out[n] = line.content.sort
        return out
    for part in and_parts(line.content):
        if isinstance(part, Atom) and part.pred == "is_sort" \
                and isinstance(part.args[0], Var):
            out[part.args[0].name] = part.args[1].name
    if line.function == "definition" and line.names:
        # "Let x := t": x takes the computed sort of t
        for part in and_parts(line.content):
            if isinstance(part, Atom) and part.pred == "eq" \
                    and isinstance(part.args[0], Var) \
                    and part.args[0].name == line.names[0]:
                try:
                    out[line.names[0]] = compute_sort(part.args[1], env)
                except _SortError:
                    pass
    for n in line.names:
        out.setdefault(n, "integer" if not line.content else out.get(n, "integer"))
    return out


def check_types(lines: Sequence[AnnotatedLine],
                exercise: Optional[Exercise] = None,
                field: str = "number-theory") -> List[TypeIssue]:
    pf = get_field(field)
    blocks = match_blocks(lines)
    ends = scope_ends(lines, blocks)
    gov = governors(lines, ends)
    issues: List[TypeIssue] = []

    base_env: Dict[str, str] = {}
    if exercise is not None:
        for name, sort in exercise.declarations:
            base_env[name] = sort

    introducers = []  # (line, bindings, scope_end)
    for l in lines:
        if l.function in ("declaration", "definition", "naming"):
            introducers.append((l, None, ends.get(l.id, 0)))
        elif l.function == "claim" and l.names and l.content is not None \
                and isinstance(l.content, Quant):
            block = next((b for b in sorted(blocks, key=lambda b: -b.depth)
                          if b.start <= l.id < b.end), None)
            end = block.end if block else (lines[-1].id + 1)
            for a in gov[l.id]:
                end = min(end, ends[a])
            introducers.append((l, None, end))

    def env_at(j: int) -> Dict[str, str]:
        env = dict(base_env)
        for l, _, end in introducers:
            if l.id <= j < end or (l.id == j):
                env.update(_introduced_sorts(l, env))
        return env

    for l in lines:
        if l.content is None:
            continue
        if l.function == "goal-announcement":
            # announcements may mention variables declared later in the proof
            continue
        env = env_at(l.id)
        if l.function in ("declaration", "naming", "definition"):
            fresh = env_at(l.id - 1) if l.id > 1 else dict(base_env)
            for n in l.names:
                if n in fresh:
                    issues.append(TypeIssue(
                        l.id, f"symbol '{n}' is already in use here"))
        try:
            _check_formula(l.content, env, pf.signatures)
        except _SortError as e:
            issues.append(TypeIssue(l.id, str(e)))
    return issues
