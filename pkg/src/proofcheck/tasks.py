"""Assembles one prover task per proof obligation: explicit claims,
existential presuppositions of namings, justification premises, and the
individual links of manipulation chains."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .ast import (And, Atom, Formula, Iff, Implies, Quant, Sym, Var,
                  and_parts, conj)
from .docmodel import AnnotatedLine, Exercise
from .structure import (ClosedImplication, closed_implications, governors,
                        implications_at, match_blocks, scope_ends)

TASK_KINDS = ("claim", "presupposition", "justification-premise", "link")


@dataclass
class ProverTask:
    assumptions: Tuple[Formula, ...]
    claims: Tuple[Formula, ...]
    former: Tuple[ClosedImplication, ...]
    declarations: Tuple[Formula, ...]
    goal: Formula
    line: int = 0
    kind: str = "claim"


def _split_declaration(content: Formula) -> Tuple[List[Formula], List[Formula]]:
    """is-sort atoms go into the declarations slot, the rest are facts."""
    sorts, facts = [], []
    for part in and_parts(content):
        if isinstance(part, Atom) and part.pred == "is_sort":
            sorts.append(part)
        else:
            facts.append(part)
    return sorts, facts


def _established(line: AnnotatedLine) -> List[Formula]:
    """Facts a verified claim line contributes to later lines."""
    if line.content is None:
        return []
    if line.function == "justified-claim":
        return [line.content.consequent]
    if line.function == "claim" and isinstance(line.content, Quant) \
            and line.content.kind == "exists" and line.names:
        # the proved witness stays named: "There is a k such that phi"
        name = line.names[0]
        q = line.content
        body = q.body if q.var == name else None
        if body is not None:
            return [Atom("is_sort", (Var(name), Sym(q.sort))), body,
                    line.content]
        return [line.content]
    return [line.content]


def _naming_presupposition(line: AnnotatedLine) -> Optional[Formula]:
    """A naming "Let k be ... such that phi" presupposes that such a k
    exists; sort atoms of the named symbols become quantifier sorts."""
    if line.function != "naming" or not line.names or line.content is None:
        return None
    sorts, facts = _split_declaration(line.content)
    sort_of: Dict[str, str] = {}
    for at in sorts:
        if isinstance(at.args[0], Var):
            sort_of[at.args[0].name] = at.args[1].name
    body_parts = [at for at in sorts
                  if not (isinstance(at.args[0], Var)
                          and at.args[0].name in line.names)] + facts
    if not body_parts:
        return None
    goal = conj(body_parts)
    for name in reversed(line.names):
        goal = Quant("exists", name, sort_of.get(name, "integer"), goal)
    return goal


def generate_tasks(lines: Sequence[AnnotatedLine],
                   exercise: Optional[Exercise] = None) -> List[ProverTask]:
    blocks = match_blocks(lines)
    ends = scope_ends(lines, blocks)
    gov = governors(lines, ends)
    implications = closed_implications(lines)
    by_id = {l.id: l for l in lines}

    ex_assumptions: Tuple[Formula, ...] = ()
    ex_declarations: Tuple[Formula, ...] = ()
    if exercise is not None:
        ex_assumptions = tuple(exercise.assumptions)
        ex_declarations = tuple(
            Atom("is_sort", (Var(n), Sym(s))) for n, s in exercise.declarations)

    def context_at(j: int):
        assumptions: List[Formula] = list(ex_assumptions)
        claims: List[Formula] = []
        declarations: List[Formula] = list(ex_declarations)
        for l in lines:
            if not (l.id < j < ends.get(l.id, 0)):
                if l.function in ("claim", "justified-claim",
                                  "citation-claim"):
                    # claims stay accessible while their assumptions are open
                    if l.id < j and all(a < j < ends.get(a, 0)
                                        for a in gov[l.id]):
                        claims.extend(_established(l))
                continue
            if l.function == "assumption":
                assumptions.append(l.content)
            elif l.function in ("declaration", "definition", "naming"):
                sorts, facts = _split_declaration(l.content)
                declarations.extend(sorts)
                assumptions.extend(facts)
        former = tuple(implications_at(implications, j, ends))
        return tuple(assumptions), tuple(claims), former, tuple(declarations)

    tasks: List[ProverTask] = []
    for l in lines:
        if l.content is None:
            continue
        assumptions, claims, former, declarations = context_at(l.id)
        if l.function == "naming":
            presup = _naming_presupposition(l)
            if presup is not None:
                tasks.append(ProverTask(assumptions, claims, former,
                                        declarations, presup, l.id,
                                        "presupposition"))
            continue
        if l.function not in ("claim", "justified-claim", "citation-claim"):
            continue
        if l.chain is not None:
            for k, (kind, _op) in enumerate(l.chain.links):
                a, b = l.chain.elements[k], l.chain.elements[k + 1]
                tasks.append(ProverTask(assumptions, claims, former,
                                        declarations, Implies(a, b), l.id,
                                        "link"))
                if kind == "iff":
                    tasks.append(ProverTask(assumptions, claims, former,
                                            declarations, Implies(b, a),
                                            l.id, "link"))
            continue
        if l.function == "justified-claim":
            premise = l.content.antecedent
            tasks.append(ProverTask(assumptions, claims, former, declarations,
                                    premise, l.id, "justification-premise"))
            tasks.append(ProverTask(assumptions, claims + (premise,), former,
                                    declarations, l.content.consequent, l.id,
                                    "claim"))
            continue
        tasks.append(ProverTask(assumptions, claims, former, declarations,
                                l.content, l.id, "claim"))
    return tasks
