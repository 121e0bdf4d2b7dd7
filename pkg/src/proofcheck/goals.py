"""Goal tracking: maintains candidate proof goals across announcements,
assumptions, subgoal markers and method announcements, and judges each
proof-end marker."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .ast import (And, Atom, Falsum, Formula, Iff, Implies, IntLit, Not,
                  Quant, Var, and_parts, render, subst_term)
from .docmodel import AnnotatedLine, Exercise
from .engine import canon_formula, fact_key
from .structure import (closed_implications, governors, match_blocks,
                        scope_ends)


@dataclass
class Candidate:
    formula: Formula
    required: FrozenSet[int]            # assumption lines that must be open
    tag: str = ""                       # "", "ind-base", "ind-step", "iff-dir"
    parent: Optional["Candidate"] = None
    directions_done: Set[str] = field(default_factory=set)
    proofs: List[FrozenSet[int]] = field(default_factory=list)

    def key(self) -> str:
        return fact_key(canon_formula(self.formula))


@dataclass
class Frame:
    open_line: int
    base_gov: FrozenSet[int]
    candidates: List[Candidate] = field(default_factory=list)
    parent_candidate: Optional[Candidate] = None
    direction: str = ""


class GoalTracker:
    """Processes annotated lines in order; produces the final goal status."""

    def __init__(self, lines: Sequence[AnnotatedLine],
                 exercise: Optional[Exercise] = None,
                 verified: Optional[Set[int]] = None):
        self.lines = list(lines)
        self.exercise = exercise
        self.verified = set(verified) if verified is not None else None
        blocks = match_blocks(self.lines)
        self.ends = scope_ends(self.lines, blocks)
        self.gov = governors(self.lines, self.ends)
        self.implications = closed_implications(self.lines)
        self.stack: List[Frame] = []
        self.pending: List[Formula] = []
        self.messages: List[str] = []
        self.statuses: List[str] = []
        self.declared = False
        if exercise is not None and exercise.form is not None:
            self.pending.append(exercise.form)
            self.declared = True

    # -- candidate management ---------------------------------------------------

    def _add(self, frame: Frame, formula: Formula,
             required: FrozenSet[int], tag: str = "",
             parent: Optional[Candidate] = None) -> Candidate:
        key = fact_key(canon_formula(formula))
        for c in frame.candidates:
            if c.key() == key and c.required == required:
                return c
        cand = Candidate(formula, required, tag, parent)
        frame.candidates.append(cand)
        self._expand(frame, cand)
        return cand

    def _expand(self, frame: Frame, cand: Candidate) -> None:
        f = cand.formula
        if isinstance(f, And):
            for part in f.parts:
                self._add(frame, part, cand.required)

    def candidate_formulas(self) -> List[Formula]:
        return [c.formula for c in self.stack[-1].candidates] \
            if self.stack else list(self.pending)

    # -- event handlers ---------------------------------------------------------

    def _on_proof_start(self, line: AnnotatedLine) -> None:
        frame = Frame(line.id, self.gov[line.id])
        self.stack.append(frame)
        for f in self.pending:
            self._add(frame, f, frozenset())
        self.pending = [f for f in self.pending]

    def _on_subgoal(self, line: AnnotatedLine, direction: str) -> None:
        if not self.stack:
            self.messages.append(
                f"line {line.id}: subgoal marker outside a proof block")
            return
        outer = self.stack[-1]
        target = None
        for c in outer.candidates:
            if isinstance(c.formula, Iff):
                target = c
                break
        if target is None:
            self.messages.append(
                f"line {line.id}: '{'=>' if direction == 'fwd' else '<='}'"
                " has no biconditional goal candidate to focus")
            self.stack.append(Frame(line.id, self.gov[line.id]))
            return
        l, r = target.formula.left, target.formula.right
        goal = Implies(l, r) if direction == "fwd" else Implies(r, l)
        frame = Frame(line.id, self.gov[line.id],
                      parent_candidate=target, direction=direction)
        self.stack.append(frame)
        self._add(frame, goal, frozenset())

    def _on_announcement(self, line: AnnotatedLine) -> None:
        self.declared = True
        if self.stack:
            self._add(self.stack[-1], line.content, frozenset())
        else:
            self.pending.append(line.content)

    def _on_declaration(self, line: AnnotatedLine) -> None:
        if not self.stack:
            return
        frame = self.stack[-1]
        for c in list(frame.candidates):
            f = c.formula
            while isinstance(f, Quant) and f.kind == "forall" \
                    and f.var in line.names:
                f = f.body
            if f is not c.formula:
                self._add(frame, f, c.required)

    def _on_assumption(self, line: AnnotatedLine) -> None:
        if not self.stack or line.content is None:
            return
        frame = self.stack[-1]
        key = fact_key(canon_formula(line.content))
        for c in list(frame.candidates):
            f = c.formula
            if isinstance(f, Implies) \
                    and fact_key(canon_formula(f.antecedent)) == key:
                self._add(frame, f.consequent, c.required | {line.id},
                          tag=c.tag, parent=c.parent)
            if self._negates(line.content, f):
                self._add(frame, Falsum(), c.required | {line.id},
                          tag=c.tag, parent=c.parent)

    @staticmethod
    def _negates(a: Formula, g: Formula) -> bool:
        ka, kg = canon_formula(a), canon_formula(g)
        return fact_key(canon_formula(Not(g))) == fact_key(ka) \
            or fact_key(canon_formula(Not(a))) == fact_key(kg)

    def _on_method(self, line: AnnotatedLine) -> None:
        if not self.stack or not line.names:
            return
        method = line.names[0]
        frame = self.stack[-1]
        if method == "induction":
            for c in list(frame.candidates):
                f = c.formula
                var = None
                if isinstance(f, Quant) and f.kind == "forall":
                    var, body = f.var, f.body
                else:
                    free = _free_vars(f)
                    if len(free) == 1:
                        var, body = next(iter(free)), f
                if var is None:
                    continue
                base = _subst_var(body, var, IntLit(0))
                step = Implies(body, _shift_var(body, var))
                self._add(frame, base, c.required, tag="ind-base", parent=c)
                self._add(frame, step, c.required, tag="ind-step", parent=c)

    def _on_claim(self, line: AnnotatedLine) -> None:
        if not self.stack or line.content is None:
            return
        if self.verified is not None and line.id not in self.verified:
            return
        frame = self.stack[-1]
        facts = [line.content]
        if line.function == "justified-claim":
            facts = [line.content.consequent]
        for f in facts:
            key = fact_key(canon_formula(f))
            extra = frozenset(self.gov[line.id]) - frame.base_gov
            for c in frame.candidates:
                if c.key() == key:
                    c.proofs.append(extra)

    def _fold_implications(self, upto: int) -> None:
        """Closed implications count as proved facts for the current frame."""
        if not self.stack:
            return
        frame = self.stack[-1]
        for imp in self.implications:
            if imp.source_lines[1] > upto or imp.source_lines[0] < frame.open_line:
                continue
            extra = frozenset(imp.governors) - frame.base_gov
            for concl in imp.conclusions:
                f = Implies(imp.assumption, concl)
                key = fact_key(canon_formula(f))
                for c in frame.candidates:
                    if c.key() == key and extra not in c.proofs:
                        c.proofs.append(extra)

    def _on_qed(self, line: AnnotatedLine) -> str:
        if not self.stack:
            self.messages.append(f"line {line.id}: unmatched qed")
            return "not-reached"
        self._fold_implications(line.id)
        frame = self.stack.pop()
        status = "not-reached"
        winner: Optional[Candidate] = None
        for c in frame.candidates:
            if c.tag in ("ind-base", "ind-step"):
                continue  # induction stages only count together
            if any(extra == c.required for extra in c.proofs):
                status = "reached"
                winner = c
                break
        if winner is None:
            # staged goals: both induction stages / both iff directions
            for c in frame.candidates:
                if isinstance(c.formula, Iff) \
                        and c.directions_done >= {"fwd", "bwd"}:
                    status, winner = "reached", c
                    break
                stages = [s for s in frame.candidates
                          if s.parent is c and s.tag in ("ind-base", "ind-step")]
                if stages and all(any(extra == s.required for extra in s.proofs)
                                  for s in stages) and len(stages) >= 2:
                    status, winner = "reached", c
                    break
        if winner is None:
            for c in frame.candidates:
                if any(extra > c.required for extra in c.proofs):
                    status = "reached-under-extra-assumptions"
                    self.messages.append(
                        f"line {line.id}: goal {render(c.formula)} was proved,"
                        " but under assumptions that are still open")
                    break
        if status == "reached" and frame.parent_candidate is not None:
            frame.parent_candidate.directions_done.add(frame.direction)
            # a discharged direction also counts as a proof of the implication
            f = frame.parent_candidate.formula
            if isinstance(f, Iff) and self.stack:
                direction = Implies(f.left, f.right) if frame.direction == "fwd" \
                    else Implies(f.right, f.left)
                key = fact_key(canon_formula(direction))
                for c in self.stack[-1].candidates:
                    if c.key() == key:
                        c.proofs.append(frozenset())
        if status == "not-reached" and frame.candidates:
            self.messages.append(
                f"line {line.id}: none of the goal candidates was reached")
        return status

    # -- driver -----------------------------------------------------------------

    def run(self) -> Tuple[str, List[str]]:
        if self.exercise is not None and not self.exercise.goal_check:
            return "bypassed", []
        for line in self.lines:
            fn = line.function
            if fn == "proof-start":
                self._on_proof_start(line)
            elif fn == "subgoal-forward":
                self._on_subgoal(line, "fwd")
            elif fn == "subgoal-backward":
                self._on_subgoal(line, "bwd")
            elif fn == "goal-announcement":
                self._on_announcement(line)
            elif fn in ("declaration", "naming", "definition"):
                self._on_declaration(line)
                if fn == "naming":
                    self._on_assumption(line)
            elif fn == "assumption":
                self._on_assumption(line)
            elif fn == "method":
                self._on_method(line)
            elif fn in ("claim", "justified-claim", "citation-claim"):
                self._on_claim(line)
            elif fn == "proof-end":
                self.statuses.append(self._on_qed(line))
        if not self.declared:
            return "no-goal-declared", self.messages
        final = self.statuses[-1] if self.statuses else "not-reached"
        return final, self.messages


def _free_vars(f: Formula) -> Set[str]:
    from .ast import free_symbols
    return set(free_symbols(f))


def _subst_var(f: Formula, var: str, value) -> Formula:
    from .ast import replace_in_formula
    return replace_in_formula(f, Var(var), value)


def _shift_var(f: Formula, var: str) -> Formula:
    from .ast import BinOp, replace_in_formula
    return replace_in_formula(f, Var(var), BinOp("+", Var(var), IntLit(1)))


def track_goals(lines: Sequence[AnnotatedLine],
                exercise: Optional[Exercise] = None,
                verified: Optional[Set[int]] = None) -> Tuple[str, List[str]]:
    return GoalTracker(lines, exercise, verified).run()
