"""Checking service: runs the full pipeline on a proof text and assembles
the feedback report; also provides hints and the exercise corpus."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .annotate import AnnotationError, annotate_text
from .ast import And, Formula, Iff, Implies, Not, Or, Quant, render
from .diagnose import diagnose
from .docmodel import (AnnotatedLine, Exercise, FeedbackReport, LineVerdict,
                       deserialize_exercise, validate_exercise)
from .engine import prove
from .fields import get_field, load_fallacy_rules
from .goals import track_goals
from .structure import StructureError
from .surface import language_check, preprocess
from .tasks import ProverTask, generate_tasks
from .typecheck import check_types


@dataclass
class CheckOptions:
    goal_check: Optional[bool] = None   # None: use the exercise's setting
    want_fallacies: bool = True
    tier: Optional[str] = None          # None: use the exercise's tier
    timeout: float = 10.0               # seconds of proving per request


@dataclass(frozen=True)
class Hint:
    kind: str   # "teacher" | "goal-form"
    text: str


class ExerciseNotFound(KeyError):
    pass


# --- corpus --------------------------------------------------------------------

def load_corpus(directory: Optional[Path] = None) -> Dict[str, Exercise]:
    """Exercise files (one JSON document each) from a directory, or the
    packaged corpus when none is given."""
    out: Dict[str, Exercise] = {}
    if directory is not None:
        paths = sorted(Path(directory).glob("*.json"))
        texts = [p.read_text() for p in paths]
    else:
        root = resources.files("proofcheck") / "corpus"
        texts = [p.read_text() for p in sorted(
            root.iterdir(), key=lambda p: p.name) if p.name.endswith(".json")]
    for text in texts:
        ex = deserialize_exercise(text)
        validate_exercise(ex)
        out[ex.id] = ex
    return out


# --- hints ---------------------------------------------------------------------

def _goal_form_hint(goal: Formula) -> str:
    if isinstance(goal, And):
        a, b = render(goal.parts[0]), render(goal.parts[1])
        return (f"To prove a conjunction, first prove {a} and then prove"
                f" {b}.")
    if isinstance(goal, Implies):
        return (f"To prove an implication, assume {render(goal.antecedent)}"
                f" and derive {render(goal.consequent)}.")
    if isinstance(goal, Iff):
        return ("To prove an equivalence, prove both directions: mark them"
                " with '=>' and '<=' and close each with qed.")
    if isinstance(goal, Quant) and goal.kind == "forall":
        return (f"Let {goal.var} be an arbitrary {goal.sort} and prove the"
                " statement for it.")
    if isinstance(goal, Quant) and goal.kind == "exists":
        return (f"Find a concrete witness for {goal.var} and verify the"
                " property for it.")
    if isinstance(goal, Not):
        return (f"To prove a negation, assume {render(goal.body)} and"
                " derive a contradiction.")
    if isinstance(goal, Or):
        return "To prove a disjunction it suffices to prove one part."
    return "Work forward from the assumptions toward the goal."


def hints(exercise: Exercise, current_goal: Optional[Formula] = None) -> List[Hint]:
    out = [Hint("teacher", h) for h in exercise.hints]
    goal = current_goal if current_goal is not None else exercise.form
    if goal is not None:
        out.append(Hint("goal-form", _goal_form_hint(goal)))
    return out


# --- checking ------------------------------------------------------------------

_NO_OBLIGATION = ("proof-start", "proof-end", "subgoal-forward",
                  "subgoal-backward", "method", "goal-announcement",
                  "declaration", "definition")


def check_text(exercise: Exercise, text: str,
               options: Optional[CheckOptions] = None) -> FeedbackReport:
    options = options or CheckOptions()
    pf = get_field(exercise.field)
    tier = options.tier or exercise.tier
    symbols = {n for n, _ in exercise.declarations}

    def bail(messages: List[str]) -> FeedbackReport:
        return FeedbackReport(exercise.id, False, messages, [],
                              "not-reached", [])

    errors = language_check(text, symbols=symbols, field=exercise.field)
    if errors:
        return bail([e.message() for e in errors])

    sentences = preprocess(text, symbols, exercise.field)
    try:
        lines = annotate_text(sentences, exercise.field)
    except AnnotationError as e:
        return bail([f"sentence not processable: {e}"])
    try:
        tasks = generate_tasks(lines, exercise)
    except StructureError as e:
        return bail([str(e)])

    type_issues = check_types(lines, exercise, exercise.field)
    issues_by_line: Dict[int, List[str]] = {}
    for issue in type_issues:
        issues_by_line.setdefault(issue.line_id, []).append(issue.message)

    rules = pf.rules_for(tier)
    fallacies = load_fallacy_rules() if options.want_fallacies else []

    verdicts: Dict[int, LineVerdict] = {}
    for l in lines:
        verdicts[l.id] = LineVerdict(
            line_id=l.id, text=l.text, function=l.function,
            verdict="skipped" if l.function in _NO_OBLIGATION or
            l.content is None else "verified",
            content=render(l.content) if l.content is not None else None)

    deadline = time.monotonic() + options.timeout
    for task in sorted(tasks, key=lambda t: t.line):
        v = verdicts[task.line]
        if v.verdict == "not-verified":
            continue  # an earlier obligation of the line already failed
        if time.monotonic() > deadline:
            v.verdict = "not-verified"
            v.messages.append("checking time budget exhausted")
            continue
        result = prove(task, rules)
        if result.verified:
            if v.verdict == "skipped":
                v.verdict = "verified"
            continue
        v.verdict = "not-verified"
        label = {"presupposition": "the presupposed existence",
                 "justification-premise": "the cited premise",
                 "link": "a chain step"}.get(task.kind, "this step")
        v.messages.append(
            f"could not verify {label}: {render(task.goal)}")
        if options.want_fallacies:
            for fid, msg in diagnose(task, rules, fallacies):
                v.fallacies.append(fid)
                v.messages.append(msg)
            if v.fallacies:
                v.verdict = "fallacy"

    for line_id, msgs in issues_by_line.items():
        v = verdicts[line_id]
        v.verdict = "type-error"
        v.messages.extend(msgs)

    verified_ids = {i for i, v in verdicts.items()
                    if v.verdict in ("verified", "skipped")}
    goal_check = exercise.goal_check if options.goal_check is None \
        else options.goal_check
    if not goal_check:
        status, goal_messages = "bypassed", []
    else:
        status, goal_messages = track_goals(lines, exercise, verified_ids)

    return FeedbackReport(
        exercise_id=exercise.id, language_ok=True, language_messages=[],
        lines=[verdicts[l.id] for l in lines],
        goal_status=status, goal_messages=goal_messages)
