"""Shared domain types: exercises, annotated proof lines, feedback
reports, and their JSON serialization."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from typing import Dict, List, Optional, Tuple

from .ast import Formula, render
from .formula_parser import parse_formula

# Line functions recognised by the annotator.
LINE_FUNCTIONS = (
    "assumption",        # supposition that opens a scope
    "declaration",       # introduces named objects of a sort
    "definition",        # names a constructed object (no proof obligation)
    "naming",            # introduces a witness with a property
    "claim",             # assertion to be verified
    "justified-claim",   # claim with an explicit premise ("Since A, B")
    "citation-claim",    # claim citing a named rule ("By ..., B")
    "goal-announcement", # "We show: ..."
    "method",            # announces a proof method
    "proof-start",       # "Proof:" or equivalent
    "proof-end",         # "qed"
    "subgoal-forward",   # "=>" of a biconditional proof
    "subgoal-backward",  # "<="
)

VERDICTS = ("verified", "not-verified", "fallacy", "type-error", "skipped")
GOAL_STATUSES = ("reached", "reached-under-extra-assumptions",
                 "not-reached", "bypassed", "no-goal-declared")


@dataclass
class AnnotatedLine:
    """The annotation tuple for one proof line."""

    id: int
    refs: Tuple[str, ...]          # symbols referenced, first-occurrence order
    names: Tuple[str, ...]         # objects introduced here (or, for method
                                   # lines, the announced method)
    status: str                    # "open" / "closed" / "" for scoping lines
    function: str                  # one of LINE_FUNCTIONS
    content: Optional[Formula]     # formalized content, if any
    text: str = ""                 # the original sentence
    paragraph: int = 0
    synthetic: bool = False        # inserted proof-start/-end markers
    chain: object = None           # ManipulationChain for step-by-step claims

    def to_json(self) -> dict:
        return {
            "id": self.id, "refs": list(self.refs), "names": list(self.names),
            "status": self.status, "function": self.function,
            "content": render(self.content) if self.content is not None else None,
            "text": self.text, "paragraph": self.paragraph,
            "synthetic": self.synthetic,
        }


@dataclass(frozen=True)
class Exercise:
    """A proof exercise: statement, formal goal, difficulty and trimmings."""

    id: str
    nat: str                        # natural-language statement
    form: Optional[Formula]         # formal goal (None: free-form exercise)
    field: str                      # playing-field name
    tier: str                       # difficulty tier within the field
    assumptions: Tuple[Formula, ...] = ()
    declarations: Tuple[Tuple[str, str], ...] = ()  # (name, sort)
    sample_proof: str = ""
    hints: Tuple[str, ...] = ()
    goal_check: bool = True         # exercises may bypass goal tracking

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "nat": self.nat,
            "form": render(self.form) if self.form is not None else None,
            "field": self.field,
            "tier": self.tier,
            "assumptions": [render(a) for a in self.assumptions],
            "declarations": [list(d) for d in self.declarations],
            "sample_proof": self.sample_proof,
            "hints": list(self.hints),
            "goal_check": self.goal_check,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Exercise":
        return cls(
            id=data["id"],
            nat=data["nat"],
            form=parse_formula(data["form"]) if data.get("form") else None,
            field=data["field"],
            tier=data["tier"],
            assumptions=tuple(parse_formula(a) for a in data.get("assumptions", [])),
            declarations=tuple((n, s) for n, s in data.get("declarations", [])),
            sample_proof=data.get("sample_proof", ""),
            hints=tuple(data.get("hints", ())),
            goal_check=data.get("goal_check", True),
        )


class ExerciseError(ValueError):
    pass


def validate_exercise(ex: Exercise) -> None:
    from .fields import get_field
    try:
        pf = get_field(ex.field)
    except KeyError as exc:
        raise ExerciseError(str(exc)) from exc
    if ex.tier not in pf.tier_chain:
        raise ExerciseError(f"tier {ex.tier!r} not defined for field {ex.field!r}")
    for name, sort in ex.declarations:
        if sort not in pf.sorts:
            raise ExerciseError(f"declared sort {sort!r} outside field {ex.field!r}")
    if ex.form is None and ex.goal_check:
        raise ExerciseError("goal checking needs a formal goal")


@dataclass
class LineVerdict:
    line_id: int
    text: str
    function: str
    verdict: str                   # one of VERDICTS
    messages: List[str] = field(default_factory=list)
    fallacies: List[str] = field(default_factory=list)
    content: Optional[str] = None

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class FeedbackReport:
    exercise_id: str
    language_ok: bool
    language_messages: List[str]
    lines: List[LineVerdict]
    goal_status: str
    goal_messages: List[str] = field(default_factory=list)

    @property
    def all_verified(self) -> bool:
        return all(v.verdict in ("verified", "skipped") for v in self.lines)

    def to_json(self) -> dict:
        return {
            "exercise_id": self.exercise_id,
            "language_ok": self.language_ok,
            "language_messages": list(self.language_messages),
            "lines": [v.to_json() for v in self.lines],
            "goal_status": self.goal_status,
            "goal_messages": list(self.goal_messages),
            "summary": {
                "all_verified": self.all_verified,
                "counts": {v: sum(1 for l in self.lines if l.verdict == v)
                           for v in VERDICTS},
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "FeedbackReport":
        return cls(
            exercise_id=data["exercise_id"],
            language_ok=data["language_ok"],
            language_messages=list(data["language_messages"]),
            lines=[LineVerdict(
                line_id=l["line_id"], text=l["text"], function=l["function"],
                verdict=l["verdict"], messages=list(l["messages"]),
                fallacies=list(l["fallacies"]), content=l.get("content"))
                for l in data["lines"]],
            goal_status=data["goal_status"],
            goal_messages=list(data.get("goal_messages", [])),
        )


def serialize_report(report: FeedbackReport) -> str:
    return json.dumps(report.to_json(), indent=2)


def deserialize_report(text: str) -> FeedbackReport:
    return FeedbackReport.from_json(json.loads(text))


def serialize_exercise(ex: Exercise) -> str:
    return json.dumps(ex.to_json(), indent=2)


def deserialize_exercise(text: str) -> Exercise:
    return Exercise.from_json(json.loads(text))
