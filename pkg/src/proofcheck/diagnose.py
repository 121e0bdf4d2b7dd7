"""Fallacy diagnosis: when a step fails, try to re-derive it with known
fallacies mixed into the rule set; fallacy rules on the resulting trace
explain why the step looked plausible."""
from __future__ import annotations

import re
from typing import Dict, Iterable, List, Optional, Tuple

from .ast import And, Formula, Implies, IntLit, eval_formula
from .engine import Engine, Rule, canon_formula, render, trace_for
from .formula_parser import SyntaxErr, parse_formula, parse_term


def diagnose(task, sound_rules: Iterable[Rule],
             fallacy_rules: Iterable[Rule],
             limits: Optional[dict] = None) -> List[Tuple[str, str]]:
    """Returns (fallacy-id, message) pairs explaining a failed step, or []
    when the goal stays out of reach even with the fallacies admitted."""
    fallacies: Dict[str, Rule] = {r.id: r for r in fallacy_rules}
    engine = Engine(list(sound_rules) + list(fallacies.values()), limits)
    engine.note_context(task.goal)
    engine.load(task.assumptions)
    engine.load(task.claims)
    engine.load([Implies(imp.assumption, c)
                 for imp in task.former for c in imp.conclusions])
    engine.load(task.declarations)
    engine.saturate()
    if not engine.holds(task.goal):
        return []

    goal = canon_formula(task.goal)
    parts = goal.parts if isinstance(goal, And) else (goal,)
    keys = []
    for part in parts:
        fact = engine.goal_key_fact(part)
        if fact is None:
            # proved by a goal solver or sub-derivation: nothing to attribute
            return []
        keys.append(fact.key)

    found: List[Tuple[str, str]] = []
    seen = set()
    for key in keys:
        trace = trace_for(engine.store, key)
        for rid in trace.rule_ids():
            if rid in fallacies and rid not in seen:
                seen.add(rid)
                found.append((rid, fallacies[rid].message))
    return found


class BadCounterexample(ValueError):
    pass


def _parse_value(raw: str):
    if re.fullmatch(r"-?\d+", raw):
        return IntLit(int(raw))
    try:
        return parse_formula(raw)
    except SyntaxErr:
        return parse_term(raw)


def check_counterexample(rule: Rule) -> bool:
    """Machine-check a fallacy rule's stored counterexample: all premises
    must evaluate true and the conclusion false under the instantiation."""
    if not rule.counterexample:
        raise BadCounterexample(f"{rule.id} has no counterexample")
    env = {}
    fenv = {}
    for name, raw in rule.counterexample:
        value = _parse_value(raw)
        if isinstance(value, (IntLit,)) or not isinstance(value, Formula):
            env[name] = value
        else:
            fenv[name] = value
    from .engine import instantiate as _inst

    def instantiate(pattern):
        return _inst(pattern, env, fenv)

    assignment: Dict[str, int] = {
        n: v.value for n, v in env.items() if isinstance(v, IntLit)}
    for p in rule.premises:
        inst = instantiate(p)
        if not eval_formula(inst, assignment):
            raise BadCounterexample(
                f"{rule.id}: premise {render(inst)} is false under the"
                " counterexample")
    inst = instantiate(rule.conclusion)
    if eval_formula(inst, assignment):
        raise BadCounterexample(
            f"{rule.id}: conclusion {render(inst)} is not falsified")
    return True
