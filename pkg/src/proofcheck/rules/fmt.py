"""Text format for inference-rule packs.

Rule packs ship as ``.rules`` files so instructors can inspect and extend
them without touching code.  The format is line-based::

    # comment (blank lines and comments are ignored)
    rule <rule-id>
    premise <formula pattern>
    guard <name>(<arg>, ...)
    conclude <formula pattern>
    solver <solver-name>
    tier <tier-name> [<tier-name> ...]
    sorts <var>:<sort> [<var>:<sort> ...]
    message <free text>
    counterexample <var>=<value> [, <var>=<value> ...]
    end

Within a rule block every directive is optional except ``tier``; a rule
carries either ``conclude`` (forward rule) or ``solver`` (goal rule).
Formula patterns use the ordinary formal syntax plus ``?X`` pattern
variables: in term position ``?X`` stands for an arbitrary term, a bare
``?P`` at formula level stands for an arbitrary formula.  Guard arguments
are pattern-variable names or integer literals.  ``tier`` names the
lowest difficulty tier containing the rule (higher tiers of the same
playing field include it too); the pseudo-tier ``all`` puts a rule in
every tier.  ``sorts`` declares variable sorts for the finite-model
soundness check of geometry rules.  ``counterexample`` documents, for a
fallacy rule, an instantiation making all premises true and the
conclusion false; values are integers or formulas (for ``?P``-style
variables).

``load_pack_text``/``dump_rules`` round-trip: parsing the dump of a rule
list yields an equal list.
"""
from __future__ import annotations

import importlib.resources
import re
from typing import List, Optional

from ..ast import render
from ..engine import Guard, Rule
from ..formula_parser import SyntaxErr, parse_formula


class RuleFormatError(ValueError):
    pass


_GUARD_RE = re.compile(r"^([a-z_][a-z0-9_]*)\((.*)\)$")


def _parse_guard(text: str) -> Guard:
    m = _GUARD_RE.match(text.strip())
    if not m:
        raise RuleFormatError(f"malformed guard: {text!r}")
    name, arglist = m.groups()
    args = []
    for raw in filter(None, (a.strip() for a in arglist.split(","))):
        args.append(int(raw) if re.fullmatch(r"-?\d+", raw) else raw)
    return Guard(name, tuple(args))


def _parse_counterexample(text: str) -> tuple:
    out = []
    for piece in text.split(","):
        if "=" not in piece:
            raise RuleFormatError(f"malformed counterexample entry: {piece!r}")
        name, value = piece.split("=", 1)
        out.append((name.strip(), value.strip()))
    return tuple(out)


def load_pack_text(text: str, source: str = "<string>") -> List[Rule]:
    rules: List[Rule] = []
    current: Optional[dict] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        where = f"{source}:{lineno}"
        if word == "rule":
            if current is not None:
                raise RuleFormatError(f"{where}: nested rule block")
            current = {"id": rest, "premises": [], "guards": [], "tiers": [],
                       "conclusion": None, "solver": None, "message": "",
                       "sorts": [], "counterexample": ()}
            continue
        if current is None:
            raise RuleFormatError(f"{where}: directive outside a rule block")
        try:
            if word == "premise":
                current["premises"].append(parse_formula(rest))
            elif word == "conclude":
                current["conclusion"] = parse_formula(rest)
            elif word == "guard":
                current["guards"].append(_parse_guard(rest))
            elif word == "solver":
                current["solver"] = rest
            elif word == "tier":
                current["tiers"].extend(rest.split())
            elif word == "message":
                current["message"] = rest
            elif word == "sorts":
                for item in rest.split():
                    var, _, sort = item.partition(":")
                    current["sorts"].append((var, sort))
            elif word == "counterexample":
                current["counterexample"] = _parse_counterexample(rest)
            elif word == "end":
                if not current["tiers"]:
                    raise RuleFormatError(f"rule {current['id']} lacks a tier")
                if (current["conclusion"] is None) == (current["solver"] is None):
                    raise RuleFormatError(
                        f"rule {current['id']} needs exactly one of conclude/solver")
                rules.append(Rule(
                    id=current["id"],
                    premises=tuple(current["premises"]),
                    conclusion=current["conclusion"],
                    guards=tuple(current["guards"]),
                    tiers=tuple(current["tiers"]),
                    message=current["message"],
                    solver=current["solver"],
                    var_sorts=tuple(current["sorts"]),
                    counterexample=current["counterexample"],
                ))
                current = None
            else:
                raise RuleFormatError(f"{where}: unknown directive {word!r}")
        except SyntaxErr as exc:
            raise RuleFormatError(f"{where}: {exc}") from exc
    if current is not None:
        raise RuleFormatError(f"{source}: unterminated rule {current['id']}")
    ids = [r.id for r in rules]
    dupes = {i for i in ids if ids.count(i) > 1}
    if dupes:
        raise RuleFormatError(f"{source}: duplicate rule ids {sorted(dupes)}")
    return rules


def dump_rules(rules: List[Rule]) -> str:
    lines = []
    for r in rules:
        lines.append(f"rule {r.id}")
        for p in r.premises:
            lines.append(f"premise {render(p)}")
        for g in r.guards:
            args = ", ".join(str(a) for a in g.args)
            lines.append(f"guard {g.name}({args})")
        if r.conclusion is not None:
            lines.append(f"conclude {render(r.conclusion)}")
        if r.solver is not None:
            lines.append(f"solver {r.solver}")
        lines.append("tier " + " ".join(r.tiers))
        if r.var_sorts:
            lines.append("sorts " + " ".join(f"{v}:{s}" for v, s in r.var_sorts))
        if r.message:
            lines.append(f"message {r.message}")
        if r.counterexample:
            lines.append("counterexample "
                         + ", ".join(f"{n}={v}" for n, v in r.counterexample))
        lines.append("end")
        lines.append("")
    return "\n".join(lines)


def pack_path(name: str):
    return importlib.resources.files("proofcheck.rules") / "packs" / f"{name}.rules"


def load_pack(name: str) -> List[Rule]:
    return load_pack_text(pack_path(name).read_text(), source=f"{name}.rules")
