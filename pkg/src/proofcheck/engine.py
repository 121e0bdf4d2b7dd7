"""Bounded forward-chaining saturation engine with pluggable rule sets.

Facts are canonically normalized formulas; rules are premise/conclusion
patterns over term variables (``TVar``) and formula variables (``FVar``)
with named guard conditions.  A bounded equality-rewrite pass replaces
subterms using derived equalities so that, e.g., facts about l(d,d1)
transfer to l(l,d) once the two lines are identified.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .ast import (And, App, Atom, BinOp, FALSUM, FVar, Falsum, Formula, Iff,
                  Implies, IntLit, Neg, Not, NotGround, Or, Quant, Sym,
                  SYMMETRIC_PREDS, Term, TVar, UNORDERED_CONSTRUCTORS, Var,
                  and_parts, eval_atom, formula_terms, render, render_term,
                  replace_in_formula, subst, subterms)
from . import poly as P

DEFAULT_LIMITS = {"max_facts": 20000, "max_rounds": 12}
REWRITE_DEPTH = 2


# ---------------------------------------------------------------------------
# Canonical forms


@lru_cache(maxsize=200_000)
def canon_term(t: Term) -> Term:
    try:
        return P.poly_to_term(P.poly_normalize(t))
    except (P.NotPolynomial, P.DegreeBoundExceeded):
        pass
    if isinstance(t, App):
        args = tuple(canon_term(a) for a in t.args)
        if t.func in UNORDERED_CONSTRUCTORS:
            args = tuple(sorted(args, key=render_term))
        return App(t.func, args)
    if isinstance(t, BinOp):
        return BinOp(t.op, canon_term(t.left), canon_term(t.right))
    if isinstance(t, Neg):
        return Neg(canon_term(t.arg))
    return t


@lru_cache(maxsize=200_000)
def canon_formula(f: Formula, qdepth: int = 0) -> Formula:
    if isinstance(f, Atom):
        args = tuple(canon_term(a) for a in f.args)
        if f.pred in SYMMETRIC_PREDS and len(args) == 2:
            args = tuple(sorted(args, key=render_term))
        return Atom(f.pred, args)
    if isinstance(f, And):
        parts = sorted((canon_formula(p, qdepth) for p in f.parts), key=render)
        return And(tuple(parts))
    if isinstance(f, Or):
        parts = sorted((canon_formula(p, qdepth) for p in f.parts), key=render)
        return Or(tuple(parts))
    if isinstance(f, Not):
        return Not(canon_formula(f.body, qdepth))
    if isinstance(f, Implies):
        return Implies(canon_formula(f.antecedent, qdepth), canon_formula(f.consequent, qdepth))
    if isinstance(f, Iff):
        left, right = canon_formula(f.left, qdepth), canon_formula(f.right, qdepth)
        if render(right) < render(left):
            left, right = right, left
        return Iff(left, right)
    if isinstance(f, Quant):
        fresh = f"_q{qdepth}"
        body = subst(f.body, {f.var: Var(fresh)})
        return Quant(f.kind, fresh, f.sort, canon_formula(body, qdepth + 1))
    return f


@lru_cache(maxsize=200_000)
def fact_key(f: Formula) -> str:
    return render(canon_formula(f))


def normalize(f: Formula) -> List[Formula]:
    """Split a formula into the facts it contributes to the store."""
    if isinstance(f, And):
        out: List[Formula] = []
        for p in f.parts:
            out.extend(normalize(p))
        return out
    if isinstance(f, Iff):
        return (normalize(Implies(f.left, f.right))
                + normalize(Implies(f.right, f.left)))
    if isinstance(f, Not) and isinstance(f.body, Not):
        return normalize(f.body.body)
    if isinstance(f, Atom):
        c = canon_formula(f)
        # a trivially-true equality contributes nothing
        if c.pred == "eq" and c.args[0] == c.args[1]:
            return []
        return [c]
    return [canon_formula(f)]


# ---------------------------------------------------------------------------
# Rules and guards

GuardFn = Callable[["Engine", dict, tuple], Iterable[dict]]
_GUARDS: Dict[str, GuardFn] = {}


def guard(name: str):
    def deco(fn):
        _GUARDS[name] = fn
        return fn
    return deco


@dataclass(frozen=True)
class Guard:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Rule:
    id: str
    premises: tuple
    conclusion: Optional[Formula]
    guards: tuple = ()
    tiers: tuple = ()          # names of difficulty tiers that include the rule
    message: str = ""          # student-facing text (fallacy rules)
    solver: Optional[str] = None  # goal-solver rules carry a solver name
    var_sorts: tuple = ()      # ((name, sort), ...) for model-based checking
    counterexample: tuple = ()  # ((var, int), ...) witnessing unsoundness

    @property
    def is_goal_rule(self) -> bool:
        return self.solver is not None


# ---------------------------------------------------------------------------
# Matching


def head_of(f: Formula):
    if isinstance(f, Atom):
        return ("atom", f.pred)
    if isinstance(f, Implies):
        return ("implies",)
    if isinstance(f, Not):
        return ("not",)
    if isinstance(f, Quant):
        return ("quant", f.kind)
    if isinstance(f, Or):
        return ("or",)
    if isinstance(f, Falsum):
        return ("falsum",)
    if isinstance(f, Iff):
        return ("iff",)
    return ("other",)


def match_term_all(pat: Term, t: Term, env: dict):
    """Yield every binding extension matching the pattern against a term.
    Unordered constructors (segments, lines) admit both argument orders,
    since stored facts keep their arguments canonically sorted."""
    if isinstance(pat, TVar):
        bound = env.get(pat.name)
        if bound is None:
            env = dict(env)
            env[pat.name] = t
            yield env
        elif bound == t:
            yield env
        return
    if isinstance(pat, (Var, IntLit, Sym)):
        if pat == t:
            yield env
        return
    if isinstance(pat, Neg) and isinstance(t, Neg):
        yield from match_term_all(pat.arg, t.arg, env)
        return
    if isinstance(pat, BinOp) and isinstance(t, BinOp) and pat.op == t.op:
        for e1 in match_term_all(pat.left, t.left, env):
            yield from match_term_all(pat.right, t.right, e1)
        return
    if isinstance(pat, App) and isinstance(t, App) and pat.func == t.func \
            and len(pat.args) == len(t.args):
        orders = [t.args]
        if t.func in UNORDERED_CONSTRUCTORS and len(t.args) == 2 \
                and t.args[0] != t.args[1]:
            orders.append((t.args[1], t.args[0]))
        for args in orders:
            states = [env]
            for pa, ta in zip(pat.args, args):
                states = [e2 for e in states for e2 in match_term_all(pa, ta, e)]
                if not states:
                    break
            yield from states
        return


def match_term(pat: Term, t: Term, env: dict) -> Optional[dict]:
    return next(match_term_all(pat, t, env), None)


def match_formula(pat: Formula, f: Formula, env: dict, fenv: dict):
    """Yield (env, fenv) bindings matching the pattern against a fact."""
    if isinstance(pat, FVar):
        bound = fenv.get(pat.name)
        if bound is None:
            fenv = dict(fenv)
            fenv[pat.name] = f
            yield env, fenv
        elif fact_key(bound) == fact_key(f):
            yield env, fenv
        return
    if isinstance(pat, Atom) and isinstance(f, Atom) and pat.pred == f.pred \
            and len(pat.args) == len(f.args):
        orders = [f.args]
        if pat.pred in SYMMETRIC_PREDS and len(f.args) == 2:
            orders.append((f.args[1], f.args[0]))
        for args in orders:
            states = [env]
            for pa, ta in zip(pat.args, args):
                states = [e2 for e in states for e2 in match_term_all(pa, ta, e)]
                if not states:
                    break
            for e in states:
                yield e, fenv
        return
    if isinstance(pat, Implies) and isinstance(f, Implies):
        for e1, fe1 in match_formula(pat.antecedent, f.antecedent, env, fenv):
            yield from match_formula(pat.consequent, f.consequent, e1, fe1)
        return
    if isinstance(pat, Not) and isinstance(f, Not):
        yield from match_formula(pat.body, f.body, env, fenv)
        return
    if isinstance(pat, Iff) and isinstance(f, Iff):
        for l, r in ((f.left, f.right), (f.right, f.left)):
            for e1, fe1 in match_formula(pat.left, l, env, fenv):
                yield from match_formula(pat.right, r, e1, fe1)
        return
    if isinstance(pat, And) and isinstance(f, And) and len(pat.parts) == len(f.parts):
        for perm in itertools.permutations(f.parts):
            states = [(env, fenv)]
            for pp, fp in zip(pat.parts, perm):
                states = [s for e0, fe0 in states for s in match_formula(pp, fp, e0, fe0)]
                if not states:
                    break
            yield from states
        return
    if isinstance(pat, Or) and isinstance(f, Or) and len(pat.parts) == len(f.parts):
        for perm in itertools.permutations(f.parts):
            states = [(env, fenv)]
            for pp, fp in zip(pat.parts, perm):
                states = [s for e0, fe0 in states for s in match_formula(pp, fp, e0, fe0)]
                if not states:
                    break
            yield from states
        return
    if isinstance(pat, Quant) and isinstance(f, Quant) \
            and pat.kind == f.kind and pat.sort == f.sort:
        body = subst(f.body, {f.var: Var(pat.var)})
        yield from match_formula(pat.body, body, env, fenv)
        return
    if isinstance(pat, Falsum) and isinstance(f, Falsum):
        yield env, fenv


def instantiate(pat: Formula, env: dict, fenv: dict) -> Formula:
    return subst(pat, env, fenv, pattern=True)


# ---------------------------------------------------------------------------
# Fact store


@dataclass
class Fact:
    formula: Formula
    key: str
    rule_id: Optional[str] = None
    premises: tuple = ()
    rewrite_depth: int = 0


class FactStore:
    def __init__(self):
        self.facts: Dict[str, Fact] = {}
        self.by_head: Dict[tuple, List[Fact]] = {}

    def add(self, f: Formula, rule_id=None, premises=(), rewrite_depth=0) -> Optional[Fact]:
        c = canon_formula(f)
        key = render(c)
        if key in self.facts:
            return None
        fact = Fact(c, key, rule_id, premises, rewrite_depth)
        self.facts[key] = fact
        self.by_head.setdefault(head_of(c), []).append(fact)
        return fact

    def __contains__(self, key: str) -> bool:
        return key in self.facts

    def __len__(self):
        return len(self.facts)

    def candidates(self, pat: Formula) -> List[Fact]:
        if isinstance(pat, FVar):
            return [f for fs in self.by_head.values() for f in fs]
        return self.by_head.get(head_of(pat), [])

    def atoms(self) -> List[Fact]:
        return [f for (h, *_), fs in self.by_head.items() if h == "atom" for f in fs]

    def equalities(self) -> List[Fact]:
        return self.by_head.get(("atom", "eq"), [])

    def all_terms(self):
        """Every distinct term occurring in stored atoms (context universe)."""
        seen = {}
        for fact in self.atoms():
            for arg in fact.formula.args:
                for s in subterms(arg):
                    if not isinstance(s, Sym):
                        seen.setdefault(render_term(s), s)
        return list(seen.values())


# ---------------------------------------------------------------------------
# Proof traces


@dataclass
class ProofTrace:
    steps: list  # (key, rule_id, premise keys)

    def rule_ids(self):
        return [r for _, r, _ in self.steps if r]


def trace_for(store: FactStore, key: str) -> ProofTrace:
    steps = []
    seen = set()

    def walk(k):
        if k in seen or k not in store.facts:
            return
        seen.add(k)
        f = store.facts[k]
        for p in f.premises:
            walk(p)
        steps.append((k, f.rule_id, f.premises))

    walk(key)
    return ProofTrace(steps)


# ---------------------------------------------------------------------------
# Engine


@dataclass
class Verdict:
    verified: bool
    trace: Optional[ProofTrace] = None
    stats: dict = field(default_factory=dict)


class Engine:
    def __init__(self, rules: Iterable[Rule], limits: Optional[dict] = None):
        rules = sorted(rules, key=lambda r: r.id)
        self.forward_rules = [r for r in rules if not r.is_goal_rule]
        self.goal_rules = [r for r in rules if r.is_goal_rule]
        self.limits = dict(DEFAULT_LIMITS)
        if limits:
            self.limits.update(limits)
        self.store = FactStore()
        self.limit_exceeded = False
        self.context_terms: list = []
        self.frozen_universe: Optional[list] = None

    # -- loading ----------------------------------------------------------
    def load(self, formulas: Iterable[Formula], rule_id=None):
        for f in formulas:
            for piece in normalize(f):
                self.store.add(piece, rule_id=rule_id)

    def note_context(self, f: Formula):
        """Record goal terms so enumeration guards can see them."""
        for t in formula_terms(f):
            for s in subterms(t):
                if not isinstance(s, Sym):
                    self.context_terms.append(canon_term(s))

    def universe(self):
        if self.frozen_universe is not None:
            return self.frozen_universe
        seen = {}
        for t in self.store.all_terms() + self.context_terms:
            seen.setdefault(render_term(t), t)
        return list(seen.values())

    def freeze_universe(self):
        """Pin enumeration guards to the terms present before saturation,
        so enumeration cannot feed on its own output."""
        self.frozen_universe = None
        self.frozen_universe = self.universe()
        self.relevant_terms = {render_term(t) for t in self.frozen_universe}

    def _admit(self, f: Formula) -> bool:
        """Reject derived facts that grew beyond useful size, and bound
        saturation to relevant arithmetic: a derived fact may only mention
        polynomial terms already present in the task or its goal.  Without
        this, term-growing rules (successors, products, existential
        witnesses) compound without limit."""
        if len(render(f)) > self.limits.get("max_fact_size", 100):
            return False
        relevant = getattr(self, "relevant_terms", None)
        if relevant is None:
            return True
        for t in formula_terms(f):
            if isinstance(t, (Var, Sym)):
                continue
            if any(isinstance(s, Var) and s.name.startswith("_q")
                   for s in subterms(t)):
                continue  # quantified witness shapes are always admissible
            if isinstance(t, App):
                # constructed objects may sit at most one application above
                # the frozen universe, else rewriting breeds nested terms
                if render_term(t) in relevant:
                    continue
                if all(isinstance(a, Var) or render_term(a) in relevant
                       for a in t.args):
                    continue
                return False
            if render_term(t) not in relevant:
                return False
        return True

    # -- saturation -------------------------------------------------------
    def saturate(self):
        """Semi-naive rounds: after the first pass, a rule fires only on
        premise combinations involving at least one fact of the previous
        round."""
        if self.frozen_universe is None:
            self.freeze_universe()
        new_keys = set(self.store.facts.keys())
        first = True
        for _ in range(self.limits["max_rounds"]):
            if len(self.store) >= self.limits["max_facts"]:
                self.limit_exceeded = True
                return
            added = 0
            snapshot_heads = {h: list(fs) for h, fs in self.store.by_head.items()}
            before = set(self.store.facts.keys())
            for rule in self.forward_rules:
                if not rule.premises and not first:
                    continue  # guard-only rules see only the frozen universe
                added += self._apply_rule(rule, snapshot_heads, new_keys)
                if len(self.store) >= self.limits["max_facts"]:
                    self.limit_exceeded = True
                    return
            added += self._rewrite_pass(new_keys)
            new_keys = set(self.store.facts.keys()) - before
            first = False
            if not added:
                return
        self.limit_exceeded = True

    def _candidates(self, snapshot, pat):
        if isinstance(pat, FVar):
            return [f for fs in snapshot.values() for f in fs]
        return snapshot.get(head_of(pat), [])

    def _apply_rule(self, rule: Rule, snapshot, new_keys=None) -> int:
        added = 0
        prems = rule.premises
        if not prems:
            final_states = [({}, {}, ())]
        else:
            # one pass per pivot position: the pivot premise takes a new
            # fact, earlier premises old facts, later premises any fact
            final_states = []
            for pivot in range(len(prems)):
                states = [({}, {}, ())]
                for i, prem in enumerate(prems):
                    cand = self._candidates(snapshot, prem)
                    if new_keys is not None:
                        if i == pivot:
                            cand = [f for f in cand if f.key in new_keys]
                        elif i < pivot:
                            cand = [f for f in cand if f.key not in new_keys]
                    new_states = []
                    for env, fenv, used in states:
                        for fact in cand:
                            for e2, fe2 in match_formula(prem, fact.formula,
                                                         env, fenv):
                                new_states.append((e2, fe2, used + (fact.key,)))
                    states = new_states
                    if not states:
                        break
                final_states.extend(states)
        for env, fenv, used in final_states:
            for env2 in self._run_guards(rule.guards, env):
                try:
                    conc = instantiate(rule.conclusion, env2, fenv)
                except KeyError:
                    continue
                for piece in normalize(conc):
                    if self._admit(piece) and self.store.add(
                            piece, rule_id=rule.id, premises=used):
                        added += 1
        return added

    def _run_guards(self, guards, env):
        states = [env]
        for g in guards:
            fn = _GUARDS[g.name]
            states = [e2 for e in states for e2 in fn(self, e, g.args)]
            if not states:
                return []
        return states

    def _rewrite_pass(self, new_keys=None) -> int:
        added = 0
        eqs = []
        for eq in self.store.equalities():
            a, b = eq.formula.args
            if a != b:
                eqs.append((a, b, eq.key))
                eqs.append((b, a, eq.key))
        for fact in list(self.store.atoms()):
            if fact.rewrite_depth >= REWRITE_DEPTH:
                continue
            for old, new, eqkey in eqs:
                if fact.key == eqkey:
                    continue
                if new_keys is not None and fact.key not in new_keys \
                        and eqkey not in new_keys:
                    continue  # both parts already seen: rewrite done earlier
                replaced = replace_in_formula(fact.formula, old, new)
                if replaced != fact.formula:
                    for piece in normalize(replaced):
                        if self._admit(piece) and self.store.add(
                                piece, rule_id="core.rewrite",
                                          premises=(fact.key, eqkey),
                                          rewrite_depth=fact.rewrite_depth + 1):
                            added += 1
        return added

    # -- goal checking ----------------------------------------------------
    def rewritten_variants(self, f: Formula, depth: int = REWRITE_DEPTH):
        variants = {fact_key(f): f}
        frontier = [f]
        eqs = []
        for eq in self.store.equalities():
            a, b = eq.formula.args
            if a != b:
                eqs.append((a, b))
                eqs.append((b, a))
        for _ in range(depth):
            new_frontier = []
            for g in frontier:
                for old, new in eqs:
                    h = replace_in_formula(g, old, new)
                    k = fact_key(h)
                    if k not in variants:
                        variants[k] = canon_formula(h)
                        new_frontier.append(h)
            frontier = new_frontier
            if not frontier:
                break
        return list(variants.values())

    def holds(self, goal: Formula, depth: int = 2) -> bool:
        if ("falsum",) in self.store.by_head:
            return True
        goal = canon_formula(goal)
        if isinstance(goal, And):
            return all(self.holds(p, depth) for p in goal.parts)
        if isinstance(goal, Iff):
            return (self.holds(Implies(goal.left, goal.right), depth)
                    and self.holds(Implies(goal.right, goal.left), depth))
        if render(goal) in self.store:
            return True
        if isinstance(goal, Implies):
            if depth <= 0:
                return False
            sub = Engine(self.forward_rules + self.goal_rules, self.limits)
            for fact in self.store.facts.values():
                sub.store.add(fact.formula)
            sub.context_terms = list(self.context_terms)
            sub.note_context(goal)
            sub.load([goal.antecedent])
            sub.saturate()
            return sub.holds(goal.consequent, depth - 1)
        if isinstance(goal, Quant) and goal.kind == "exists":
            for variant in self.rewritten_variants(goal):
                if render(variant) in self.store:
                    return True
            for witness in self.universe():
                body = subst(goal.body, {goal.var: witness})
                if all(self._conjunct_holds(p) for p in and_parts(body)):
                    return True
            return False
        if isinstance(goal, (Atom, Not)):
            for variant in self.rewritten_variants(goal):
                if render(variant) in self.store:
                    return True
                if isinstance(variant, Atom):
                    for rule in self.goal_rules:
                        if _SOLVERS[rule.solver](self, variant):
                            return True
            return False
        if isinstance(goal, Falsum):
            return False
        return False

    def _conjunct_holds(self, f: Formula) -> bool:
        """Cheap membership/ground check used during witness search."""
        for variant in self.rewritten_variants(f):
            if render(variant) in self.store:
                return True
        if isinstance(f, Atom):
            try:
                return eval_atom(canon_formula(f))
            except NotGround:
                return False
        return False

    def goal_key_fact(self, goal: Formula) -> Optional[Fact]:
        goal = canon_formula(goal)
        if render(goal) in self.store:
            return self.store.facts[render(goal)]
        for variant in self.rewritten_variants(goal):
            if render(variant) in self.store:
                return self.store.facts[render(variant)]
        return None


# Goal solver registry: name -> fn(engine, atom) -> bool
_SOLVERS: Dict[str, Callable[[Engine, Atom], bool]] = {}


def solver(name: str):
    def deco(fn):
        _SOLVERS[name] = fn
        return fn
    return deco


def prove(task, rules: Iterable[Rule], limits: Optional[dict] = None) -> Verdict:
    """Decide a prover task: load, normalize, saturate, match the goal."""
    engine = Engine(rules, limits)
    engine.note_context(task.goal)
    engine.load(task.assumptions)
    engine.load(task.claims)
    engine.load([Implies(imp.assumption, c) for imp in task.former for c in imp.conclusions])
    engine.load(task.declarations)
    engine.saturate()
    if engine.holds(task.goal):
        fact = engine.goal_key_fact(task.goal)
        trace = trace_for(engine.store, fact.key) if fact else ProofTrace([])
        return Verdict(True, trace=trace,
                       stats={"facts": len(engine.store),
                              "limit_exceeded": engine.limit_exceeded})
    return Verdict(False, stats={"facts": len(engine.store),
                                 "limit_exceeded": engine.limit_exceeded})
