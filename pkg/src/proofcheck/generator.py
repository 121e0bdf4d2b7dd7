"""Seeded exercise generator.

Each family draws parameters from a deterministic RNG, validates the
resulting statement against a numeric oracle (rejection sampling with a
hard cap), and emits a ready-to-check exercise.  The parity families also
carry a template solution in ``sample_proof`` that the checker verifies
end to end.
"""
from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from .docmodel import Exercise, validate_exercise
from .formula_parser import parse_formula

REJECTION_CAP = 10_000


class GenerationError(ValueError):
    pass


def _poly_str(a: int, b: int, c: int, var: str = "n") -> str:
    """Render a*var^2 + b*var + c without zero terms or unit coefficients."""
    parts: List[str] = []
    if a:
        parts.append(f"{var}^2" if a == 1 else f"{a}*{var}^2")
    if b:
        parts.append(var if b == 1 else f"{b}*{var}")
    if c or not parts:
        parts.append(str(c))
    return "+".join(parts)


def _poly_eval(a: int, b: int, c: int, n: int) -> int:
    return a * n * n + b * n + c


def _oracle(condition: bool, family: str) -> None:
    if not condition:
        raise GenerationError(f"{family}: generated statement fails its oracle")


# --- families ------------------------------------------------------------------


def _gen_parity_direct(rng: random.Random, seed: int, bounds: Dict) -> Exercise:
    cmax = bounds.get("max_coeff", 5)
    for _ in range(REJECTION_CAP):
        a, b = rng.randint(0, cmax), rng.randint(0, cmax)
        c = rng.randint(0, 9)
        if a == 0 and b == 0:
            continue
        residue = rng.choice((0, 1))
        assumed = "even" if residue == 0 else "odd"
        goal = "even" if _poly_eval(a, b, c, residue) % 2 == 0 else "odd"
        for t in range(6):
            _oracle(_poly_eval(a, b, c, 2 * t + residue) % 2
                    == (0 if goal == "even" else 1), "parity-direct")
        f = _poly_str(a, b, c)
        proof = (f"We show: {goal}({f}).\n\nProof:\nThen {f} is {goal}.\nqed\n")
        return Exercise(
            id=f"gen-parity-direct-{seed}",
            nat=f"Suppose n is {assumed}. Show that {f} is {goal}.",
            form=parse_formula(f"{goal}({f})"),
            field="number-theory", tier="parity-basic",
            assumptions=(parse_formula(f"{assumed}(n)"),),
            declarations=(("n", "natural"),),
            sample_proof=proof,
            hints=(f"The parity of {f} only depends on the parity of n.",),
        )
    raise GenerationError("parity-direct: rejection cap exceeded")


def _gen_parity_cases(rng: random.Random, seed: int, bounds: Dict) -> Exercise:
    cmax = bounds.get("max_coeff", 5)
    for _ in range(REJECTION_CAP):
        a, b = rng.randint(0, cmax), rng.randint(0, cmax)
        c = rng.randint(0, 9)
        if a == 0 and b == 0:
            continue
        if _poly_eval(a, b, c, 0) % 2 or _poly_eval(a, b, c, 1) % 2:
            continue
        for n in range(10):
            _oracle(_poly_eval(a, b, c, n) % 2 == 0, "parity-cases")
        f = _poly_str(a, b, c)
        proof = (
            f"We show: even({f}).\n\nProof:\nBy case distinction.\n\n"
            f"Suppose that n is even.\nThen {f} is even.\n\n"
            f"Suppose that n is odd.\nThen {f} is even.\n\n"
            f"Hence {f} is even.\nqed\n")
        return Exercise(
            id=f"gen-parity-cases-{seed}",
            nat=f"Show that {f} is even for every natural number n.",
            form=parse_formula(f"even({f})"),
            field="number-theory", tier="parity-basic",
            assumptions=(), declarations=(("n", "natural"),),
            sample_proof=proof,
            hints=("Distinguish the cases that n is even and that n is odd.",),
        )
    raise GenerationError("parity-cases: rejection cap exceeded")


def _gen_parity_equivalence(rng: random.Random, seed: int,
                            bounds: Dict) -> Exercise:
    cmax = bounds.get("max_coeff", 5)
    for _ in range(REJECTION_CAP):
        a, b = rng.randint(0, cmax), rng.randint(0, cmax)
        c = rng.randint(0, 9)
        if a == 0 and b == 0:
            continue
        for n in range(10):
            v = _poly_eval(a, b, c, n)
            _oracle((v % 2 == 0) == ((v + 1) % 2 == 1), "parity-equivalence")
        f = _poly_str(a, b, c)
        g = _poly_str(a, b, c + 1)
        proof = (
            f"We show: even({f}) <-> odd({g}).\n\nProof:\n=>\n\n"
            f"Suppose that {f} is even.\nThen {g} is odd.\nqed\n\n<=\n\n"
            f"Suppose that {g} is odd.\nThen {f} is even.\nqed\nqed\n")
        return Exercise(
            id=f"gen-parity-equivalence-{seed}",
            nat=f"Show that {f} is even exactly when {g} is odd.",
            form=parse_formula(f"even({f}) <-> odd({g})"),
            field="number-theory", tier="parity-basic",
            assumptions=(), declarations=(("n", "natural"),),
            sample_proof=proof,
            hints=("Prove both directions; successors flip parity.",),
        )
    raise GenerationError("parity-equivalence: rejection cap exceeded")


def _gen_divisibility_scale(rng: random.Random, seed: int,
                            bounds: Dict) -> Exercise:
    dmax = bounds.get("max_divisor", 9)
    d = rng.randint(2, dmax)
    k = rng.randint(2, 9)
    for t in range(10):
        _oracle((k * d * t) % d == 0, "divisibility-scale")
    proof = (f"We show: {d} | {k}*n.\n\nProof:\nThen {d} | {k}*n.\nqed\n")
    return Exercise(
        id=f"gen-divisibility-scale-{seed}",
        nat=f"Suppose {d} divides n. Show that {d} divides {k}*n.",
        form=parse_formula(f"{d} | {k}*n"),
        field="number-theory", tier="parity-divisibility",
        assumptions=(parse_formula(f"{d} | n"),),
        declarations=(("n", "natural"),),
        sample_proof=proof,
        hints=("A divisor of n divides every multiple of n.",),
    )


def _gen_induction_divisibility(rng: random.Random, seed: int,
                                bounds: Dict) -> Exercise:
    bmax = bounds.get("max_base", 5)
    amax = bounds.get("max_scale", 5)
    for _ in range(REJECTION_CAP):
        base = rng.randint(2, bmax)
        a = rng.randint(1, amax)
        divisors = [d for d in range(2, a * (base - 1) + 1)
                    if (a * (base - 1)) % d == 0]
        if not divisors:
            continue
        d = rng.choice(divisors)
        # numeric check of the statement and of the induction step
        for n in range(11):
            _oracle((a * base ** n - a) % d == 0, "induction-divisibility")
            step = (a * base ** (n + 1) - a) - base * (a * base ** n - a)
            _oracle(step == a * (base - 1) and step % d == 0,
                    "induction-divisibility")
        term = f"{base}^n" if a == 1 else f"{a}*{base}^n - {a}"
        if a == 1:
            term = f"{base}^n - 1"
        return Exercise(
            id=f"gen-induction-divisibility-{seed}",
            nat=f"Show that {d} divides {term} for every natural number n.",
            form=parse_formula(f"forall n:natural. {d} | {term}"),
            field="induction", tier="ind-base",
            assumptions=(), declarations=(),
            sample_proof="",
            hints=("Use induction on n; in the step, factor out the base.",),
        )
    raise GenerationError("induction-divisibility: rejection cap exceeded")


def _gen_induction_inequality(rng: random.Random, seed: int,
                              bounds: Dict) -> Exercise:
    bmax = bounds.get("max_base", 5)
    qmax = bounds.get("max_slope", 5)
    for _ in range(REJECTION_CAP):
        base = rng.randint(2, bmax)
        q = rng.randint(1, min(qmax, base - 1))
        r = rng.randint(0, 1)
        for n in range(31):
            _oracle(base ** n >= q * n + r, "induction-inequality")
        rhs = _poly_str(0, q, r)
        return Exercise(
            id=f"gen-induction-inequality-{seed}",
            nat=f"Show that {base}^n >= {rhs} for every natural number n.",
            form=parse_formula(f"forall n:natural. {base}^n >= {rhs}"),
            field="induction", tier="ind-base",
            assumptions=(), declarations=(),
            sample_proof="",
            hints=("Use induction on n; each step multiplies the left side"
                   f" by {base}.",),
        )
    raise GenerationError("induction-inequality: rejection cap exceeded")


_FAMILIES = {
    "parity-direct": _gen_parity_direct,
    "parity-cases": _gen_parity_cases,
    "parity-equivalence": _gen_parity_equivalence,
    "divisibility-scale": _gen_divisibility_scale,
    "induction-divisibility": _gen_induction_divisibility,
    "induction-inequality": _gen_induction_inequality,
}


def families() -> Tuple[str, ...]:
    return tuple(sorted(_FAMILIES))


def generate(family: str, seed: int,
             bounds: Optional[Dict] = None) -> Exercise:
    """Deterministically generate one validated exercise."""
    if family not in _FAMILIES:
        raise GenerationError(f"unknown family {family!r};"
                              f" available: {', '.join(families())}")
    rng = random.Random(f"{family}:{seed}")
    ex = _FAMILIES[family](rng, seed, dict(bounds or {}))
    validate_exercise(ex)
    return ex
