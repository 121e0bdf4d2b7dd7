"""Playing-field registry: lexical scope, predicate signatures and
difficulty tiers for each mathematical area the checker supports."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .engine import Rule
from .rules import load_pack

# Polymorphic predicates usable at several sorts.
POLY_PREDS = {"eq", "not_eq", "defeq"}

INT_SIG = {
    "even": ("integer",), "odd": ("integer",), "square": ("integer",),
    "cube": ("integer",),
    "divides": ("integer", "integer"), "congmod": ("integer",) * 3,
    "lt": ("integer",) * 2, "le": ("integer",) * 2,
    "gt": ("integer",) * 2, "ge": ("integer",) * 2,
}

GEO_SIG = {
    "on": ("point", "line"),
    "parallel": ("line", "line"), "perpendicular": ("line", "line"),
    "seg_congruent": ("segment", "segment"),
    "parallelogram": ("quadrangle",), "rhombus": ("quadrangle",),
    "rectangle": ("quadrangle",), "square": ("quadrangle",),
    "trapezoid": ("quadrangle",), "kite": ("quadrangle",),
    "right_angled": ("triangle",), "isosceles": ("triangle",),
    "proper_triangle": ("triangle",),
}


@dataclass(frozen=True)
class PlayingField:
    name: str
    sorts: tuple
    signatures: dict
    tier_chain: tuple           # tier names, weakest first
    packs: tuple                # rule pack file names
    default_tier: str = ""

    def tiers(self) -> Dict[str, frozenset]:
        """Tier name -> rule-id set; successive tiers grow along the chain."""
        rules = self.all_rules()
        out: Dict[str, frozenset] = {}
        for i, tier in enumerate(self.tier_chain):
            allowed = set(self.tier_chain[: i + 1]) | {"all"}
            out[tier] = frozenset(r.id for r in rules
                                  if any(t in allowed for t in r.tiers))
        return out

    def all_rules(self) -> List[Rule]:
        rules: List[Rule] = []
        for pack in self.packs:
            rules.extend(load_pack(pack))
        return rules

    def rules_for(self, tier: Optional[str] = None) -> List[Rule]:
        tier = tier or self.default_tier or self.tier_chain[-1]
        if tier not in self.tier_chain:
            raise KeyError(f"unknown tier {tier!r} for field {self.name}")
        ids = self.tiers()[tier]
        return [r for r in self.all_rules() if r.id in ids]


FIELDS: Dict[str, PlayingField] = {}


def _register(pf: PlayingField):
    FIELDS[pf.name] = pf
    return pf


NUMBER_THEORY = _register(PlayingField(
    name="number-theory",
    sorts=("natural", "integer"),
    signatures=INT_SIG,
    tier_chain=("parity-basic", "parity-divisibility", "nt-full"),
    packs=("logic", "nt"),
    default_tier="nt-full",
))

GEOMETRY = _register(PlayingField(
    name="geometry",
    sorts=("point", "line", "segment", "triangle", "quadrangle"),
    signatures=GEO_SIG,
    tier_chain=("geo-base", "geo-full"),
    packs=("logic", "geometry"),
    default_tier="geo-full",
))

INDUCTION = _register(PlayingField(
    name="induction",
    sorts=("natural", "integer"),
    signatures=INT_SIG,
    tier_chain=("parity-basic", "parity-divisibility", "nt-full", "ind-base"),
    packs=("logic", "nt", "induction"),
    default_tier="ind-base",
))


def get_field(name: str) -> PlayingField:
    if name not in FIELDS:
        raise KeyError(f"unknown playing field {name!r}")
    return FIELDS[name]


def load_rules(field_name: str, tier: Optional[str] = None) -> List[Rule]:
    return get_field(field_name).rules_for(tier)


def load_fallacy_rules() -> List[Rule]:
    return load_pack("fallacies")


def validate_tiers(pf: PlayingField) -> None:
    """Check the module invariants: tier rule ids are registered and the
    tiers form a chain under inclusion."""
    registered = {r.id for r in pf.all_rules()}
    tiers = pf.tiers()
    chain = [tiers[name] for name in pf.tier_chain]
    for name, ids in tiers.items():
        stray = ids - registered
        if stray:
            raise ValueError(f"tier {name} references unknown rules {sorted(stray)}")
    for lower, upper in zip(chain, chain[1:]):
        if not lower <= upper:
            raise ValueError(f"tiers of {pf.name} do not form a chain")
