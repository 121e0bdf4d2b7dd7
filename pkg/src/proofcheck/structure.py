"""Text structure: proof-block matching, the accessibility relation over
annotated lines, and the implications proved by closed assumption blocks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .ast import Formula, Implies
from .docmodel import AnnotatedLine

_OPENER_FUNCTIONS = ("assumption", "declaration", "definition", "naming")
_CONTENT_FUNCTIONS = ("assumption", "declaration", "definition", "naming",
                      "claim", "justified-claim", "citation-claim")
_BLOCK_OPENERS = ("proof-start", "subgoal-forward", "subgoal-backward")


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    start: int   # line id of the opening marker
    end: int     # line id of the matching proof-end
    kind: str    # proof-start / subgoal-forward / subgoal-backward
    depth: int


@dataclass(frozen=True)
class ClosedImplication:
    """assumption -> conclusions, proved by a block that has been closed."""

    assumption: Formula
    conclusions: Tuple[Formula, ...]
    source_lines: Tuple[int, int]          # (assumption line, scope end)
    governors: FrozenSet[int] = frozenset()  # outer assumptions it relies on


def match_blocks(lines: Sequence[AnnotatedLine]) -> List[Block]:
    """Pair block-opening markers with their closing qed, innermost first."""
    stack: List[Tuple[int, str, int]] = []
    blocks: List[Block] = []
    for line in lines:
        if line.function in _BLOCK_OPENERS:
            stack.append((line.id, line.function, len(stack)))
        elif line.function == "proof-end":
            if not stack:
                raise StructureError(
                    f"unmatched proof-end marker at line {line.id}")
            start, kind, depth = stack.pop()
            blocks.append(Block(start, line.id, kind, depth))
    if stack:
        raise StructureError(
            f"proof block opened at line {stack[-1][0]} is never closed")
    return blocks


def _innermost_block(blocks: Sequence[Block], line_id: int) -> Optional[Block]:
    best = None
    for b in blocks:
        if b.start <= line_id < b.end:
            if best is None or b.depth > best.depth:
                best = b
    return best


def scope_ends(lines: Sequence[AnnotatedLine],
               blocks: Sequence[Block]) -> Dict[int, int]:
    """Exclusive scope end per opener line: an opener is accessible from all
    later lines j with j < scope_end.

    An opener in the same paragraph as its block's start marker, or on the
    line directly after it, scopes to the block's end; otherwise it scopes
    to the end of its own paragraph, clipped to the enclosing block."""
    by_id = {l.id: l for l in lines}
    ends: Dict[int, int] = {}
    last_of_paragraph: Dict[int, int] = {}
    for l in lines:
        last_of_paragraph[l.paragraph] = l.id
    for l in lines:
        if l.function not in _OPENER_FUNCTIONS:
            continue
        b = _innermost_block(blocks, l.id)
        if b is None:
            raise StructureError(f"line {l.id} lies outside every proof block")
        marker = by_id[b.start]
        if l.paragraph == marker.paragraph or l.id == b.start + 1:
            ends[l.id] = b.end
        else:
            ends[l.id] = min(last_of_paragraph[l.paragraph] + 1, b.end)
    return ends


def accessibility(lines: Sequence[AnnotatedLine]) -> Set[Tuple[int, int]]:
    """Pairs (i, j): the assumption/declaration at line i is accessible from
    line j."""
    blocks = match_blocks(lines)
    ends = scope_ends(lines, blocks)
    relation: Set[Tuple[int, int]] = set()
    for l in lines:
        if l.id not in ends:
            continue
        for other in lines:
            if l.id < other.id < ends[l.id] \
                    and other.function in _CONTENT_FUNCTIONS:
                relation.add((l.id, other.id))
    return relation


def governors(lines: Sequence[AnnotatedLine],
              ends: Dict[int, int]) -> Dict[int, FrozenSet[int]]:
    """For every line: the assumption lines whose scope covers it."""
    out: Dict[int, FrozenSet[int]] = {}
    assumption_ids = [l.id for l in lines if l.function == "assumption"
                      and l.id in ends]
    for l in lines:
        out[l.id] = frozenset(a for a in assumption_ids
                              if a < l.id < ends[a])
    return out


def _claim_formulas(line: AnnotatedLine) -> List[Formula]:
    """What a verified claim line contributes as an established fact."""
    if line.content is None:
        return []
    if line.function == "justified-claim":
        return [line.content.consequent]
    return [line.content]


def closed_implications(
        lines: Sequence[AnnotatedLine]) -> List[ClosedImplication]:
    """For every assumption block that closes, the implications
    assumption -> claim it proved.  Inner blocks fold into outer ones, so a
    claim under nested assumptions a, b surfaces as a -> (b -> claim)."""
    blocks = match_blocks(lines)
    ends = scope_ends(lines, blocks)
    gov = governors(lines, ends)
    pool: List[Tuple[int, Formula, FrozenSet[int]]] = []
    for l in lines:
        if l.function in ("claim", "justified-claim", "citation-claim"):
            for f in _claim_formulas(l):
                pool.append((l.id, f, gov[l.id]))
    by_id = {l.id: l for l in lines}
    out: List[ClosedImplication] = []
    closing = sorted((a for a in ends
                      if by_id[a].function == "assumption"),
                     key=lambda a: (ends[a], -a))
    for a in closing:
        outer = gov[a]
        concl = [f for (cid, f, g) in pool
                 if a < cid <= ends[a] and a in g and g - {a} == outer]
        if not concl:
            continue
        imp = ClosedImplication(
            assumption=by_id[a].content, conclusions=tuple(concl),
            source_lines=(a, ends[a]), governors=outer)
        out.append(imp)
        for f in concl:
            pool.append((ends[a], Implies(by_id[a].content, f), outer))
    return out


def implications_at(implications: Sequence[ClosedImplication],
                    line_id: int, ends: Dict[int, int]) -> List[ClosedImplication]:
    """Implications usable at a given line: their block already closed and
    every outer assumption they rely on is still open there."""
    usable = []
    for imp in implications:
        if imp.source_lines[1] > line_id:
            continue
        if all(g < line_id < ends.get(g, 0) for g in imp.governors):
            usable.append(imp)
    return usable
