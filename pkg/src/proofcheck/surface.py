"""Surface pipeline: language check and preprocessing of raw proof text
into sentences of word tokens and parsed formal-expression boxes."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from .formula_parser import (CONSTRUCTOR_NAMES, SORT_NAMES, SyntaxErr,
                             normalize_input, try_parse_fragment)

TOKEN_KINDS = ("word", "formula-fragment", "punctuation", "paragraph-break")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Tuple[int, int]


@dataclass(frozen=True)
class FormulaBox:
    """A formal fragment together with its parse.

    kind is 'formula', 'term' or 'manipulation'; 'opaque' when no parse
    succeeded (the annotator reports those, preprocessing stays total).
    """

    text: str
    span: Tuple[int, int]
    kind: str
    content: object = None


@dataclass(frozen=True)
class RawSentence:
    items: Tuple[object, ...]  # Token or FormulaBox
    paragraph: int

    def words(self) -> Tuple[str, ...]:
        return tuple(i.text.lower() for i in self.items
                     if isinstance(i, Token) and i.kind == "word")


@dataclass(frozen=True)
class LanguageError:
    kind: str  # unknown-word | unknown-symbol | unbalanced-delimiters
    span: Tuple[int, int]
    text: str

    def message(self) -> str:
        return f"{self.kind}: {self.text!r} at {self.span[0]}..{self.span[1]}"


# The controlled-English vocabulary shared by all playing fields.
LEXICON: Set[str] = {
    # articles and glue
    "a", "an", "the", "of", "to", "at", "in", "on", "by", "with", "for",
    "and", "or", "not", "if", "then", "else", "only", "but", "both",
    "is", "are", "be", "has", "have", "had", "was", "were", "its", "it",
    "this", "that", "these", "those", "all", "every", "each", "any",
    "there", "exists", "exist", "such", "some", "no", "one", "two",
    "i", "e", "g",
    # proof-structuring vocabulary
    "let", "suppose", "assume", "now", "hence", "thus", "therefore", "so",
    "follows", "consequently", "we", "show", "will", "see", "obtain",
    "get", "know", "conclude", "holds", "hold", "proof", "qed",
    "contradiction", "case", "cases", "distinction", "induction", "base",
    "step", "hypothesis", "since", "because", "as", "also", "well",
    "once", "again", "define", "defined", "denote", "name", "call",
    "first", "second", "third", "finally", "next", "further", "moreover",
    "rule", "axiom", "distinct", "arbitrary", "particular", "assumption",
    # number theory
    "number", "numbers", "natural", "integer", "integers", "even", "odd",
    "divisible", "divides", "divisor", "multiple", "parity", "square",
    "cube", "successor", "predecessor", "sum", "product", "difference",
    "congruent", "modulo", "positive", "nonnegative", "greater", "less",
    "equal", "equals", "than",
    # geometry
    "point", "points", "line", "lines", "segment", "segments", "triangle",
    "triangles", "quadrangle", "quadrangles", "midpoint", "intersection",
    "parallel", "perpendicular", "orthogonal", "bisector", "parallelogram",
    "rhombus", "rectangle", "trapezoid", "kite", "isosceles", "right",
    "angled", "angle", "through", "lies", "lie", "passes",
}

# Multi-character operators recognized by the fragment scanner, longest first.
_OPS = ("<=>", "_|_", "<->", ":=", "!=", "->", "=>", "<=", ">=", "||",
        "\\/", "/\\")
_SINGLE_OPS = set("=<>+-*^|~&!()")
_UNICODE_OPS = set("∥⊥∼≤≥→↔⇒⇐⇔∧∨¬≠·−")

_WORD_RE = re.compile(r"[A-Za-z](?:[A-Za-z]|[-'](?=[A-Za-z]))*")
_IDENT_RE = re.compile(r"[A-Za-z](?:[A-Za-z0-9]|_(?=[A-Za-z0-9]))*")

# Predicate names written applicatively inside fragments, e.g. "even(n)".
PRED_NAMES = {"even", "odd", "square", "cube", "divides", "parallel",
              "perpendicular", "on", "collinear", "proper_triangle",
              "right_angled", "isosceles", "parallelogram", "rhombus",
              "rectangle", "trapezoid", "kite", "midpoint_of"}
_NUM_RE = re.compile(r"\d+")
_MARKER_LINE_RE = re.compile(r"(?m)^[ \t]*(=>|<=|⇒|⇐)[ \t]*$")


def base_symbols(field: str) -> Set[str]:
    """Identifiers always usable in formal fragments of a playing field.

    Sort names are deliberately absent: "natural" inside "a natural
    number" is an English word, not a formal symbol."""
    if field == "geometry":
        return set(CONSTRUCTOR_NAMES)
    return set()


def collect_declared_names(text: str) -> Set[str]:
    """Names introduced by declaration-like sentences, gathered up front so
    the scanner can classify them as symbols from the first occurrence on."""
    names: Set[str] = set()
    for m in re.finditer(r"\b[Ll]et\s+([A-Za-z0-9_,\s]+?)\s+be\b", text):
        for part in m.group(1).split(","):
            part = part.strip()
            if re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", part):
                names.add(part)
    for m in re.finditer(r"\b[Ll]et\s+([A-Za-z][A-Za-z0-9_]*)\s*:=", text):
        names.add(m.group(1))
    for m in re.finditer(r"\b[Dd]efine\s+([A-Za-z][A-Za-z0-9_]*)\s*:=", text):
        names.add(m.group(1))
    for m in re.finditer(
            r"\b(?:number|integer|point|line|segment)\s+([A-Za-z])\b", text):
        names.add(m.group(1))
    return names


class _Scanner:
    def __init__(self, text: str, symbols: Set[str]):
        self.text = text
        self.symbols = symbols
        self.marker_spans = {m.span(1) for m in _MARKER_LINE_RE.finditer(text)}

    def _unit(self, i: int, depth: int) -> Optional[Tuple[int, str]]:
        """Match one formal unit at position i: (end, kind) or None."""
        text = self.text
        for op in _OPS:
            if text.startswith(op, i):
                return i + len(op), "op"
        ch = text[i]
        if ch in _UNICODE_OPS:
            return i + 1, "op"
        if ch in _SINGLE_OPS:
            return i + 1, "op"
        if ch == "," and depth > 0:
            return i + 1, "op"
        m = _NUM_RE.match(text, i)
        if m:
            return m.end(), "atom"
        m = _IDENT_RE.match(text, i)
        if m:
            name = m.group(0)
            if name == "in":  # incidence relation: "x in l(a,b)"
                return m.end(), "op"
            if name in self.symbols or name in CONSTRUCTOR_NAMES:
                return m.end(), "atom"
            if name in PRED_NAMES and text.startswith("(", m.end()):
                return m.end(), "atom"
            # single letters are variables, except the English words a/I
            if len(name) == 1 and (depth > 0 or name not in ("a", "I")):
                return m.end(), "atom"
        return None

    def fragment_at(self, i: int) -> Optional[int]:
        """Longest formal fragment starting at i; returns its end or None."""
        text = self.text
        units: List[Tuple[int, int, str]] = []
        depth = 0
        j = i
        while j < len(text):
            u = self._unit(j, depth)
            if u is None:
                # a single space may separate units within one fragment
                if text[j] in " \t" and j > i:
                    u2 = self._unit(j + 1, depth) if j + 1 < len(text) else None
                    if u2 is not None:
                        j += 1
                        continue
                break
            end, kind = u
            piece = text[j:end]
            if piece == "(" or piece == "（":
                depth += 1
            elif piece == ")":
                if depth == 0:
                    break
                depth -= 1
            units.append((j, end, kind))
            j = end
        # back off trailing units that cannot end a fragment
        while units:
            s, e, kind = units[-1]
            piece = text[s:e]
            if kind == "op" and piece not in (")", "_|_"):
                units.pop()
                if piece == "(":
                    pass
            else:
                break
        if not units:
            return None
        # a fragment must contain an atom or be a standalone proof marker
        has_atom = any(k == "atom" for _, _, k in units)
        single = text[units[0][0]:units[-1][1]]
        if not has_atom and (units[0][0], units[-1][1]) not in self.marker_spans:
            return None
        return units[-1][1]

    def tokens(self) -> List[Token]:
        text = self.text
        out: List[Token] = []
        i = 0
        n = len(text)
        while i < n:
            ch = text[i]
            if ch == "\n":
                m = re.match(r"\n[ \t]*\n\s*", text[i:])
                if m:
                    out.append(Token("paragraph-break", text[i:i + m.end()],
                                     (i, i + m.end())))
                    i += m.end()
                else:
                    i += 1
                continue
            if ch.isspace():
                i += 1
                continue
            # standalone subgoal-marker lines are fragments even though
            # "=>" alone would not otherwise qualify
            for (s, e) in self.marker_spans:
                if s == i:
                    out.append(Token("formula-fragment", text[s:e], (s, e)))
                    i = e
                    break
            else:
                end = self.fragment_at(i)
                if end is not None:
                    out.append(Token("formula-fragment", text[i:end], (i, end)))
                    i = end
                    continue
                m = _WORD_RE.match(text, i)
                if m:
                    out.append(Token("word", m.group(0), (i, m.end())))
                    i = m.end()
                    continue
                out.append(Token("punctuation", ch, (i, i + 1)))
                i += 1
        return out


def scan(text: str, symbols: Iterable[str] = (), field: str = "number-theory",
         auto_declare: bool = True) -> List[Token]:
    syms = base_symbols(field) | set(symbols)
    if auto_declare:
        syms |= collect_declared_names(text)
    return _Scanner(text, syms).tokens()


def _check_balance(fragment: str) -> bool:
    depth = 0
    for ch in fragment:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                return False
    return depth == 0


def language_check(text: str, lexicon: Optional[Set[str]] = None,
                   symbols: Iterable[str] = (),
                   field: str = "number-theory") -> List[LanguageError]:
    """Report unknown words, unknown symbols and unbalanced delimiters.

    An empty result means the text passed; any error halts downstream
    processing."""
    lex = LEXICON if lexicon is None else lexicon
    syms = base_symbols(field) | set(symbols) | collect_declared_names(text)
    errors: List[LanguageError] = []
    for tok in _Scanner(text, syms).tokens():
        if tok.kind == "word":
            w = tok.text.lower()
            if w not in lex and not (len(w) == 1 and w in syms):
                errors.append(LanguageError("unknown-word", tok.span, tok.text))
        elif tok.kind == "formula-fragment":
            if not _check_balance(tok.text):
                errors.append(
                    LanguageError("unbalanced-delimiters", tok.span, tok.text))
                continue
            for m in _IDENT_RE.finditer(tok.text):
                name = m.group(0)
                if (name not in syms and name not in CONSTRUCTOR_NAMES
                        and name not in SORT_NAMES and name not in PRED_NAMES
                        and name != "in" and len(name) > 1):
                    span = (tok.span[0] + m.start(), tok.span[0] + m.end())
                    errors.append(
                        LanguageError("unknown-symbol", span, name))
    return errors


def make_box(tok: Token, field: str) -> FormulaBox:
    text = normalize_input(tok.text)
    if text.strip() in ("=>", "<="):
        return FormulaBox(tok.text, tok.span, "marker", text.strip())
    try:
        kind, content = try_parse_fragment(text, field)
    except (SyntaxErr, ValueError):
        return FormulaBox(tok.text, tok.span, "opaque", None)
    if kind == "manip":
        kind = "manipulation"
    return FormulaBox(tok.text, tok.span, kind, content)


def preprocess(text: str, symbols: Iterable[str] = (),
               field: str = "number-theory") -> List[RawSentence]:
    """Split checked text into sentences of words, punctuation and parsed
    formal-expression boxes; paragraphs are separated by blank lines."""
    tokens = scan(text, symbols, field)
    sentences: List[RawSentence] = []
    cur: List[object] = []
    paragraph = 0

    def flush():
        nonlocal cur
        if cur:
            sentences.append(RawSentence(tuple(cur), paragraph))
            cur = []

    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.kind == "paragraph-break":
            flush()
            paragraph += 1
        elif tok.kind == "punctuation" and tok.text == ".":
            flush()
        elif tok.kind == "word" and tok.text.lower() == "proof" \
                and i + 1 < len(tokens) \
                and tokens[i + 1] == Token("punctuation", ":", tokens[i + 1].span):
            flush()
            cur.extend([tok, tokens[i + 1]])
            flush()
            i += 1
        elif tok.kind == "word" and tok.text.lower() == "qed":
            flush()
            cur.append(tok)
            flush()
            if i + 1 < len(tokens) and tokens[i + 1].kind == "punctuation" \
                    and tokens[i + 1].text == ".":
                i += 1
        elif tok.kind == "formula-fragment":
            box = make_box(tok, field)
            if box.kind == "marker":
                flush()
                cur.append(box)
                flush()
            else:
                cur.append(box)
        else:
            cur.append(tok)
        i += 1
    flush()
    return sentences
