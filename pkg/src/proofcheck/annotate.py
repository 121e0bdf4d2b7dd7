"""Controlled-English sentence grammar: classifies preprocessed sentences
(assumption, claim, declaration, marker, ...) and formalizes their content
into annotated proof lines."""
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Set, Tuple

from .ast import (And, App, Atom, Falsum, Formula, Iff, Implies, IntLit, Not,
                  Quant, Sym, Term, Var, conj, subterms)
from .docmodel import AnnotatedLine
from .surface import FormulaBox, RawSentence, Token


class AnnotationError(ValueError):
    """A sentence the controlled-English grammar cannot process."""

    def __init__(self, message: str, sentence: str = ""):
        super().__init__(f"{message}: {sentence!r}" if sentence else message)
        self.sentence = sentence


# --- item helpers --------------------------------------------------------------

def _is_word(item, *texts: str) -> bool:
    return (isinstance(item, Token) and item.kind == "word"
            and item.text.lower() in texts)


def _is_punct(item, text: str) -> bool:
    return (isinstance(item, Token) and item.kind == "punctuation"
            and item.text == text)


def _box(item) -> Optional[FormulaBox]:
    return item if isinstance(item, FormulaBox) else None


def _words(items) -> List[str]:
    return [i.text.lower() for i in items
            if isinstance(i, Token) and i.kind == "word"]


def _strip_leading(items, *phrases: Tuple[str, ...]):
    """Drop the longest matching leading word phrase; returns (items, found)."""
    best = None
    for phrase in phrases:
        if len(items) >= len(phrase) and all(
                _is_word(items[k], phrase[k]) for k in range(len(phrase))):
            if best is None or len(phrase) > len(best):
                best = phrase
    if best is None:
        return items, None
    rest = list(items[len(best):])
    if rest and _is_punct(rest[0], ","):
        rest = rest[1:]
    return rest, best


_DECOR = {"also", "now", "clearly", "obviously", "indeed", "certainly",
          "again", "finally", "first", "next", "further", "moreover"}


def _strip_decor(items):
    out = []
    i = 0
    while i < len(items):
        it = items[i]
        if _is_word(it, *_DECOR):
            i += 1
            continue
        if _is_word(it, "as") and i + 1 < len(items) and _is_word(items[i + 1], "well"):
            i += 2
            continue
        if _is_word(it, "once") and i + 1 < len(items) and _is_word(items[i + 1], "again"):
            i += 2
            continue
        out.append(it)
        i += 1
    return out


def _split_top(items, *seps: str) -> List[list]:
    parts, cur = [], []
    for it in items:
        if _is_word(it, *seps) or (seps == (",",) and _is_punct(it, ",")):
            parts.append(cur)
            cur = []
        else:
            cur.append(it)
    parts.append(cur)
    return parts


def _term_of(item) -> Optional[Term]:
    b = _box(item)
    if b is not None and b.kind == "term":
        return b.content
    # single letters used before declaration still read as variables
    if isinstance(item, Token) and item.kind == "word" and len(item.text) == 1:
        return Var(item.text)
    return None


def ordered_symbols(f: Formula) -> Tuple[str, ...]:
    """Free variable names of a formula in first-occurrence order."""
    seen: List[str] = []
    bound: Set[str] = set()

    def walk_f(g, bound):
        if isinstance(g, Quant):
            walk_f(g.body, bound | {g.var})
            return
        if isinstance(g, Atom):
            for t in g.args:
                walk_t(t, bound)
            return
        for name in ("parts", "antecedent", "consequent", "left",
                     "right", "body"):
            if hasattr(g, name):
                v = getattr(g, name)
                for part in (v if isinstance(v, tuple) else (v,)):
                    walk_f(part, bound)

    def walk_t(t, bound):
        for s in subterms(t):
            if isinstance(s, Var) and s.name not in bound and s.name not in seen:
                seen.append(s.name)

    walk_f(f, bound)
    return tuple(seen)


# --- sort vocabulary -----------------------------------------------------------

_SORT_WORDS = {
    "natural": "natural", "naturals": "natural",
    "integer": "integer", "integers": "integer",
    "number": None, "numbers": None,  # noun, sort given by adjective
    "point": "point", "points": "point",
    "line": "line", "lines": "line",
    "segment": "segment", "segments": "segment",
    "triangle": "triangle", "triangles": "triangle",
    "quadrangle": "quadrangle", "quadrangles": "quadrangle",
}

_SHAPE_WORDS = {"parallelogram", "rhombus", "rectangle", "square",
                "trapezoid", "kite"}

_CLAIM_LEADS = (
    ("then",), ("hence",), ("thus",), ("therefore",), ("so",),
    ("consequently",), ("it", "follows", "that"), ("we", "have"),
    ("we", "get"), ("we", "obtain"), ("we", "see", "that"),
    ("we", "know", "that"), ("this", "means", "that"),
    ("in", "particular",), ("we", "conclude", "that"), ("altogether",),
)

_ASSUME_LEADS = (
    ("suppose", "that"), ("suppose",), ("assume", "that"), ("assume",),
    ("now", "suppose", "that"), ("now", "suppose"),
    ("now", "assume", "that"), ("now", "assume"),
    ("suppose", "we", "have"), ("assume", "we", "have"),
    ("suppose", "first", "that"), ("suppose", "now", "that"),
)


def _field_default_sort(field: str) -> str:
    return "integer" if field in ("number-theory", "induction") else "point"


# --- part formalization --------------------------------------------------------

def _formalize_part(items, field: str) -> Formula:
    items = _strip_decor(items)
    if not items:
        raise AnnotationError("empty claim part")
    if len(items) == 1:
        b = _box(items[0])
        if b is not None:
            if b.kind == "formula":
                return b.content
            if b.kind == "opaque":
                raise AnnotationError(f"unparseable expression {b.text!r}")
        if _is_word(items[0], "contradiction"):
            return Falsum()
        raise AnnotationError("expected a formula")

    # "X and Y are parallel/perpendicular/distinct/congruent"
    if len(items) == 5 and _is_word(items[1], "and") and _is_word(items[3], "are"):
        x, y = _term_of(items[0]), _term_of(items[2])
        if x is not None and y is not None:
            rel = items[4].text.lower() if isinstance(items[4], Token) else ""
            table = {"parallel": "parallel", "perpendicular": "perpendicular",
                     "orthogonal": "perpendicular", "congruent": "seg_congruent",
                     "distinct": "not_eq"}
            if rel in table:
                return Atom(table[rel], (x, y))

    # patterns of the shape "<term> is ..."
    if _term_of(items[0]) is not None and len(items) >= 2 \
            and _is_word(items[1], "is", "lies"):
        subject = _term_of(items[0])
        rest = items[2:]
        negated = bool(rest) and _is_word(rest[0], "not")
        if negated:
            rest = rest[1:]
        atom = _subject_predicate(subject, rest, field)
        if atom is not None:
            return Not(atom) if negated else atom

    # "<term> divides <term>"
    if len(items) == 3 and _is_word(items[1], "divides"):
        x, y = _term_of(items[0]), _term_of(items[2])
        if x is not None and y is not None:
            return Atom("divides", (x, y))

    # coordination: "A and B" where both halves formalize
    for sep in ("and",):
        parts = _split_top(items, sep)
        if len(parts) > 1 and all(p for p in parts):
            try:
                return conj([_formalize_part(p, field) for p in parts])
            except AnnotationError:
                pass

    raise AnnotationError(
        "cannot formalize: " + " ".join(
            i.text for i in items if hasattr(i, "text")))


def _is_article(item) -> bool:
    """Articles; "a" may have been scanned as a symbol when a point or
    number of that name is declared."""
    if _is_word(item, "a", "an", "the"):
        return True
    b = _box(item)
    return (b is not None and b.kind == "term"
            and isinstance(b.content, Var) and b.content.name == "a")


def _subject_predicate(subject: Term, rest, field: str) -> Optional[Formula]:
    """Formalize the predicate part of "<subject> is <rest>"."""
    rest = _strip_decor(rest)
    if rest and _is_article(rest[0]):
        article = rest[0].text.lower()
        rest = rest[1:]
    else:
        article = None
    if not rest:
        return None
    words = [i.text.lower() if isinstance(i, Token) else None for i in rest]

    if words[0] in ("even", "odd") and len(rest) == 1:
        return Atom(words[0], (subject,))
    if words[0] in ("square", "cube") and len(rest) == 1 and field != "geometry":
        return Atom(words[0], (subject,))
    if words[0] in _SHAPE_WORDS and len(rest) == 1 and field == "geometry":
        return Atom(words[0], (subject,))
    if words == ["right-angled"] or words == ["right", "angled"]:
        return Atom("right_angled", (subject,))
    if words == ["isosceles"]:
        return Atom("isosceles", (subject,))
    if words[0] == "divisible" and len(rest) == 3 and _is_word(rest[1], "by"):
        d = _term_of(rest[2])
        if d is not None:
            return Atom("divides", (d, subject))
    if words[0] in ("parallel", "perpendicular", "orthogonal") \
            and len(rest) == 3 and _is_word(rest[1], "to"):
        other = _term_of(rest[2])
        if other is not None:
            pred = "parallel" if words[0] == "parallel" else "perpendicular"
            return Atom(pred, (subject, other))
    if words[0] == "on" and len(rest) == 2:
        other = _term_of(rest[1])
        if other is not None:
            return Atom("on", (subject, other))
    if words[:3] == ["midpoint", "of", None] and article == "the" and len(rest) == 3:
        seg = _term_of(rest[2])
        if seg is not None:
            return Atom("eq", (subject, App("midpoint", (seg,))))
    if words[0] in _SORT_WORDS and len(rest) == 1:
        sort = _SORT_WORDS[words[0]]
        if sort is not None:
            return Atom("is_sort", (subject, Sym(sort)))
    return None


def formalize_items(items, field: str) -> Formula:
    return _formalize_part(list(items), field)


# --- declaration parsing -------------------------------------------------------

def _name_of(item) -> Optional[str]:
    t = _term_of(item)
    if isinstance(t, Var):
        return t.name
    if isinstance(item, Token) and item.kind == "word" and len(item.text) == 1:
        return item.text
    return None


def _parse_sort_phrase(items, field: str):
    """Sort + extra-property adjectives from a declaration tail like
    "a natural number", "distinct points", "even"."""
    sort = None
    props: List[str] = []
    distinct = False
    for it in items:
        if not isinstance(it, Token) or it.kind != "word":
            continue
        w = it.text.lower()
        if w in ("a", "an", "the"):
            continue
        if w in _SORT_WORDS:
            if _SORT_WORDS[w] is not None:
                sort = _SORT_WORDS[w]
            elif sort is None:
                sort = _field_default_sort(field)
        elif w in ("even", "odd", "positive"):
            props.append(w)
            if sort is None:
                sort = _field_default_sort(field)
        elif w == "distinct":
            distinct = True
        else:
            return None
    if sort is None:
        return None
    return sort, props, distinct


def _declaration_content(names: List[str], sort: str, props: List[str],
                         distinct: bool) -> Formula:
    from .ast import Sym
    atoms: List[Formula] = [Atom("is_sort", (Var(n), Sym(sort))) for n in names]
    for p in props:
        pred = {"even": "even", "odd": "odd"}.get(p)
        if pred:
            atoms.extend(Atom(pred, (Var(n),)) for n in names)
        elif p == "positive":
            atoms.extend(Atom("gt", (Var(n), IntLit(0))) for n in names)
    if distinct:
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                atoms.append(Atom("not_eq", (Var(names[i]), Var(names[j]))))
    return conj(atoms)


def _parse_let(items, field: str, text: str):
    """Sentences led by Let/Define: declaration, naming or definition."""
    rest = list(items[1:])

    # "Let x := t." (also via a single defeq box, or "Define x := t.")
    if len(rest) == 1 and _box(rest[0]) is not None \
            and _box(rest[0]).kind == "formula" \
            and isinstance(rest[0].content, Atom) \
            and rest[0].content.pred == "defeq":
        at = rest[0].content
        if not isinstance(at.args[0], Var):
            raise AnnotationError("definition must name a fresh symbol", text)
        name = at.args[0].name
        return AnnotatedLine(
            id=0, refs=(), names=(name,), status="open", function="definition",
            content=Atom("eq", at.args), text=text)

    # split "<names> be <sort phrase> [such that φ]"
    try:
        be = next(k for k, it in enumerate(rest) if _is_word(it, "be"))
    except StopIteration:
        raise AnnotationError("expected 'be' in declaration", text)
    names = []
    for it in rest[:be]:
        if _is_punct(it, ",") or _is_word(it, "and"):
            continue
        n = _name_of(it)
        if n is None:
            raise AnnotationError("expected declared names before 'be'", text)
        names.append(n)
    if not names:
        raise AnnotationError("declaration introduces no names", text)

    tail = rest[be + 1:]
    claim = None
    for k in range(len(tail) - 1):
        if _is_word(tail[k], "such") and _is_word(tail[k + 1], "that"):
            claim = tail[k + 2:]
            tail = tail[:k]
            break
        if _is_word(tail[k], "with") and _box(tail[k + 1]) is not None:
            claim = tail[k + 1:]
            tail = tail[:k]
            break

    # "Let m be the midpoint of s(a,c)." / "the parallel to l through p"
    defn = _parse_definition_tail(names, tail, field)
    if defn is not None:
        function, content = defn
        return AnnotatedLine(
            id=0, refs=(), names=tuple(names), status="open",
            function=function, content=content, text=text)

    parsed = _parse_sort_phrase(tail, field)
    if parsed is None:
        raise AnnotationError("unrecognized sort phrase", text)
    sort, props, distinct = parsed
    content = _declaration_content(names, sort, props, distinct)
    if claim is not None:
        phi = formalize_items(claim, field)
        return AnnotatedLine(
            id=0, refs=(), names=tuple(names), status="open",
            function="naming", content=And((content, phi)) if not isinstance(
                content, And) else conj(list(content.parts) + [phi]),
            text=text)
    return AnnotatedLine(
        id=0, refs=(), names=tuple(names), status="open",
        function="declaration", content=content, text=text)


def _parse_definition_tail(names, tail, field: str):
    """Definite descriptions after "be": the midpoint of s, the parallel to
    l through p, the perpendicular to l through p, the intersection of g and h."""
    if len(names) != 1 or not tail or not _is_word(tail[0], "the"):
        return None
    x = Var(names[0])
    ws = [(i.text.lower() if isinstance(i, Token) else None) for i in tail]
    if ws[1:3] == ["midpoint", "of"] and len(tail) == 4:
        seg = _term_of(tail[3])
        if seg is not None:
            return "definition", Atom("eq", (x, App("midpoint", (seg,))))
    if ws[1:3] == ["intersection", "of"] and len(tail) == 6 and ws[4] == "and":
        g, h = _term_of(tail[3]), _term_of(tail[5])
        if g is not None and h is not None:
            return "definition", Atom("eq", (x, App("isect", (g, h))))
    if ws[1] in ("parallel", "perpendicular") and len(tail) == 6 \
            and ws[2] == "to" and ws[4] == "through":
        l, p = _term_of(tail[3]), _term_of(tail[5])
        if l is not None and p is not None:
            pred = "parallel" if ws[1] == "parallel" else "perpendicular"
            return "naming", And((Atom("is_sort", (x, Sym("line"))),
                                  Atom(pred, (x, l)), Atom("on", (p, x))))
    return None


# --- existential claims --------------------------------------------------------

def _parse_existential(items, field: str, text: str):
    """"There is a natural number k such that φ." — an existence claim whose
    witness name stays available afterwards."""
    rest, lead = _strip_leading(
        list(items), ("there", "is"), ("there", "exists"), ("there", "are"))
    if lead is None:
        return None
    claim = None
    for k in range(len(rest) - 1):
        if _is_word(rest[k], "such") and _is_word(rest[k + 1], "that"):
            claim = rest[k + 2:]
            head = rest[:k]
            break
    else:
        return None
    if not head:
        return None
    name = _name_of(head[-1])
    if name is None:
        return None
    parsed = _parse_sort_phrase(head[:-1], field)
    if parsed is None:
        return None
    sort, props, _ = parsed
    phi = formalize_items(claim, field)
    body_parts = [phi]
    for p in props:
        if p in ("even", "odd"):
            body_parts.insert(0, Atom(p, (Var(name),)))
    body = conj(body_parts)
    return AnnotatedLine(
        id=0, refs=(), names=(name,), status="", function="claim",
        content=Quant("exists", name, sort, body), text=text)


# --- sentence classification ---------------------------------------------------

def annotate_sentence(s: RawSentence, field: str) -> AnnotatedLine:
    items = list(s.items)
    text = " ".join(i.text for i in items if hasattr(i, "text"))
    if not items:
        raise AnnotationError("empty sentence")

    # markers
    if len(items) == 2 and _is_word(items[0], "proof") and _is_punct(items[1], ":"):
        return AnnotatedLine(0, (), (), "", "proof-start", None, text,
                             s.paragraph)
    if len(items) == 1 and _is_word(items[0], "qed"):
        return AnnotatedLine(0, (), (), "", "proof-end", None, text,
                             s.paragraph)
    if len(items) == 1 and _box(items[0]) is not None \
            and _box(items[0]).kind == "marker":
        fn = "subgoal-forward" if items[0].content == "=>" else "subgoal-backward"
        return AnnotatedLine(0, (), (), "", fn, None, text, s.paragraph)

    # method announcements: "By induction." / "By contradiction." ...
    ws = _words(items)
    if ws[:1] == ["by"] and len(items) <= 3:
        method = None
        if ws[1:] == ["induction"]:
            method = "induction"
        elif ws[1:] == ["contradiction"]:
            method = "contradiction"
        elif ws[1:] == ["case", "distinction"]:
            method = "case-distinction"
        if method:
            return AnnotatedLine(0, (), (method,), "", "method", None, text,
                                 s.paragraph)

    # goal announcement
    rest, lead = _strip_leading(
        items, ("we", "show"), ("we", "will", "show", "that"),
        ("we", "show", "that"), ("we", "prove"), ("we", "prove", "that"))
    if lead is not None:
        if rest and _is_punct(rest[0], ":"):
            rest = rest[1:]
        content = formalize_items(rest, field)
        line = AnnotatedLine(0, (), (), "", "goal-announcement", content,
                             text, s.paragraph)
        return _with_refs(line)

    # contradiction claim
    if len(items) == 1 and _is_word(items[0], "contradiction"):
        return AnnotatedLine(0, (), (), "", "claim", Falsum(), text,
                             s.paragraph)

    # assumptions
    rest, lead = _strip_leading(items, *_ASSUME_LEADS)
    if lead is not None:
        content = formalize_items(rest, field)
        line = AnnotatedLine(0, (), (), "open", "assumption", content, text,
                             s.paragraph)
        return _with_refs(line)

    # declarations / definitions / namings
    if _is_word(items[0], "let", "define"):
        line = _parse_let(items, field, text)
        line.paragraph = s.paragraph
        return _with_refs(line)

    # claims
    rest, lead = _strip_leading(items, *_CLAIM_LEADS)
    citation = None
    justification = None
    if lead is None:
        # "Since A, B" and "By the <...> rule, B"
        if _is_word(items[0], "since", "because"):
            parts = _split_top(items[1:], ",")
            if len(parts) >= 2:
                justification = parts[0]
                rest = [it for p in parts[1:] for it in p]
        elif _is_word(items[0], "by"):
            k = next((k for k, it in enumerate(items) if _is_punct(it, ",")),
                     None)
            if k is not None:
                citation = " ".join(_words(items[1:k]))
                rest = items[k + 1:]
        if justification is None and citation is None:
            rest = items  # bare formula sentences are claims too

    ex = _parse_existential(rest, field, text)
    if ex is not None:
        ex.paragraph = s.paragraph
        return _with_refs(ex)

    rest2, _ = _strip_leading(rest, *_CLAIM_LEADS)

    # step-by-step manipulation chains keep their structure
    boxes = [_box(i) for i in _strip_decor(rest2)]
    if len(boxes) == 1 and boxes[0] is not None and boxes[0].kind == "manipulation":
        mc = boxes[0].content
        links = []
        for k, (kind, _op) in enumerate(mc.links):
            ctor = Iff if kind == "iff" else Implies
            links.append(ctor(mc.elements[k], mc.elements[k + 1]))
        line = AnnotatedLine(0, (), (), "", "claim", conj(links), text,
                             s.paragraph, chain=mc)
        return _with_refs(line)

    content = formalize_items(rest2, field)
    if justification is not None:
        premise = formalize_items(justification, field)
        line = AnnotatedLine(0, (), (), "", "justified-claim",
                             Implies(premise, content), text, s.paragraph)
    elif citation is not None:
        line = AnnotatedLine(0, (), (citation,), "", "citation-claim",
                             content, text, s.paragraph)
    else:
        line = AnnotatedLine(0, (), (), "", "claim", content, text,
                             s.paragraph)
    return _with_refs(line)


def _with_refs(line: AnnotatedLine) -> AnnotatedLine:
    if line.content is not None:
        line.refs = ordered_symbols(line.content)
    return line


def annotate_text(sentences: Sequence[RawSentence],
                  field: str = "number-theory") -> List[AnnotatedLine]:
    """Annotate a preprocessed text, inserting synthetic proof markers when
    the student did not write explicit ones."""
    lines = [annotate_sentence(s, field) for s in sentences]
    content_lines = [l for l in lines
                     if l.function not in ("goal-announcement",)]
    has_start = any(l.function == "proof-start" for l in lines)
    has_end = content_lines and content_lines[-1].function == "proof-end"
    if not has_start:
        at = next((k for k, l in enumerate(lines)
                   if l.function != "goal-announcement"), len(lines))
        para = lines[at].paragraph if at < len(lines) else 0
        lines.insert(at, AnnotatedLine(0, (), (), "", "proof-start", None,
                                       "", para, synthetic=True))
    if not has_end:
        para = lines[-1].paragraph if lines else 0
        lines.append(AnnotatedLine(0, (), (), "", "proof-end", None, "",
                                   para, synthetic=True))
    for k, line in enumerate(lines, start=1):
        line.id = k
    return lines
