"""Controlled statement language for geometry proofs.

A statement is one of thirteen fixed predicates over points, segments,
triangles, angles and circles.  Both a readable surface form
("M is the midpoint of segment AB") and a compact functional form
("Midpoint(M;A,B)") parse to the same canonical value, so equality of
statements is independent of how they were written.

Canonical form rules:
  * segment endpoints sorted; angle endpoints sorted around the vertex
  * symmetric argument pairs sorted (Parallel, Perpendicular, EqualLength,
    EqualAngle, the two sides of ProductEqual)
  * Collinear/Concyclic point lists sorted and de-duplicated
  * Congruent/Similar reduced to the least of the six presentations of the
    same vertex correspondence (3 rotations x direct/reflected)

Unicode spellings (x, ||, tri, ang, ~=, ~ have the symbols ×, ∥, △, ∠,
≅, ∼) are accepted on input; canonical rendering is plain ASCII.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import ArityError, ParseError


class Predicate(Enum):
    MIDPOINT = "Midpoint"
    CONGRUENT = "Congruent"
    SIMILAR = "Similar"
    PARALLEL = "Parallel"
    PERPENDICULAR = "Perpendicular"
    EQUAL_LENGTH = "EqualLength"
    EQUAL_ANGLE = "EqualAngle"
    ON_CIRCLE = "OnCircle"
    COLLINEAR = "Collinear"
    CONCYCLIC = "Concyclic"
    BISECTS = "Bisects"
    RIGHT_ANGLE = "RightAngle"
    PRODUCT_EQUAL = "ProductEqual"


FUNCTIONAL_NAMES = {p.value: p for p in Predicate}
FUNCTIONAL_NAMES_LOWER = {p.value.lower(): p for p in Predicate}

_POINT_RE = re.compile(r"^[A-Z][0-9]?$")
_ENTITY_RE = re.compile(r"^(?:[A-Z][0-9]?)+$")
_CIRCLE_RE = re.compile(r"^[a-z][0-9]?$")

# Words the strict surface grammar knows.  The fuzzy matcher corrects
# misspelled word tokens against this vocabulary (plus functional names).
SURFACE_KEYWORDS = frozenset(
    {
        "is", "are", "the", "a", "an", "and", "to", "of", "on",
        "midpoint", "segment", "lies", "circle",
        "parallel", "perpendicular", "congruent", "similar",
        "collinear", "concyclic", "bisects", "equals",
        "right", "angle", "ang", "tri", "triangle", "x",
    }
)

KEYWORDS = frozenset(SURFACE_KEYWORDS) | frozenset(FUNCTIONAL_NAMES)


@dataclass(frozen=True)
class CanonicalStatement:
    """A parsed statement; ``args`` is a predicate-specific nested tuple."""

    predicate: Predicate
    args: tuple

    def render(self) -> str:
        return render(self)

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return render(self)


# ---------------------------------------------------------------------------
# construction + canonicalization


def _check_point(tok: str, pos: int = 0) -> str:
    if not _POINT_RE.match(tok):
        raise ArityError(f"{tok!r} is not a point", pos)
    return tok


def _segment(p: str, q: str, pos: int = 0) -> tuple[str, str]:
    if p == q:
        raise ArityError(f"degenerate segment {p}{q}", pos)
    return (p, q)


def _angle(a: str, v: str, b: str, pos: int = 0) -> tuple[str, str, str]:
    if len({a, v, b}) != 3:
        raise ArityError(f"degenerate angle {a}{v}{b}", pos)
    return (a, v, b)


def _triangle(a: str, b: str, c: str, pos: int = 0) -> tuple[str, str, str]:
    if len({a, b, c}) != 3:
        raise ArityError(f"degenerate triangle {a}{b}{c}", pos)
    return (a, b, c)


def _sorted_segment(seg: tuple[str, str]) -> tuple[str, str]:
    return tuple(sorted(seg))  # type: ignore[return-value]


def _sorted_angle(ang: tuple[str, str, str]) -> tuple[str, str, str]:
    a, v, b = ang
    lo, hi = sorted((a, b))
    return (lo, v, hi)


def _least_correspondence(t1: tuple, t2: tuple) -> tuple[tuple, tuple]:
    # The same vertex correspondence can be presented rotated or with both
    # triangles reversed; pick the lexicographically least presentation.
    best = None
    for rot in range(3):
        r1 = t1[rot:] + t1[:rot]
        r2 = t2[rot:] + t2[:rot]
        for cand in ((r1, r2), (tuple(reversed(r1)), tuple(reversed(r2)))):
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def canonicalize(s: CanonicalStatement) -> CanonicalStatement:
    """Normalize argument order under the predicate's symmetries; idempotent."""
    p, a = s.predicate, s.args
    if p is Predicate.MIDPOINT:
        m, x, y = a
        return CanonicalStatement(p, (m,) + _sorted_segment((x, y)))
    if p in (Predicate.CONGRUENT, Predicate.SIMILAR):
        t1, t2 = _least_correspondence(a[0], a[1])
        return CanonicalStatement(p, (t1, t2))
    if p in (Predicate.PARALLEL, Predicate.PERPENDICULAR, Predicate.EQUAL_LENGTH):
        s1, s2 = _sorted_segment(a[0]), _sorted_segment(a[1])
        return CanonicalStatement(p, tuple(sorted((s1, s2))))
    if p is Predicate.EQUAL_ANGLE:
        a1, a2 = _sorted_angle(a[0]), _sorted_angle(a[1])
        return CanonicalStatement(p, tuple(sorted((a1, a2))))
    if p is Predicate.ON_CIRCLE:
        return s
    if p in (Predicate.COLLINEAR, Predicate.CONCYCLIC):
        pts = tuple(sorted(set(a)))
        minimum = 3 if p is Predicate.COLLINEAR else 4
        if len(pts) < minimum:
            raise ArityError(f"{p.value} needs at least {minimum} distinct points", 0)
        return CanonicalStatement(p, pts)
    if p is Predicate.BISECTS:
        seg, target = a
        seg = _sorted_segment(seg)
        target = _sorted_angle(target) if len(target) == 3 else _sorted_segment(target)
        return CanonicalStatement(p, (seg, target))
    if p is Predicate.RIGHT_ANGLE:
        return CanonicalStatement(p, (_sorted_angle(a[0]),))
    if p is Predicate.PRODUCT_EQUAL:
        side1, side2 = a
        side1 = tuple(sorted(_sorted_segment(seg) for seg in side1))
        side2 = tuple(sorted(_sorted_segment(seg) for seg in side2))
        return CanonicalStatement(p, tuple(sorted((side1, side2))))
    raise AssertionError(f"unhandled predicate {p}")


def statement_equal(a: CanonicalStatement, b: CanonicalStatement) -> bool:
    return canonicalize(a) == canonicalize(b)


def make(predicate: Predicate, *args) -> CanonicalStatement:
    """Build and canonicalize a statement, validating shapes.

    Accepted argument shapes mirror the functional syntax: points and
    circles are strings, segments/triangles/angles are tuples of points.
    """
    builders = {
        Predicate.MIDPOINT: _mk_midpoint,
        Predicate.CONGRUENT: _mk_tri_pair,
        Predicate.SIMILAR: _mk_tri_pair,
        Predicate.PARALLEL: _mk_seg_pair,
        Predicate.PERPENDICULAR: _mk_seg_pair,
        Predicate.EQUAL_LENGTH: _mk_seg_pair,
        Predicate.EQUAL_ANGLE: _mk_angle_pair,
        Predicate.ON_CIRCLE: _mk_on_circle,
        Predicate.COLLINEAR: _mk_points,
        Predicate.CONCYCLIC: _mk_points,
        Predicate.BISECTS: _mk_bisects,
        Predicate.RIGHT_ANGLE: _mk_right_angle,
        Predicate.PRODUCT_EQUAL: _mk_product,
    }
    return canonicalize(CanonicalStatement(predicate, builders[predicate](predicate, args)))


def _mk_midpoint(p, args):
    if len(args) != 3:
        raise ArityError("Midpoint takes a point and two endpoints", 0)
    m, x, y = (_check_point(t) for t in args)
    _segment(x, y)
    if m in (x, y):
        raise ArityError("midpoint coincides with an endpoint", 0)
    return (m, x, y)


def _mk_tri_pair(p, args):
    if len(args) != 2:
        raise ArityError(f"{p.value} takes two triangles", 0)
    return (_triangle(*args[0]), _triangle(*args[1]))


def _mk_seg_pair(p, args):
    if len(args) != 2:
        raise ArityError(f"{p.value} takes two segments", 0)
    return (_segment(*args[0]), _segment(*args[1]))


def _mk_angle_pair(p, args):
    if len(args) != 2:
        raise ArityError("EqualAngle takes two angles", 0)
    return (_angle(*args[0]), _angle(*args[1]))


def _mk_on_circle(p, args):
    if len(args) != 2:
        raise ArityError("OnCircle takes a point and a circle", 0)
    pt, circ = args
    _check_point(pt)
    if not _CIRCLE_RE.match(circ):
        raise ArityError(f"{circ!r} is not a circle name", 0)
    return (pt, circ)


def _mk_points(p, args):
    minimum = 3 if p is Predicate.COLLINEAR else 4
    pts = tuple(_check_point(t) for t in args)
    if len(set(pts)) < minimum:
        raise ArityError(f"{p.value} needs at least {minimum} distinct points", 0)
    return pts


def _mk_bisects(p, args):
    if len(args) != 2:
        raise ArityError("Bisects takes a segment and an angle or segment", 0)
    seg, target = args
    seg = _segment(*seg)
    target = _angle(*target) if len(target) == 3 else _segment(*target)
    return (seg, target)


def _mk_right_angle(p, args):
    if len(args) != 1:
        raise ArityError("RightAngle takes one angle", 0)
    return (_angle(*args[0]),)


def _mk_product(p, args):
    if len(args) != 2 or any(len(side) != 2 for side in args):
        raise ArityError("ProductEqual takes two sides of two segments each", 0)
    return tuple(tuple(_segment(*seg) for seg in side) for side in args)


# ---------------------------------------------------------------------------
# rendering


def _r_seg(seg) -> str:
    return "".join(seg)


def _r_pair(seg) -> str:
    return "(" + ",".join(seg) + ")"


def render(s: CanonicalStatement) -> str:
    """Canonical ASCII rendering; re-parsing it yields an equal statement."""
    p, a = s.predicate, s.args
    if p is Predicate.MIDPOINT:
        return f"Midpoint({a[0]};{a[1]},{a[2]})"
    if p in (Predicate.CONGRUENT, Predicate.SIMILAR):
        return f"{p.value}({_r_seg(a[0])},{_r_seg(a[1])})"
    if p in (Predicate.PARALLEL, Predicate.PERPENDICULAR, Predicate.EQUAL_LENGTH, Predicate.EQUAL_ANGLE):
        return f"{p.value}({_r_seg(a[0])},{_r_seg(a[1])})"
    if p is Predicate.ON_CIRCLE:
        return f"OnCircle({a[0]};{a[1]})"
    if p in (Predicate.COLLINEAR, Predicate.CONCYCLIC):
        return f"{p.value}({','.join(a)})"
    if p is Predicate.BISECTS:
        return f"Bisects({_r_seg(a[0])};{_r_seg(a[1])})"
    if p is Predicate.RIGHT_ANGLE:
        return f"RightAngle({_r_seg(a[0])})"
    if p is Predicate.PRODUCT_EQUAL:
        (s1, s2), (s3, s4) = a
        return f"ProductEqual({_r_pair(s1)},{_r_pair(s2)};{_r_pair(s3)},{_r_pair(s4)})"
    raise AssertionError(p)


def blank_template(s: CanonicalStatement) -> str:
    """Render with every entity letter blanked; used for level-2 hints."""
    text = render(s)
    return re.sub(r"[A-Z][0-9]?(?![a-z])|(?<=[(;,])[a-z][0-9]?(?=[);,])", "_", text)


def points_of(s: CanonicalStatement) -> set[str]:
    """All point tokens mentioned by the statement."""
    out: set[str] = set()

    def walk(node):
        if isinstance(node, str):
            if _POINT_RE.match(node):
                out.add(node)
        else:
            for item in node:
                walk(item)

    walk(s.args)
    return out


def circles_of(s: CanonicalStatement) -> set[str]:
    if s.predicate is Predicate.ON_CIRCLE:
        return {s.args[1]}
    return set()


# ---------------------------------------------------------------------------
# tokenizer

_SYMBOL_MAP = {
    "×": ("IDENT", "x"),
    "*": ("IDENT", "x"),
    "∥": ("SYM", "||"),
    "⊥": ("SYM", "_|_"),
    "≅": ("SYM", "~="),
    "∼": ("SYM", "~"),
}

_MULTI = ("||", "~=", "_|_")
_SINGLE = "();,=~△∠"


@dataclass(frozen=True)
class Token:
    kind: str  # ENTITY | IDENT | SYM | END
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens; raises ParseError on a stray character."""
    toks: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _SYMBOL_MAP:
            kind, text_ = _SYMBOL_MAP[c]
            toks.append(Token(kind, text_, i))
            i += 1
            continue
        matched = False
        for m in _MULTI:
            if text.startswith(m, i):
                toks.append(Token("SYM", m, i))
                i += len(m)
                matched = True
                break
        if matched:
            continue
        if c in _SINGLE:
            sym = {"△": "tri", "∠": "ang"}.get(c, c)
            kind = "IDENT" if sym in ("tri", "ang") else "SYM"
            toks.append(Token(kind, sym, i))
            i += 1
            continue
        if c.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum()):
                j += 1
            toks.append(Token("ENTITY" if _ENTITY_RE.match(text[i:j]) else "IDENT", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    toks.append(Token("END", "", n))
    return toks


def split_points(entity: str) -> list[str]:
    return re.findall(r"[A-Z][0-9]?", entity)


# ---------------------------------------------------------------------------
# parser


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.cur
        if t.kind != "END":
            self.i += 1
        return t

    def fail(self, *expected: str):
        raise ParseError(
            "unexpected end of input" if self.cur.kind == "END" else f"unexpected {self.cur.text!r}",
            self.cur.pos,
            expected,
        )

    def eat_sym(self, sym: str):
        if self.cur.kind == "SYM" and self.cur.text == sym:
            return self.advance()
        self.fail(f"'{sym}'")

    def eat_word(self, *words: str) -> str:
        # surface keywords are case-insensitive; entity case is significant
        if self.cur.kind == "IDENT" and self.cur.text.lower() in words:
            return self.advance().text.lower()
        self.fail(*words)
        raise AssertionError  # unreachable

    def peek_word(self, *words: str) -> bool:
        return self.cur.kind == "IDENT" and self.cur.text.lower() in words

    def peek_sym(self, *syms: str) -> bool:
        return self.cur.kind == "SYM" and self.cur.text in syms

    def skip_word(self, *words: str) -> bool:
        if self.peek_word(*words):
            self.advance()
            return True
        return False

    def eat_entity(self, n_points: int, what: str) -> list[str]:
        if self.cur.kind != "ENTITY":
            self.fail(what)
        pts = split_points(self.cur.text)
        if len(pts) != n_points:
            raise ArityError(f"expected {what}, got {self.cur.text!r}", self.cur.pos)
        self.advance()
        return pts

    def eat_end(self):
        if self.cur.kind != "END":
            self.fail("end of statement")


def parse_statement(text: str) -> CanonicalStatement:
    """Parse surface or functional syntax into a canonical statement.

    Raises ParseError/ArityError with a character offset; never anything else.
    """
    if not text or not text.strip():
        raise ParseError("empty statement", 0)
    try:
        cur = _Cursor(tokenize(text))
        stmt = _parse_top(cur)
        cur.eat_end()
        return stmt
    except (ParseError, ArityError):
        raise
    except Exception as exc:  # defensive: the parser must be total
        raise ParseError(f"malformed statement ({exc})", 0) from exc


def _parse_top(cur: _Cursor) -> CanonicalStatement:
    t = cur.cur
    if (
        t.kind == "IDENT"
        and t.text.lower() in FUNCTIONAL_NAMES_LOWER
        and cur.toks[cur.i + 1].kind == "SYM"
        and cur.toks[cur.i + 1].text == "("
    ):
        return _parse_functional(cur)
    if t.kind == "IDENT" and t.text.lower() in ("ang", "angle"):
        return _parse_angle_lead(cur)
    if t.kind == "IDENT" and t.text.lower() in ("tri", "triangle"):
        return _parse_triangle_lead(cur)
    if t.kind == "ENTITY":
        pts = split_points(t.text)
        if len(pts) == 1:
            return _parse_point_lead(cur)
        if len(pts) == 2:
            return _parse_segment_lead(cur)
        if len(pts) == 3:
            return _parse_triangle_lead(cur)
        cur.fail("a point, segment or triangle")
    cur.fail("a statement")
    raise AssertionError


def _parse_angle_ref(cur: _Cursor) -> tuple[str, str, str]:
    cur.skip_word("ang", "angle")
    a, v, b = cur.eat_entity(3, "an angle like ABC")
    return _angle(a, v, b, cur.toks[cur.i - 1].pos)


def _parse_tri_ref(cur: _Cursor) -> tuple[str, str, str]:
    cur.skip_word("tri", "triangle")
    a, b, c = cur.eat_entity(3, "a triangle like ABC")
    return _triangle(a, b, c, cur.toks[cur.i - 1].pos)


def _parse_segment_ref(cur: _Cursor) -> tuple[str, str]:
    p, q = cur.eat_entity(2, "a segment like AB")
    return _segment(p, q, cur.toks[cur.i - 1].pos)


def _parse_point_lead(cur: _Cursor) -> CanonicalStatement:
    first = cur.eat_entity(1, "a point")[0]
    if cur.peek_sym(","):
        points = [first]
        while cur.peek_sym(","):
            cur.advance()
            if cur.skip_word("and"):
                pass
            points.append(cur.eat_entity(1, "a point")[0])
            if cur.peek_word("and"):
                cur.advance()
                points.append(cur.eat_entity(1, "a point")[0])
        cur.eat_word("are")
        kind = cur.eat_word("collinear", "concyclic")
        pred = Predicate.COLLINEAR if kind == "collinear" else Predicate.CONCYCLIC
        return make(pred, *points)
    verb = cur.eat_word("is", "lies")
    if verb == "lies" or cur.peek_word("on"):
        cur.eat_word("on")
        cur.skip_word("circle")
        if cur.cur.kind != "IDENT" or not _CIRCLE_RE.match(cur.cur.text):
            cur.fail("a circle name")
        circ = cur.advance().text
        return make(Predicate.ON_CIRCLE, first, circ)
    cur.skip_word("the")
    cur.eat_word("midpoint")
    cur.eat_word("of")
    cur.skip_word("segment")
    seg = _parse_segment_ref(cur)
    return make(Predicate.MIDPOINT, first, *seg)


def _parse_segment_lead(cur: _Cursor) -> CanonicalStatement:
    seg1 = _parse_segment_ref(cur)
    if cur.peek_sym("||"):
        cur.advance()
        return make(Predicate.PARALLEL, seg1, _parse_segment_ref(cur))
    if cur.peek_sym("_|_"):
        cur.advance()
        return make(Predicate.PERPENDICULAR, seg1, _parse_segment_ref(cur))
    if cur.peek_word("bisects"):
        cur.advance()
        if cur.peek_word("ang", "angle"):
            return make(Predicate.BISECTS, seg1, _parse_angle_ref(cur))
        if cur.cur.kind == "ENTITY" and len(split_points(cur.cur.text)) == 3:
            return make(Predicate.BISECTS, seg1, _parse_angle_ref(cur))
        return make(Predicate.BISECTS, seg1, _parse_segment_ref(cur))
    if cur.peek_word("x"):
        cur.advance()
        seg2 = _parse_segment_ref(cur)
        if not cur.skip_word("equals"):
            cur.eat_sym("=")
        seg3 = _parse_segment_ref(cur)
        cur.eat_word("x")
        seg4 = _parse_segment_ref(cur)
        return make(Predicate.PRODUCT_EQUAL, (seg1, seg2), (seg3, seg4))
    if cur.peek_sym("=") or cur.peek_word("equals"):
        cur.advance()
        return make(Predicate.EQUAL_LENGTH, seg1, _parse_segment_ref(cur))
    if cur.peek_word("is"):
        cur.advance()
        which = cur.eat_word("parallel", "perpendicular")
        cur.eat_word("to")
        seg2 = _parse_segment_ref(cur)
        pred = Predicate.PARALLEL if which == "parallel" else Predicate.PERPENDICULAR
        return make(pred, seg1, seg2)
    cur.fail("'||'", "'_|_'", "'='", "'x'", "bisects", "is", "equals")
    raise AssertionError


def _parse_triangle_lead(cur: _Cursor) -> CanonicalStatement:
    t1 = _parse_tri_ref(cur)
    if cur.peek_sym("~="):
        cur.advance()
        return make(Predicate.CONGRUENT, t1, _parse_tri_ref(cur))
    if cur.peek_sym("~"):
        cur.advance()
        return make(Predicate.SIMILAR, t1, _parse_tri_ref(cur))
    if cur.peek_word("is"):
        cur.advance()
        which = cur.eat_word("congruent", "similar")
        cur.eat_word("to")
        t2 = _parse_tri_ref(cur)
        pred = Predicate.CONGRUENT if which == "congruent" else Predicate.SIMILAR
        return make(pred, t1, t2)
    cur.fail("'~='", "'~'", "is")
    raise AssertionError


def _parse_angle_lead(cur: _Cursor) -> CanonicalStatement:
    a1 = _parse_angle_ref(cur)
    if cur.peek_sym("=") or cur.peek_word("equals"):
        cur.advance()
        return make(Predicate.EQUAL_ANGLE, a1, _parse_angle_ref(cur))
    cur.eat_word("is")
    cur.skip_word("a")
    cur.eat_word("right")
    cur.eat_word("angle")
    return make(Predicate.RIGHT_ANGLE, a1)


def _parse_point_pair(cur: _Cursor) -> tuple[str, str]:
    cur.eat_sym("(")
    p = cur.eat_entity(1, "a point")[0]
    cur.eat_sym(",")
    q = cur.eat_entity(1, "a point")[0]
    cur.eat_sym(")")
    return _segment(p, q, cur.toks[cur.i - 1].pos)


def _parse_functional(cur: _Cursor) -> CanonicalStatement:
    pred = FUNCTIONAL_NAMES_LOWER[cur.advance().text.lower()]
    cur.eat_sym("(")
    if pred is Predicate.MIDPOINT:
        m = cur.eat_entity(1, "a point")[0]
        cur.eat_sym(";")
        x = cur.eat_entity(1, "a point")[0]
        cur.eat_sym(",")
        y = cur.eat_entity(1, "a point")[0]
        stmt = make(pred, m, x, y)
    elif pred in (Predicate.CONGRUENT, Predicate.SIMILAR):
        t1 = _parse_tri_ref(cur)
        cur.eat_sym(",")
        stmt = make(pred, t1, _parse_tri_ref(cur))
    elif pred in (Predicate.PARALLEL, Predicate.PERPENDICULAR, Predicate.EQUAL_LENGTH):
        s1 = _parse_segment_ref(cur)
        cur.eat_sym(",")
        stmt = make(pred, s1, _parse_segment_ref(cur))
    elif pred is Predicate.EQUAL_ANGLE:
        a1 = _parse_angle_ref(cur)
        cur.eat_sym(",")
        stmt = make(pred, a1, _parse_angle_ref(cur))
    elif pred is Predicate.ON_CIRCLE:
        p = cur.eat_entity(1, "a point")[0]
        cur.eat_sym(";")
        if cur.cur.kind != "IDENT" or not _CIRCLE_RE.match(cur.cur.text):
            cur.fail("a circle name")
        stmt = make(pred, p, cur.advance().text)
    elif pred in (Predicate.COLLINEAR, Predicate.CONCYCLIC):
        points = [cur.eat_entity(1, "a point")[0]]
        while cur.peek_sym(","):
            cur.advance()
            points.append(cur.eat_entity(1, "a point")[0])
        stmt = make(pred, *points)
    elif pred is Predicate.BISECTS:
        seg = _parse_segment_ref(cur)
        cur.eat_sym(";")
        if cur.peek_word("ang", "angle") or (
            cur.cur.kind == "ENTITY" and len(split_points(cur.cur.text)) == 3
        ):
            stmt = make(pred, seg, _parse_angle_ref(cur))
        else:
            stmt = make(pred, seg, _parse_segment_ref(cur))
    elif pred is Predicate.RIGHT_ANGLE:
        stmt = make(pred, _parse_angle_ref(cur))
    else:  # ProductEqual
        s1 = _parse_point_pair(cur)
        cur.eat_sym(",")
        s2 = _parse_point_pair(cur)
        cur.eat_sym(";")
        s3 = _parse_point_pair(cur)
        cur.eat_sym(",")
        s4 = _parse_point_pair(cur)
        stmt = make(pred, (s1, s2), (s3, s4))
    cur.eat_sym(")")
    return stmt


def try_parse(text: str) -> CanonicalStatement | None:
    """Parse returning None instead of raising; handy for probing."""
    try:
        return parse_statement(text)
    except (ParseError, ArityError):
        return None
