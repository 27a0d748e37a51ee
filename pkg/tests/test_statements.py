from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from geomtutor.errors import ArityError, ParseError
from geomtutor.statements import (
    CanonicalStatement,
    Predicate,
    blank_template,
    canonicalize,
    make,
    parse_statement,
    render,
    statement_equal,
)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("M is the midpoint of segment AB", "Midpoint(M;A,B)"),
        ("M is the midpoint of AB", "Midpoint(M;A,B)"),
        ("Midpoint(M;B,A)", "Midpoint(M;A,B)"),
        ("AE × EB = CE × ED", "ProductEqual((A,E),(B,E);(C,E),(D,E))"),
        ("AE x EB = CE x ED", "ProductEqual((A,E),(B,E);(C,E),(D,E))"),
        ("ProductEqual((A,E),(E,B);(C,E),(E,D))", "ProductEqual((A,E),(B,E);(C,E),(D,E))"),
        ("AB ∥ CD", "Parallel(AB,CD)"),
        ("AB || CD", "Parallel(AB,CD)"),
        ("CD is parallel to AB", "Parallel(AB,CD)"),
        ("AB ⊥ CD", "Perpendicular(AB,CD)"),
        ("AB is perpendicular to CD", "Perpendicular(AB,CD)"),
        ("AB = CD", "EqualLength(AB,CD)"),
        ("DC equals BA", "EqualLength(AB,CD)"),
        ("Triangle ABC is congruent to triangle LMN", "Congruent(ABC,LMN)"),
        ("△BCA ≅ △MNL", "Congruent(ABC,LMN)"),
        ("tri ABC ~ tri XYZ", "Similar(ABC,XYZ)"),
        ("∠ABC = ∠XYZ", "EqualAngle(ABC,XYZ)"),
        ("ang CBA equals ang XYZ", "EqualAngle(ABC,XYZ)"),
        ("∠ABC is a right angle", "RightAngle(ABC)"),
        ("A, B, C are collinear", "Collinear(A,B,C)"),
        ("C, B and A are collinear", "Collinear(A,B,C)"),
        ("A, B, C, D are concyclic", "Concyclic(A,B,C,D)"),
        ("P lies on circle k", "OnCircle(P;k)"),
        ("P is on k1", "OnCircle(P;k1)"),
        ("BD bisects ∠ABC", "Bisects(BD;ABC)"),
        ("BD bisects AC", "Bisects(BD;AC)"),
        ("A1X = AX", "EqualLength(AX,A1X)"),
    ],
)
def test_parse_and_canonical_render(text, expected):
    assert render(parse_statement(text)) == expected


@pytest.mark.parametrize(
    "text",
    [
        "M is the midpoint of",
        "",
        "   ",
        "XY is tangent to circle k",
        "AB = CD = EF",
        "AB @ CD",
        "Midpoint(M;A)",
        "Collinear(A,B)",
        "Concyclic(A,B,C)",
        "Midpoint(M;A,A)",
        "RightAngle(ABA)",
        "Congruent(AAB,LMN)",
    ],
)
def test_rejects_with_position(text):
    with pytest.raises((ParseError, ArityError)) as exc_info:
        parse_statement(text)
    assert exc_info.value.position >= 0


def test_truncated_input_reports_end_of_input():
    with pytest.raises(ParseError) as exc_info:
        parse_statement("M is the midpoint of")
    assert exc_info.value.position == len("M is the midpoint of")


def brute_force_least_correspondence(t1, t2):
    """All six presentations of one triangle correspondence, least first."""
    presentations = []
    for rot in range(3):
        r1 = t1[rot:] + t1[:rot]
        r2 = t2[rot:] + t2[:rot]
        presentations.append((r1, r2))
        presentations.append((tuple(reversed(r1)), tuple(reversed(r2))))
    return min(presentations)


@pytest.mark.parametrize(
    "t1,t2",
    [
        (("B", "C", "A"), ("M", "N", "L")),
        (("A", "B", "C"), ("L", "M", "N")),
        (("C", "A", "B"), ("Z", "X", "Y")),
        (("Q", "P", "R"), ("B", "A", "C")),
    ],
)
def test_congruence_canonical_form_matches_brute_force(t1, t2):
    stmt = make(Predicate.CONGRUENT, t1, t2)
    assert stmt.args == brute_force_least_correspondence(t1, t2)


def test_congruence_spec_example():
    # Congruent(BCA, MNL) presents the A<->L, B<->M, C<->N correspondence
    assert render(parse_statement("Congruent(△BCA,△MNL)")) == "Congruent(ABC,LMN)"


def test_equal_angle_vertex_fixed_endpoints_sorted():
    a = parse_statement("EqualAngle(ABC,XYZ)")
    b = parse_statement("EqualAngle(CBA,XYZ)")
    assert statement_equal(a, b)
    # a different vertex is a different angle
    c = parse_statement("EqualAngle(BAC,XYZ)")
    assert not statement_equal(a, c)


def test_statement_equal_ignores_symmetry():
    assert statement_equal(parse_statement("Parallel(AB,CD)"), parse_statement("Parallel(CD,AB)"))
    assert not statement_equal(
        parse_statement("Congruent(ABC,LMN)"), parse_statement("Similar(ABC,LMN)")
    )


# -- random statement generation -------------------------------------------

POINTS = [p + d for p in "ABCDEFMNPQ" for d in ("", "1")]
CIRCLES = ["k", "w", "k1"]


def _distinct(draw, n):
    return tuple(draw(st.permutations(POINTS))[:n])


@st.composite
def statements(draw):
    pred = draw(st.sampled_from(list(Predicate)))
    pts = draw(st.permutations(POINTS))
    if pred is Predicate.MIDPOINT:
        return make(pred, pts[0], pts[1], pts[2])
    if pred in (Predicate.CONGRUENT, Predicate.SIMILAR):
        return make(pred, tuple(pts[0:3]), tuple(pts[3:6]))
    if pred in (Predicate.PARALLEL, Predicate.PERPENDICULAR, Predicate.EQUAL_LENGTH):
        return make(pred, tuple(pts[0:2]), tuple(pts[2:4]))
    if pred is Predicate.EQUAL_ANGLE:
        return make(pred, tuple(pts[0:3]), tuple(pts[3:6]))
    if pred is Predicate.ON_CIRCLE:
        return make(pred, pts[0], draw(st.sampled_from(CIRCLES)))
    if pred is Predicate.COLLINEAR:
        return make(pred, *pts[: draw(st.integers(3, 5))])
    if pred is Predicate.CONCYCLIC:
        return make(pred, *pts[: draw(st.integers(4, 6))])
    if pred is Predicate.BISECTS:
        if draw(st.booleans()):
            return make(pred, tuple(pts[0:2]), tuple(pts[2:5]))
        return make(pred, tuple(pts[0:2]), tuple(pts[2:4]))
    if pred is Predicate.RIGHT_ANGLE:
        return make(pred, tuple(pts[0:3]))
    return make(pred, (tuple(pts[0:2]), tuple(pts[2:4])), (tuple(pts[4:6]), tuple(pts[6:8])))


@given(statements())
@settings(max_examples=300)
def test_canonicalize_idempotent(stmt):
    assert canonicalize(stmt) == stmt
    assert canonicalize(canonicalize(stmt)) == canonicalize(stmt)


@given(statements())
@settings(max_examples=300)
def test_render_parse_round_trip(stmt):
    assert parse_statement(render(stmt)) == stmt


@given(statements(), statements(), statements())
@settings(max_examples=150)
def test_statement_equal_is_equivalence(a, b, c):
    assert statement_equal(a, a)
    assert statement_equal(a, b) == statement_equal(b, a)
    if statement_equal(a, b) and statement_equal(b, c):
        assert statement_equal(a, c)


@given(st.text(max_size=60))
@settings(max_examples=400)
def test_parser_total_on_arbitrary_text(text):
    try:
        stmt = parse_statement(text)
    except (ParseError, ArityError) as exc:
        assert exc.position >= 0
    else:
        assert isinstance(stmt, CanonicalStatement)


def test_blank_template_hides_every_entity():
    cases = {
        "Midpoint(M;A,B)": "Midpoint(_;_,_)",
        "OnCircle(P;k1)": "OnCircle(_;_)",
        "Congruent(ABC,LMN)": "Congruent(___,___)",
        "ProductEqual((A,E),(B,E);(C,E),(D,E))": "ProductEqual((_,_),(_,_);(_,_),(_,_))",
    }
    for text, blanked in cases.items():
        assert blank_template(parse_statement(text)) == blanked


def test_corpus_statements_round_trip(catalog):
    seen = 0
    for problem in catalog.problems.values():
        for stmt in problem.givens:
            assert parse_statement(render(stmt)) == stmt
            seen += 1
        for graph in problem.graphs:
            for step in graph.steps:
                assert parse_statement(render(step.statement)) == step.statement
                seen += 1
    assert seen > 150
