"""HTTP/JSON service: corpus browsing, set building, live proof sessions.

All routes live under /api/v1.  Sessions are held in memory; mutations on
one session are serialized by a per-session lock, and an optional ``index``
field on line submissions gives optimistic concurrency (a stale index is
rejected with 409).  Engine errors map one-to-one onto HTTP status codes.
"""

from __future__ import annotations

import itertools
import threading

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .config import ServiceConfig
from .errors import (
    ArityError,
    BadIndexError,
    BadRangeError,
    BadRefsError,
    ExternalUnavailableError,
    GeomError,
    NoFrontierError,
    NoGraphsError,
    NoSuchLineError,
    OutOfRangeError,
    ParseError,
    SessionClosedError,
    UnknownProblemError,
    UnknownSessionError,
    UnknownSkillError,
    UnsupportedFormatError,
)
from .ontology import ATTRIBUTE_NAMES, Catalog, DifficultyBand, Problem, TYPE_FLAG_NAMES
from .selection import DEFAULT_EFFICIENCY_RATIO, SetRequest, build_set, explain_set
from .statements import Predicate, parse_statement, points_of, circles_of, render
from .validation import ProofLine, Session

_STATUS_BY_ERROR: list[tuple[type, int]] = [
    (UnknownProblemError, 404),
    (UnknownSessionError, 404),
    (NoSuchLineError, 404),
    (SessionClosedError, 409),
    (BadIndexError, 409),
    (NoFrontierError, 409),
    (ParseError, 422),
    (ArityError, 422),
    (BadRefsError, 422),
    (BadRangeError, 422),
    (UnknownSkillError, 422),
    (NoGraphsError, 422),
    (OutOfRangeError, 422),
    (UnsupportedFormatError, 422),
    (ExternalUnavailableError, 503),
]


def _error_payload(exc: GeomError) -> dict:
    detail: dict = {}
    if isinstance(exc, (ParseError, ArityError)):
        detail = {"position": exc.position, "expected": list(exc.expected)}
    return {"code": exc.code, "message": str(exc), "detail": detail}


class LineIn(BaseModel):
    statement_text: str
    reason_text: str = ""
    refs: list[int] = Field(default_factory=list)
    index: int | None = None  # optimistic concurrency check


class SessionIn(BaseModel):
    problem_id: str
    known: list[str] = Field(default_factory=list)


class ProblemSetIn(BaseModel):
    target: str
    known: list[str] = Field(default_factory=list)
    count: int = 5
    mode: str = "strict"
    ratio: float | None = None
    band: list[int] | None = None  # [lo, hi]
    reinforce: bool = False


class ParseIn(BaseModel):
    text: str


# Constructed-mode templates: point slots substitute into ``pattern``;
# slot indices inside one ``distinct_groups`` entry must get distinct points.
STATEMENT_TEMPLATES: list[dict] = [
    {"predicate": "Midpoint", "points": 3, "circles": 0,
     "pattern": "Midpoint({0};{1},{2})", "distinct_groups": [[0, 1, 2]]},
    {"predicate": "Congruent", "points": 6, "circles": 0,
     "pattern": "Congruent({0}{1}{2},{3}{4}{5})", "distinct_groups": [[0, 1, 2], [3, 4, 5]]},
    {"predicate": "Similar", "points": 6, "circles": 0,
     "pattern": "Similar({0}{1}{2},{3}{4}{5})", "distinct_groups": [[0, 1, 2], [3, 4, 5]]},
    {"predicate": "Parallel", "points": 4, "circles": 0,
     "pattern": "Parallel({0}{1},{2}{3})", "distinct_groups": [[0, 1], [2, 3]]},
    {"predicate": "Perpendicular", "points": 4, "circles": 0,
     "pattern": "Perpendicular({0}{1},{2}{3})", "distinct_groups": [[0, 1], [2, 3]]},
    {"predicate": "EqualLength", "points": 4, "circles": 0,
     "pattern": "EqualLength({0}{1},{2}{3})", "distinct_groups": [[0, 1], [2, 3]]},
    {"predicate": "EqualAngle", "points": 6, "circles": 0,
     "pattern": "EqualAngle({0}{1}{2},{3}{4}{5})", "distinct_groups": [[0, 1, 2], [3, 4, 5]]},
    {"predicate": "OnCircle", "points": 1, "circles": 1,
     "pattern": "OnCircle({0};{c0})", "distinct_groups": []},
    {"predicate": "Collinear", "points": 3, "circles": 0,
     "pattern": "Collinear({0},{1},{2})", "distinct_groups": [[0, 1, 2]]},
    {"predicate": "Concyclic", "points": 4, "circles": 0,
     "pattern": "Concyclic({0},{1},{2},{3})", "distinct_groups": [[0, 1, 2, 3]]},
    {"predicate": "Bisects", "points": 5, "circles": 0,
     "pattern": "Bisects({0}{1};{2}{3}{4})", "distinct_groups": [[0, 1], [2, 3, 4]]},
    {"predicate": "RightAngle", "points": 3, "circles": 0,
     "pattern": "RightAngle({0}{1}{2})", "distinct_groups": [[0, 1, 2]]},
    {"predicate": "ProductEqual", "points": 8, "circles": 0,
     "pattern": "ProductEqual(({0},{1}),({2},{3});({4},{5}),({6},{7}))",
     "distinct_groups": [[0, 1], [2, 3], [4, 5], [6, 7]]},
]

assert {t["predicate"] for t in STATEMENT_TEMPLATES} == {p.value for p in Predicate}


def problem_entities(problem: Problem) -> dict:
    points: set[str] = set()
    circles: set[str] = set()
    for stmt in problem.givens:
        points |= points_of(stmt)
        circles |= circles_of(stmt)
    for g in problem.graphs:
        for step in g.steps:
            points |= points_of(step.statement)
            circles |= circles_of(step.statement)
    return {"points": sorted(points), "circles": sorted(circles)}


def _problem_summary(problem: Problem) -> dict:
    return {
        "id": problem.id,
        "statement_text": problem.statement_text,
        "difficulty": problem.difficulty,
        "band": problem.band.value,
        "type_flags": list(problem.type_flags.set_flags()),
        "named_problem": problem.provenance.named_problem,
        "graph_count": len(problem.graphs),
    }


def _problem_detail(problem: Problem) -> dict:
    out = _problem_summary(problem)
    out["givens"] = [render(g) for g in problem.givens]
    out["attributes"] = {name: problem.attributes.get(name).value for name in ATTRIBUTE_NAMES}
    out["entities"] = problem_entities(problem)
    return out


def session_summary(session: Session) -> dict:
    best = session.best_graph()
    return {
        "session_id": session.id,
        "problem_id": session.problem.id,
        "status": session.status.value,
        "next_index": session.next_index,
        "best_graph": best,
        "coverage": round(session.coverage(best), 6) if best else 0.0,
        "lines": [
            {
                "index": line.index,
                "statement_text": line.statement_text,
                "reason_text": line.reason_text,
                "refs": list(line.refs),
                "verdict": verdict.as_dict(),
            }
            for line, verdict in zip(session.lines, session.verdicts)
        ],
    }


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, tuple[Session, threading.Lock]] = {}
        self._guard = threading.Lock()
        self._counter = itertools.count(1)

    def create(self, session: Session) -> None:
        with self._guard:
            self._sessions[session.id] = (session, threading.Lock())

    def next_id(self) -> str:
        with self._guard:
            return f"s{next(self._counter):06d}"

    def get(self, session_id: str) -> tuple[Session, threading.Lock]:
        with self._guard:
            if session_id not in self._sessions:
                raise UnknownSessionError(f"unknown session {session_id!r}")
            return self._sessions[session_id]


def create_app(catalog: Catalog, config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="geomtutor", version="1")
    store = SessionStore()
    matcher_config = config.matcher_config()

    @app.exception_handler(GeomError)
    async def _geom_error(request: Request, exc: GeomError):
        for cls, status in _STATUS_BY_ERROR:
            if isinstance(exc, cls):
                return JSONResponse(status_code=status, content=_error_payload(exc))
        return JSONResponse(status_code=500, content=_error_payload(exc))

    def get_problem(problem_id: str) -> Problem:
        if problem_id not in catalog.problems:
            raise UnknownProblemError(f"unknown problem {problem_id!r}")
        return catalog.problems[problem_id]

    @app.get("/api/v1/config")
    def get_config():
        return config.as_public_dict()

    @app.get("/api/v1/skills")
    def list_skills():
        return [
            {
                "id": s.id,
                "kind": s.kind.value,
                "name": s.name,
                "description": s.description,
                "aliases": list(s.aliases),
            }
            for s in sorted(catalog.skills.values(), key=lambda s: s.id)
        ]

    @app.get("/api/v1/problems")
    def list_problems(band: str | None = None, type: str | None = None, attr: str | None = None):
        problems = sorted(catalog.problems.values(), key=lambda p: p.id)
        if band is not None:
            bands = {b.value.lower(): b for b in DifficultyBand}
            if band.lower() not in bands:
                raise OutOfRangeError(f"unknown band {band!r}")
            problems = [p for p in problems if p.band is bands[band.lower()]]
        if type is not None:
            if type not in TYPE_FLAG_NAMES:
                raise OutOfRangeError(f"unknown type flag {type!r}")
            problems = [p for p in problems if getattr(p.type_flags, type)]
        if attr is not None:
            name, _, wanted = attr.partition(":")
            if name not in ATTRIBUTE_NAMES or wanted not in ("Yes", "Perhaps", "No"):
                raise OutOfRangeError(f"attr filter must look like key_problem:Yes, got {attr!r}")
            problems = [p for p in problems if p.attributes.get(name).value == wanted]
        return [_problem_summary(p) for p in problems]

    @app.get("/api/v1/problems/{problem_id}")
    def problem_detail(problem_id: str):
        return _problem_detail(get_problem(problem_id))

    @app.get("/api/v1/problems/{problem_id}/templates")
    def problem_templates(problem_id: str):
        if not config.constructed_mode_enabled:
            raise UnknownProblemError("constructed mode is disabled")  # 404 by contract
        problem = get_problem(problem_id)
        return {"templates": STATEMENT_TEMPLATES, "entities": problem_entities(problem)}

    @app.post("/api/v1/parse")
    def parse_endpoint(body: ParseIn):
        stmt = parse_statement(body.text)  # ParseError -> 422 with position
        return {"ok": True, "canonical": render(stmt), "predicate": stmt.predicate.value}

    @app.post("/api/v1/problem-sets")
    def problem_sets(body: ProblemSetIn):
        request = SetRequest(
            target=body.target,
            known=frozenset(body.known),
            count=body.count,
            difficulty_range=tuple(body.band) if body.band else None,
            mode=body.mode,
            ratio=body.ratio if body.ratio is not None else DEFAULT_EFFICIENCY_RATIO,
            reinforce=body.reinforce,
        )
        built = build_set(catalog, request)
        payload = built.as_dict()
        payload["report"] = explain_set(catalog, request, built)
        return payload

    @app.post("/api/v1/sessions", status_code=201)
    def create_session(body: SessionIn):
        problem = get_problem(body.problem_id)
        if not problem.graphs:
            raise NoGraphsError(f"problem {problem.id} has no solution graphs")
        session = Session(store.next_id(), catalog, problem, set(body.known), matcher_config)
        store.create(session)
        return session_summary(session)

    @app.post("/api/v1/sessions/{session_id}/lines")
    def post_line(session_id: str, body: LineIn):
        session, lock = store.get(session_id)
        with lock:
            if body.index is not None and body.index != session.next_index:
                raise BadIndexError(
                    f"expected line {session.next_index}, got {body.index} (stale submission)"
                )
            if not config.writein_enabled:
                parse_statement(body.statement_text)  # strict gate: 422 on failure
            line = ProofLine(
                index=session.next_index,
                statement_text=body.statement_text,
                reason_text=body.reason_text,
                refs=tuple(body.refs),
            )
            verdict = session.submit_line(line)
            return {"verdict": verdict.as_dict(), "session": session_summary(session)}

    @app.delete("/api/v1/sessions/{session_id}/lines/{index}")
    def delete_line(session_id: str, index: int):
        session, lock = store.get(session_id)
        with lock:
            session.retract_line(index)
            return {"session": session_summary(session)}

    @app.get("/api/v1/sessions/{session_id}/hint")
    def get_hint(session_id: str, level: int = 1):
        session, lock = store.get(session_id)
        with lock:
            return session.next_hint(level).as_dict()

    @app.get("/api/v1/sessions/{session_id}/report")
    def get_report(session_id: str):
        session, _ = store.get(session_id)
        return session.teacher_report().as_dict()

    @app.post("/api/v1/sessions/{session_id}/validate")
    def validate_range(session_id: str, request: Request):
        session, _ = store.get(session_id)
        params = request.query_params
        try:
            start = int(params.get("from", 1))
            end = int(params.get("to", len(session.lines)))
        except ValueError:
            raise BadRangeError("from/to must be integers")
        verdicts = session.validate_subsequence(start, end)
        return {"from": start, "to": end, "verdicts": [v.as_dict() for v in verdicts]}

    return app


def run_server(catalog: Catalog, config: ServiceConfig) -> None:
    import uvicorn

    app = create_app(catalog, config)
    uvicorn.run(app, host="127.0.0.1", port=config.port, log_level="warning")
