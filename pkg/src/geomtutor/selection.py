"""Problem-set construction for a target skill against a student profile.

A problem qualifies when
  C1 (feasibility)   some graph uses only known skills plus the target,
  C2 (integration)   that same graph actually applies the target, and
  C3 (necessity)     no accessible alternative skips the target - strictly,
                     or, in efficiency mode, every such alternative costs at
                     least ``ratio`` times the cheapest target solution.

Qualifying problems are ranked by the requested attribute preferences
(Yes > Perhaps > No, invertible per attribute), then difficulty, then id.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoGraphsError, OutOfRangeError, UnknownSkillError
from .graphs import graph_cost, shortcut_exists, skill_set
from .ontology import ATTRIBUTE_NAMES, AttributeValue, Catalog, Problem, difficulty_band

DEFAULT_EFFICIENCY_RATIO = 1.5

# (attribute, preferred value first); "Yes" means prefer Yes, "No" prefer No
DEFAULT_ATTRIBUTE_PREFS: tuple[tuple[str, str], ...] = (
    ("key_problem", "Yes"),
    ("educational", "Yes"),
    ("cumbersome", "No"),
)


@dataclass(frozen=True)
class SetRequest:
    target: str
    known: frozenset[str]
    count: int
    difficulty_range: tuple[int, int] | None = None
    mode: str = "strict"  # "strict" | "efficiency"
    ratio: float = DEFAULT_EFFICIENCY_RATIO
    attribute_prefs: tuple[tuple[str, str], ...] = DEFAULT_ATTRIBUTE_PREFS
    reinforce: bool = False

    def __post_init__(self):
        if self.count < 1:
            raise OutOfRangeError("count must be positive")
        if self.mode not in ("strict", "efficiency"):
            raise OutOfRangeError(f"unknown mode {self.mode!r}")
        if self.mode == "efficiency" and not self.ratio > 1.0:
            raise OutOfRangeError("efficiency ratio must exceed 1")
        if self.difficulty_range is not None:
            lo, hi = self.difficulty_range
            if not (1 <= lo <= hi <= 40):
                raise OutOfRangeError(f"difficulty range {self.difficulty_range} outside 1..40")
        if not self.reinforce and self.target in self.known:
            raise OutOfRangeError(
                "target already known; pass reinforce=True for reinforcement sets"
            )
        for name, direction in self.attribute_prefs:
            if name not in ATTRIBUTE_NAMES or direction not in ("Yes", "No"):
                raise OutOfRangeError(f"bad attribute preference ({name}, {direction})")


@dataclass(frozen=True)
class Eligibility:
    problem_id: str
    eligible: bool
    c1_feasible: bool
    c2_integrates: bool
    c3_necessary: bool
    witness_graph: str | None  # cheapest graph satisfying C1 and C2
    shortcut_graph: str | None  # accessible target-free alternative, if any
    target_cost: float | None
    shortcut_cost: float | None

    def as_dict(self) -> dict:
        return {
            "problem_id": self.problem_id,
            "eligible": self.eligible,
            "criteria": {
                "feasible": self.c1_feasible,
                "integrates_target": self.c2_integrates,
                "necessary_or_efficient": self.c3_necessary,
            },
            "witness_graph": self.witness_graph,
            "shortcut_graph": self.shortcut_graph,
            "target_cost": self.target_cost,
            "shortcut_cost": self.shortcut_cost,
        }


def _check_skills(catalog: Catalog, request: SetRequest) -> None:
    missing = [s for s in {request.target, *request.known} if s not in catalog.skills]
    if missing:
        raise UnknownSkillError(f"unknown skills: {sorted(missing)}")


def eligible(problem: Problem, request: SetRequest, catalog: Catalog | None = None) -> Eligibility:
    """Evaluate the three criteria with witnesses; see module docstring."""
    if catalog is not None:
        _check_skills(catalog, request)
    if not problem.graphs:
        raise NoGraphsError(f"problem {problem.id} has no solution graphs")
    known = set(request.known)
    reachable = known | {request.target}

    witness: str | None = None
    target_cost: float | None = None
    feasible_any = False
    for g in sorted(problem.graphs, key=lambda g: g.id):
        skills = skill_set(g)
        if skills <= reachable:
            feasible_any = True
            if request.target in skills:
                cost = graph_cost(g)
                if target_cost is None or cost < target_cost:
                    witness, target_cost = g.id, cost

    c1 = feasible_any
    c2 = witness is not None  # some feasible graph also integrates the target
    has_shortcut, shortcut_graph = shortcut_exists(problem.graphs, known, request.target)
    shortcut_cost = None
    if shortcut_graph is not None:
        shortcut_cost = graph_cost(problem.graph(shortcut_graph))

    if request.reinforce:
        c3 = True
    elif request.mode == "strict":
        c3 = not has_shortcut
    else:
        if not has_shortcut or target_cost is None:
            c3 = not has_shortcut
        else:
            c3 = all(
                graph_cost(g) >= request.ratio * target_cost
                for g in problem.graphs
                if request.target not in skill_set(g) and skill_set(g) <= known
            )

    return Eligibility(
        problem_id=problem.id,
        eligible=bool(c2 and c3),
        c1_feasible=c1,
        c2_integrates=c2,
        c3_necessary=bool(c3),
        witness_graph=witness,
        shortcut_graph=shortcut_graph,
        target_cost=target_cost,
        shortcut_cost=shortcut_cost,
    )


_ORDINAL = {AttributeValue.YES: 0, AttributeValue.PERHAPS: 1, AttributeValue.NO: 2}


def _rank_key(problem: Problem, prefs: tuple[tuple[str, str], ...]) -> tuple:
    key = []
    for name, direction in prefs:
        ordinal = _ORDINAL[problem.attributes.get(name)]
        key.append(ordinal if direction == "Yes" else 2 - ordinal)
    key.append(problem.difficulty)
    key.append(problem.id)
    return tuple(key)


@dataclass(frozen=True)
class BuiltSet:
    problem_ids: tuple[str, ...]
    explanations: tuple[Eligibility, ...]
    shortfall: bool

    def as_dict(self) -> dict:
        return {
            "problems": list(self.problem_ids),
            "explanations": [e.as_dict() for e in self.explanations],
            "shortfall": self.shortfall,
        }


def build_set(catalog: Catalog, request: SetRequest) -> BuiltSet:
    """Filter by the criteria and difficulty window, rank, cut to count."""
    _check_skills(catalog, request)
    picked: list[tuple[tuple, Problem, Eligibility]] = []
    for problem in catalog.problems.values():
        if not problem.graphs:
            continue
        if request.difficulty_range is not None:
            lo, hi = request.difficulty_range
            if not lo <= problem.difficulty <= hi:
                continue
        record = eligible(problem, request)
        if record.eligible:
            picked.append((_rank_key(problem, request.attribute_prefs), problem, record))
    picked.sort(key=lambda item: item[0])
    chosen = picked[: request.count]
    return BuiltSet(
        problem_ids=tuple(p.id for _, p, _ in chosen),
        explanations=tuple(rec for _, _, rec in chosen),
        shortfall=len(picked) < request.count,
    )


def explain_set(catalog: Catalog, request: SetRequest, built: BuiltSet) -> dict:
    """Teacher-facing rationale: one block per problem plus set-level notes."""
    blocks = []
    for pid, record in zip(built.problem_ids, built.explanations):
        problem = catalog.problems[pid]
        blocks.append(
            {
                "problem_id": pid,
                "statement_text": problem.statement_text,
                "difficulty": problem.difficulty,
                "band": difficulty_band(problem.difficulty).value,
                "witness_graph": record.witness_graph,
                "criteria": record.as_dict()["criteria"],
                "shortcut_graph": record.shortcut_graph,
            }
        )
    notes = []
    if built.shortfall:
        notes.append("SHORTFALL")
    return {
        "target": request.target,
        "mode": request.mode,
        "ratio": request.ratio if request.mode == "efficiency" else None,
        "blocks": blocks,
        "notes": notes,
    }
