"""Solution graphs: DAGs of skill-tagged steps for one solution of a problem.

Edges point from a prerequisite step to the step that depends on it.  All
predecessors of a step are required (AND semantics); alternative solutions
are separate graphs on the same problem.  Exactly one step is the goal.
Given steps restate a problem premise, carry no skill and have in-degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .statements import CanonicalStatement


@dataclass(frozen=True)
class Step:
    id: str
    statement: CanonicalStatement
    skill_id: str | None = None  # None marks a Given step
    given_index: int | None = None  # which problem premise a Given restates
    is_goal: bool = False

    @property
    def is_given(self) -> bool:
        return self.skill_id is None


@dataclass(frozen=True)
class SolutionGraph:
    id: str
    problem_id: str
    steps: tuple[Step, ...]
    edges: tuple[tuple[str, str], ...]  # (prerequisite, dependent)

    def step(self, step_id: str) -> Step:
        return self._by_id[step_id]

    @property
    def _by_id(self) -> dict[str, Step]:
        return {s.id: s for s in self.steps}

    def dependencies(self, step_id: str) -> tuple[str, ...]:
        return tuple(sorted(frm for frm, to in self.edges if to == step_id))

    def dependents(self, step_id: str) -> tuple[str, ...]:
        return tuple(sorted(to for frm, to in self.edges if frm == step_id))

    @property
    def goal(self) -> Step | None:
        goals = [s for s in self.steps if s.is_goal]
        return goals[0] if len(goals) == 1 else None

    def given_steps(self) -> tuple[Step, ...]:
        return tuple(s for s in self.steps if s.is_given)

    def non_given_steps(self) -> tuple[Step, ...]:
        return tuple(s for s in self.steps if not s.is_given)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "Error" | "Warning"
    code: str
    subject: str
    message: str

    def as_dict(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "subject": self.subject,
            "message": self.message,
        }


def _ancestors(graph: SolutionGraph, step_id: str) -> set[str]:
    preds: dict[str, list[str]] = {s.id: [] for s in graph.steps}
    for frm, to in graph.edges:
        preds.setdefault(to, []).append(frm)
    seen: set[str] = set()
    stack = list(preds.get(step_id, []))
    while stack:
        cur = stack.pop()
        if cur in seen:
            continue
        seen.add(cur)
        stack.extend(preds.get(cur, []))
    return seen


def _find_cycle(graph: SolutionGraph) -> list[str] | None:
    """Return one witness cycle as a step-id list, or None."""
    succ: dict[str, list[str]] = {s.id: [] for s in graph.steps}
    for frm, to in graph.edges:
        if frm in succ:
            succ[frm].append(to)
    color: dict[str, int] = {}
    stack_path: list[str] = []

    def visit(node: str) -> list[str] | None:
        color[node] = 1
        stack_path.append(node)
        for nxt in sorted(succ.get(node, [])):
            if color.get(nxt, 0) == 1:
                return stack_path[stack_path.index(nxt):]
            if color.get(nxt, 0) == 0:
                found = visit(nxt)
                if found:
                    return found
        stack_path.pop()
        color[node] = 2
        return None

    for sid in sorted(succ):
        if color.get(sid, 0) == 0:
            cycle = visit(sid)
            if cycle:
                return cycle
    return None


def validate_dag(graph: SolutionGraph) -> list[Diagnostic]:
    """Structural checks: acyclicity, goal uniqueness, no dead steps.

    Returns diagnostics sorted by (subject, code); an empty list means ok.
    """
    diags: list[Diagnostic] = []
    ids = [s.id for s in graph.steps]
    seen: set[str] = set()
    for sid in ids:
        if sid in seen:
            diags.append(Diagnostic("Error", "DUPLICATE_STEP", f"{graph.id}/{sid}", "duplicate step id"))
        seen.add(sid)
    known = set(ids)
    for frm, to in graph.edges:
        for end in (frm, to):
            if end not in known:
                diags.append(Diagnostic("Error", "DANGLING_EDGE", f"{graph.id}/{end}", "edge endpoint is not a step"))

    cycle = _find_cycle(graph)
    if cycle:
        diags.append(
            Diagnostic("Error", "CYCLE", graph.id, "dependency cycle: " + " -> ".join(cycle + cycle[:1]))
        )

    goals = [s for s in graph.steps if s.is_goal]
    if not goals:
        diags.append(Diagnostic("Error", "MISSING_GOAL", graph.id, "no goal step"))
    elif len(goals) > 1:
        diags.append(Diagnostic("Error", "MULTIPLE_GOALS", graph.id, "more than one goal step"))
    elif goals[0].is_given:
        diags.append(Diagnostic("Error", "GOAL_IS_GIVEN", f"{graph.id}/{goals[0].id}", "goal step is a Given"))

    indeg: dict[str, int] = {s.id: 0 for s in graph.steps}
    for frm, to in graph.edges:
        if to in indeg:
            indeg[to] += 1
    for s in graph.steps:
        if s.is_given and indeg[s.id] > 0:
            diags.append(Diagnostic("Error", "GIVEN_WITH_DEPS", f"{graph.id}/{s.id}", "Given step has incoming edges"))

    if len(goals) == 1 and not cycle:
        reach = _ancestors(graph, goals[0].id)
        for s in graph.steps:
            if not s.is_given and not s.is_goal and s.id not in reach:
                diags.append(
                    Diagnostic("Error", "DEAD_STEP", f"{graph.id}/{s.id}", "step has no path to the goal")
                )

    diags.sort(key=lambda d: (d.subject, d.code))
    return diags


def skill_set(graph: SolutionGraph) -> frozenset[str]:
    """Distinct skills applied by the graph's non-Given steps."""
    return frozenset(s.skill_id for s in graph.steps if s.skill_id is not None)


def graph_cost(graph: SolutionGraph, weights: Mapping[str, float] | None = None) -> float:
    """Total step cost; repeated applications of one skill all count."""
    weights = weights or {}
    return float(sum(weights.get(s.skill_id, 1.0) for s in graph.steps if s.skill_id is not None))


def requires_skill(graphs: Iterable[SolutionGraph], skill: str) -> str:
    """'EveryGraph', 'SomeGraphs' or 'NoGraph' membership of ``skill``."""
    sets = [skill_set(g) for g in graphs]
    if not sets:
        raise ValueError("problem has no graphs")
    hits = sum(1 for s in sets if skill in s)
    if hits == len(sets):
        return "EveryGraph"
    return "SomeGraphs" if hits else "NoGraph"


def shortcut_exists(
    graphs: Iterable[SolutionGraph], known: frozenset[str] | set[str], target: str
) -> tuple[bool, str | None]:
    """Is there a solution the student can already execute that skips ``target``?

    Returns (found, witness graph id); the witness is the first in id order.
    """
    for g in sorted(graphs, key=lambda g: g.id):
        skills = skill_set(g)
        if target not in skills and skills <= set(known):
            return True, g.id
    return False, None
