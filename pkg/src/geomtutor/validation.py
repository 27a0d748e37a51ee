"""Interactive proof sessions over known solution graphs.

Every submitted statement-reason line lands in exactly one of four classes:

  * IncorrectOrUnproven  - matches no step of any graph (off-graph)
  * CorrectUnjustified   - matches a step but neither the cited reason nor
                           the cited lines justify it yet
  * CorrectIrrelevant    - restates something already established, or only
                           advances an untouched route while another route
                           is half done
  * CorrectRelevant      - newly justified in at least one graph

Justification of a step in a graph needs all its dependencies established
there plus either a reason citing the step's skill or refs covering exactly
the step's non-Given dependencies.  Givens are pre-established everywhere.

Sessions replay deterministically: retraction rebuilds verdicts from the
surviving lines alone, so the verdict sequence is a pure function of the
submitted line sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    BadIndexError,
    BadRangeError,
    BadRefsError,
    NoFrontierError,
    NoSuchLineError,
    OutOfRangeError,
    SessionClosedError,
    UnknownSkillError,
)
from .graphs import SolutionGraph
from .matching import MatcherConfig, MatchResult, match_reason, match_statement
from .ontology import Catalog, Problem
from .statements import blank_template, render


class VerdictClass(Enum):
    INCORRECT_OR_UNPROVEN = "IncorrectOrUnproven"
    CORRECT_UNJUSTIFIED = "CorrectUnjustified"
    CORRECT_IRRELEVANT = "CorrectIrrelevant"
    CORRECT_RELEVANT = "CorrectRelevant"


class SessionStatus(Enum):
    OPEN = "Open"
    COMPLETE = "Complete"
    ABANDONED = "Abandoned"


FOREIGN_ROUTE_BAR = 0.5  # best-graph coverage above which untouched routes look stray


@dataclass(frozen=True)
class ProofLine:
    index: int
    statement_text: str
    reason_text: str
    refs: tuple[int, ...] = ()


@dataclass(frozen=True)
class LineVerdict:
    verdict: VerdictClass
    matched: MatchResult | None
    justified_in: frozenset[str]
    notes: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "class": self.verdict.value,
            "matched": self.matched.as_dict() if self.matched else None,
            "justified_in": sorted(self.justified_in),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class Hint:
    graph_id: str
    step_id: str
    level: int
    skill_name: str
    template: str | None
    statement: str | None

    def as_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "step_id": self.step_id,
            "level": self.level,
            "skill_name": self.skill_name,
            "template": self.template,
            "statement": self.statement,
        }


@dataclass(frozen=True)
class TeacherReport:
    problem_id: str
    status: SessionStatus
    best_graph: str | None
    coverage: float
    manual_review: bool
    unmatched_lines: tuple[int, ...]
    lines: tuple[ProofLine, ...]
    verdicts: tuple[LineVerdict, ...]

    def as_dict(self) -> dict:
        return {
            "problem_id": self.problem_id,
            "status": self.status.value,
            "best_graph": self.best_graph,
            "coverage": round(self.coverage, 6),
            "manual_review": self.manual_review,
            "unmatched_lines": list(self.unmatched_lines),
            "lines": [
                {
                    "index": line.index,
                    "statement_text": line.statement_text,
                    "reason_text": line.reason_text,
                    "refs": list(line.refs),
                    "verdict": verdict.as_dict(),
                }
                for line, verdict in zip(self.lines, self.verdicts)
            ],
        }


class Session:
    """One student's proof attempt on one problem; a serial state machine."""

    def __init__(
        self,
        session_id: str,
        catalog: Catalog,
        problem: Problem,
        known_skills: set[str] | frozenset[str] = frozenset(),
        config: MatcherConfig | None = None,
    ):
        unknown = set(known_skills) - set(catalog.skills)
        if unknown:
            raise UnknownSkillError(f"unknown skills in profile: {sorted(unknown)}")
        self.id = session_id
        self.catalog = catalog
        self.problem = problem
        self.known_skills = frozenset(known_skills)
        self.config = config or MatcherConfig()
        self.lines: list[ProofLine] = []
        self.verdicts: list[LineVerdict] = []
        self._line_steps: list[dict[str, str]] = []  # per line: graph id -> matched step id
        self.established: dict[str, set[str]] = {
            g.id: {s.id for s in g.given_steps()} for g in problem.graphs
        }
        self.hint_levels: dict[str, int] = {}
        self.status = SessionStatus.OPEN

    # -- queries ------------------------------------------------------------

    def coverage(self, graph_id: str) -> float:
        graph = self.problem.graph(graph_id)
        total = len(graph.non_given_steps())
        if total == 0:
            return 0.0
        done = sum(1 for s in graph.non_given_steps() if s.id in self.established[graph_id])
        return done / total

    def best_graph(self) -> str | None:
        if not self.problem.graphs:
            return None
        return min(((-self.coverage(g.id), g.id) for g in self.problem.graphs))[1]

    @property
    def next_index(self) -> int:
        return len(self.lines) + 1

    # -- mutations ----------------------------------------------------------

    def submit_line(self, line: ProofLine) -> LineVerdict:
        if self.status is not SessionStatus.OPEN:
            raise SessionClosedError(f"session {self.id} is {self.status.value}")
        if line.index != self.next_index:
            raise BadIndexError(f"expected line {self.next_index}, got {line.index}")
        bad = [r for r in line.refs if not 1 <= r < line.index]
        if bad:
            raise BadRefsError(f"refs must cite earlier lines; bad: {bad}")
        return self._apply(line)

    def retract_line(self, index: int) -> None:
        if not 1 <= index <= len(self.lines):
            raise NoSuchLineError(f"no line {index}")
        survivors = [ln for i, ln in enumerate(self.lines, 1) if i != index]
        self._replay(survivors)

    def _replay(self, raw_lines: list[ProofLine]) -> None:
        self.lines = []
        self.verdicts = []
        self._line_steps = []
        self.established = {g.id: {s.id for s in g.given_steps()} for g in self.problem.graphs}
        self.status = SessionStatus.OPEN
        for pos, line in enumerate(raw_lines, 1):
            if self.status is not SessionStatus.OPEN:
                break  # lines cannot exist past completion; drop them
            self._apply(ProofLine(pos, line.statement_text, line.reason_text, line.refs))

    def _apply(self, line: ProofLine) -> LineVerdict:
        """Classify, record and establish; refs out of range merely fail."""
        verdict = self._classify(line)
        self.lines.append(line)
        self.verdicts.append(verdict)
        for gid in verdict.justified_in:
            step_id = self._match_map(line, gid)
            if step_id is not None:
                self.established[gid].add(step_id)
        if any(
            g.goal is not None and g.goal.id in self.established[g.id] for g in self.problem.graphs
        ):
            self.status = SessionStatus.COMPLETE
        return verdict

    # -- classification -----------------------------------------------------

    def _matches_for(self, line: ProofLine) -> tuple[MatchResult | None, dict[str, str]]:
        results = match_statement(
            line.statement_text,
            self.problem,
            self.problem.graphs,
            self.config,
            self.catalog.synonyms,
        )
        if not results:
            return None, {}
        best = results[0]
        best_stmt = self.problem.graph(best.target.graph_id).step(best.target.step_id).statement
        by_graph: dict[str, str] = {}
        for r in results:
            stmt = self.problem.graph(r.target.graph_id).step(r.target.step_id).statement
            if stmt == best_stmt and r.target.graph_id not in by_graph:
                by_graph[r.target.graph_id] = r.target.step_id
        return best, by_graph

    def _match_map(self, line: ProofLine, graph_id: str) -> str | None:
        pos = line.index - 1
        if pos < len(self._line_steps):
            return self._line_steps[pos].get(graph_id)
        return None

    def _classify(self, line: ProofLine) -> LineVerdict:
        best, by_graph = self._matches_for(line)
        self._line_steps.append(dict(by_graph))
        if best is None:
            return LineVerdict(VerdictClass.INCORRECT_OR_UNPROVEN, None, frozenset(), ("OFF_GRAPH",))

        notes: list[str] = []
        if best.confidence < self.config.auto_accept_threshold:
            notes.append("LOW_CONFIDENCE")

        best_cov = max((self.coverage(g.id) for g in self.problem.graphs), default=0.0)
        justified: set[str] = set()
        already_everywhere = True
        fail_notes: list[str] = []
        for gid in sorted(by_graph):
            step_id = by_graph[gid]
            graph = self.problem.graph(gid)
            step = graph.step(step_id)
            established = self.established[gid]
            if step_id in established:
                continue
            already_everywhere = False
            deps = graph.dependencies(step_id)
            missing = [d for d in deps if d not in established]
            if missing:
                fail_notes.append(f"MISSING_DEPS:{gid}:{','.join(sorted(missing))}")
                continue
            reason_ok = False
            if step.skill_id is not None and step.skill_id in self.catalog.skills:
                reason_ok, _ = match_reason(
                    line.reason_text, self.catalog.skills[step.skill_id], self.catalog.synonyms
                )
            refs_ok = self._refs_justify(line, graph, step_id, established)
            if reason_ok or refs_ok:
                justified.add(gid)
            else:
                fail_notes.append(f"BAD_REASON:{gid}")

        if justified:
            return LineVerdict(
                VerdictClass.CORRECT_RELEVANT, best, frozenset(justified), tuple(sorted(notes))
            )
        if by_graph and already_everywhere:
            return LineVerdict(
                VerdictClass.CORRECT_IRRELEVANT, best, frozenset(), tuple(sorted(notes + ["DUPLICATE"]))
            )
        matched_cov = [self.coverage(gid) for gid in by_graph]
        if by_graph and best_cov >= FOREIGN_ROUTE_BAR and all(c == 0.0 for c in matched_cov):
            return LineVerdict(
                VerdictClass.CORRECT_IRRELEVANT,
                best,
                frozenset(),
                tuple(sorted(notes + ["FOREIGN_ROUTE"])),
            )
        return LineVerdict(
            VerdictClass.CORRECT_UNJUSTIFIED, best, frozenset(), tuple(sorted(notes + fail_notes))
        )

    def _refs_justify(
        self, line: ProofLine, graph: SolutionGraph, step_id: str, established: set[str]
    ) -> bool:
        if not line.refs:
            return False
        deps = set(graph.dependencies(step_id))
        covered: set[str] = set()
        for r in line.refs:
            if not 1 <= r < line.index or r > len(self._line_steps):
                return False  # dangling after retraction; not an error, just no support
            target = self._line_steps[r - 1].get(graph.id)
            if target is None or target not in established or target not in deps:
                return False
            covered.add(target)
        uncovered = deps - covered
        return all(graph.step(d).is_given for d in uncovered)

    # -- hints ----------------------------------------------------------------

    def _distance_to_goal(self, graph: SolutionGraph, step_id: str) -> int:
        """Longest count of unestablished steps strictly after ``step_id``
        on any path to the goal."""
        goal = graph.goal
        assert goal is not None
        established = self.established[graph.id]
        memo: dict[str, int] = {goal.id: 0}

        def walk(sid: str) -> int:
            if sid in memo:
                return memo[sid]
            best = -1
            for nxt in graph.dependents(sid):
                sub = walk(nxt)
                if sub < 0:
                    continue
                best = max(best, sub + (0 if nxt in established else 1))
            memo[sid] = best
            return best

        return walk(step_id)

    def frontier(self, graph_id: str) -> list[str]:
        graph = self.problem.graph(graph_id)
        established = self.established[graph_id]
        out = []
        for step in graph.non_given_steps():
            if step.id in established:
                continue
            deps = graph.dependencies(step.id)
            if all(d in established for d in deps):
                out.append(step.id)
        return sorted(out)

    def next_hint(self, level: int) -> Hint:
        if level not in (1, 2, 3):
            raise OutOfRangeError(f"hint level {level!r} not in 1..3")
        gid = self.best_graph()
        if gid is None:
            raise NoFrontierError("problem has no solution graphs")
        graph = self.problem.graph(gid)
        if graph.goal is not None and graph.goal.id in self.established[gid]:
            raise NoFrontierError("goal already established")
        steps = self.frontier(gid)
        if not steps:
            raise NoFrontierError("nothing left to hint")
        chosen = min(steps, key=lambda sid: (self._distance_to_goal(graph, sid), sid))
        effective = max(level, self.hint_levels.get(chosen, 0))
        self.hint_levels[chosen] = effective
        step = graph.step(chosen)
        skill = self.catalog.skills.get(step.skill_id or "")
        return Hint(
            graph_id=gid,
            step_id=chosen,
            level=effective,
            skill_name=skill.name if skill else "",
            template=blank_template(step.statement) if effective >= 2 else None,
            statement=render(step.statement) if effective >= 3 else None,
        )

    # -- reports --------------------------------------------------------------

    def teacher_report(self) -> TeacherReport:
        unmatched = tuple(
            line.index for line, v in zip(self.lines, self.verdicts) if v.matched is None
        )
        low = any(
            v.matched is not None and v.matched.confidence < self.config.auto_accept_threshold
            for v in self.verdicts
        )
        best = self.best_graph()
        return TeacherReport(
            problem_id=self.problem.id,
            status=self.status,
            best_graph=best,
            coverage=self.coverage(best) if best else 0.0,
            manual_review=bool(unmatched) or low,
            unmatched_lines=unmatched,
            lines=tuple(self.lines),
            verdicts=tuple(self.verdicts),
        )

    def validate_subsequence(self, start: int, end: int) -> list[LineVerdict]:
        """Re-classify lines [start..end] as if they were the whole proof."""
        if not (1 <= start <= end <= len(self.lines)):
            raise BadRangeError(f"bad range {start}..{end} for {len(self.lines)} lines")
        shadow = Session(self.id + ":sub", self.catalog, self.problem, self.known_skills, self.config)
        shadow._replay(self.lines[start - 1 : end])
        return list(shadow.verdicts)


def replay_session(
    session_id: str,
    catalog: Catalog,
    problem: Problem,
    lines: list[ProofLine],
    known_skills: set[str] | frozenset[str] = frozenset(),
    config: MatcherConfig | None = None,
) -> Session:
    """Build a session by replaying stored lines (the batch-validation path)."""
    session = Session(session_id, catalog, problem, known_skills, config)
    session._replay(list(lines))
    return session
