"""Skill and problem catalog with the full annotation schema.

Skills fall into three classes (facts, geometric objects, methods).
Problems carry a difficulty on a 1-40 scale, nine tri-state attributes,
seven type flags, provenance, and one or more solution graphs.

A catalog is an immutable snapshot: mutation helpers return a new catalog,
so snapshots can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import DuplicateIdError, EmptyNameError, OutOfRangeError
from .graphs import Diagnostic, SolutionGraph, skill_set, validate_dag
from .statements import CanonicalStatement


class SkillKind(Enum):
    FACT = "Fact"
    OBJECT = "Object"
    METHOD = "Method"


class AttributeValue(Enum):
    YES = "Yes"
    PERHAPS = "Perhaps"
    NO = "No"


class KeyProblemSubtype(Enum):
    PROBLEM_THEOREM = "ProblemTheorem"
    PROBLEM_METHOD = "ProblemMethod"


class DifficultyBand(Enum):
    BASIC = "Basic"
    ADVANCED = "Advanced"
    OLYMPIAD = "Olympiad"
    VERY_DIFFICULT = "VeryDifficult"


def difficulty_band(d: int) -> DifficultyBand:
    """Band for a 1-40 difficulty: 1-10 / 11-20 / 21-30 / 31-40."""
    if not isinstance(d, int) or isinstance(d, bool) or not 1 <= d <= 40:
        raise OutOfRangeError(f"difficulty {d!r} outside 1..40")
    if d <= 10:
        return DifficultyBand.BASIC
    if d <= 20:
        return DifficultyBand.ADVANCED
    if d <= 30:
        return DifficultyBand.OLYMPIAD
    return DifficultyBand.VERY_DIFFICULT


@dataclass(frozen=True)
class Skill:
    id: str
    kind: SkillKind
    name: str
    description: str = ""
    aliases: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.name.strip():
            raise EmptyNameError(f"skill {self.id!r} has an empty name")
        lowered = [a.lower() for a in self.aliases]
        if len(set(lowered)) != len(lowered) or self.name.lower() in lowered:
            raise ValueError(f"skill {self.id!r}: aliases must be distinct and differ from the name")


ATTRIBUTE_NAMES = (
    "key_problem",
    "synthetic",
    "technical",
    "aesthetic",
    "educational",
    "competition",
    "formal",
    "cumbersome",
    "important",
)


@dataclass(frozen=True)
class ProblemAttributes:
    key_problem: AttributeValue = AttributeValue.NO
    synthetic: AttributeValue = AttributeValue.NO
    technical: AttributeValue = AttributeValue.NO
    aesthetic: AttributeValue = AttributeValue.NO
    educational: AttributeValue = AttributeValue.NO
    competition: AttributeValue = AttributeValue.NO
    formal: AttributeValue = AttributeValue.NO
    cumbersome: AttributeValue = AttributeValue.NO
    important: AttributeValue = AttributeValue.NO
    key_problem_subtype: KeyProblemSubtype | None = None

    def __post_init__(self):
        if self.key_problem is AttributeValue.NO and self.key_problem_subtype is not None:
            raise ValueError("key_problem_subtype requires key_problem != No")

    def get(self, name: str) -> AttributeValue:
        if name not in ATTRIBUTE_NAMES:
            raise KeyError(name)
        return getattr(self, name)


TYPE_FLAG_NAMES = (
    "computational",
    "construction",
    "proof",
    "locus",
    "max_min",
    "cutting",
    "inequality",
)


@dataclass(frozen=True)
class ProblemTypeFlags:
    computational: bool = False
    construction: bool = False
    proof: bool = False
    locus: bool = False
    max_min: bool = False
    cutting: bool = False
    inequality: bool = False

    def __post_init__(self):
        if not any(getattr(self, n) for n in TYPE_FLAG_NAMES):
            raise ValueError("at least one type flag must be set")

    def set_flags(self) -> tuple[str, ...]:
        return tuple(n for n in TYPE_FLAG_NAMES if getattr(self, n))


@dataclass(frozen=True)
class Provenance:
    authors: tuple[str, ...] = ()
    sources: tuple[str, ...] = ()
    named_problem: str | None = None
    competitions: tuple[str, ...] = ()

    def __post_init__(self):
        if self.named_problem is not None and not self.named_problem.strip():
            raise ValueError("named_problem, when present, must be non-empty")


@dataclass(frozen=True)
class Problem:
    id: str
    statement_text: str
    givens: tuple[CanonicalStatement, ...]
    difficulty: int
    attributes: ProblemAttributes
    type_flags: ProblemTypeFlags
    provenance: Provenance = Provenance()
    graphs: tuple[SolutionGraph, ...] = ()

    def __post_init__(self):
        if not 1 <= self.difficulty <= 40:
            raise OutOfRangeError(f"problem {self.id!r}: difficulty {self.difficulty} outside 1..40")

    @property
    def band(self) -> DifficultyBand:
        return difficulty_band(self.difficulty)

    def graph(self, graph_id: str) -> SolutionGraph:
        for g in self.graphs:
            if g.id == graph_id:
                return g
        raise KeyError(graph_id)


@dataclass(frozen=True)
class Catalog:
    skills: dict[str, Skill] = field(default_factory=dict)
    problems: dict[str, Problem] = field(default_factory=dict)
    synonyms: dict[str, str] = field(default_factory=dict)  # alias token -> canonical token

    def skill_by_name_or_alias(self, text: str) -> Skill | None:
        needle = text.strip().lower()
        for skill in self.skills.values():
            if skill.name.lower() == needle or needle in (a.lower() for a in skill.aliases):
                return skill
        return None

    def all_graphs(self) -> list[SolutionGraph]:
        return [g for p in sorted(self.problems.values(), key=lambda p: p.id) for g in p.graphs]


def add_skill(catalog: Catalog, skill: Skill) -> Catalog:
    """Return a new catalog with ``skill`` added; ids must stay unique."""
    if skill.id in catalog.skills:
        raise DuplicateIdError(f"skill id {skill.id!r} already present")
    skills = dict(catalog.skills)
    skills[skill.id] = skill
    return replace(catalog, skills=skills)


def add_problem(catalog: Catalog, problem: Problem) -> Catalog:
    if problem.id in catalog.problems:
        raise DuplicateIdError(f"problem id {problem.id!r} already present")
    problems = dict(catalog.problems)
    problems[problem.id] = problem
    return replace(catalog, problems=problems)


def lint_catalog(catalog: Catalog) -> list[Diagnostic]:
    """Integrity diagnostics, deterministically ordered by (subject, code).

    Errors make a catalog unusable (dangling skills, bad graph structure,
    difficulty out of range); warnings flag schema smells (several type
    flags, key problem without a subtype, skills no graph ever applies).
    """
    diags: list[Diagnostic] = []

    referenced: set[str] = set()
    graph_ids: set[str] = set()
    for problem in catalog.problems.values():
        if not 1 <= problem.difficulty <= 40:  # unreachable via constructor, kept for raw loads
            diags.append(
                Diagnostic("Error", "DIFFICULTY_RANGE", problem.id, f"difficulty {problem.difficulty} outside 1..40")
            )
        if len(problem.type_flags.set_flags()) > 1:
            diags.append(
                Diagnostic(
                    "Warning",
                    "MULTI_TYPE",
                    problem.id,
                    "several type flags set: " + ", ".join(problem.type_flags.set_flags()),
                )
            )
        if (
            problem.attributes.key_problem is not AttributeValue.NO
            and problem.attributes.key_problem_subtype is None
        ):
            diags.append(Diagnostic("Warning", "KEY_NO_SUBTYPE", problem.id, "key problem without a subtype"))
        if not problem.graphs:
            diags.append(Diagnostic("Warning", "NO_GRAPHS", problem.id, "problem has no solution graphs yet"))
        for g in problem.graphs:
            if g.id in graph_ids:
                diags.append(Diagnostic("Error", "DUPLICATE_GRAPH", g.id, "duplicate graph id"))
            graph_ids.add(g.id)
            if g.problem_id != problem.id:
                diags.append(Diagnostic("Error", "WRONG_PROBLEM", g.id, "graph does not reference its problem"))
            diags.extend(validate_dag(g))
            for step in g.steps:
                if step.is_given:
                    if step.given_index is None or not 0 <= step.given_index < len(problem.givens):
                        diags.append(
                            Diagnostic(
                                "Error",
                                "BAD_GIVEN_INDEX",
                                f"{g.id}/{step.id}",
                                f"given index {step.given_index!r} does not name a premise",
                            )
                        )
                elif step.skill_id not in catalog.skills:
                    diags.append(
                        Diagnostic(
                            "Error", "DANGLING_SKILL", f"{g.id}/{step.id}", f"unknown skill {step.skill_id!r}"
                        )
                    )
            referenced |= set(skill_set(g))

    for skill_id in catalog.skills:
        if skill_id not in referenced:
            diags.append(Diagnostic("Warning", "UNUSED_SKILL", skill_id, "skill never applied by any graph"))

    diags.sort(key=lambda d: (d.subject, d.code))
    return diags


def lint_errors(diags: list[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diags if d.severity == "Error"]
