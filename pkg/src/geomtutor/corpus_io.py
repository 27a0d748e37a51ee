"""On-disk corpus and proof-script formats (schema version 1).

A corpus is one JSON document holding skills, problems (solution graphs
embedded) and the synonym table.  Statements are stored in their canonical
rendering and re-parsed on load.  The writer is canonical: sorted keys,
two-space indent, UTF-8, LF, trailing newline - saving the same catalog
twice yields byte-identical files.

All malformed input is reported as CorpusFormatError carrying the file
path and a JSON pointer to the offending element; structural integrity
failures surface as LintFailureError with the lint diagnostics.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import (
    ArityError,
    CorpusFormatError,
    CorpusIoError,
    EmptyNameError,
    LintFailureError,
    OutOfRangeError,
    ParseError,
    SchemaVersionMismatchError,
    UnsupportedFormatError,
)
from .graphs import Diagnostic, SolutionGraph, Step
from .ontology import (
    ATTRIBUTE_NAMES,
    TYPE_FLAG_NAMES,
    AttributeValue,
    Catalog,
    KeyProblemSubtype,
    Problem,
    ProblemAttributes,
    ProblemTypeFlags,
    Provenance,
    Skill,
    SkillKind,
    lint_catalog,
    lint_errors,
)
from .statements import parse_statement, render
from .validation import ProofLine

SCHEMA_VERSION = 1


def canonical_json(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# guarded readers


class _Reader:
    def __init__(self, path: str):
        self.path = path

    def fail(self, pointer: str, message: str):
        raise CorpusFormatError(self.path, pointer, message)

    def obj(self, value, pointer: str) -> dict:
        if not isinstance(value, dict):
            self.fail(pointer, f"expected object, got {type(value).__name__}")
        return value

    def arr(self, value, pointer: str) -> list:
        if not isinstance(value, list):
            self.fail(pointer, f"expected array, got {type(value).__name__}")
        return value

    def str_(self, value, pointer: str) -> str:
        if not isinstance(value, str):
            self.fail(pointer, f"expected string, got {type(value).__name__}")
        return value

    def int_(self, value, pointer: str) -> int:
        if not isinstance(value, int) or isinstance(value, bool):
            self.fail(pointer, f"expected integer, got {type(value).__name__}")
        return value

    def bool_(self, value, pointer: str) -> bool:
        if not isinstance(value, bool):
            self.fail(pointer, f"expected boolean, got {type(value).__name__}")
        return value

    def get(self, mapping: dict, key: str, pointer: str):
        if key not in mapping:
            self.fail(pointer, f"missing key {key!r}")
        return mapping[key]

    def statement(self, value, pointer: str):
        text = self.str_(value, pointer)
        try:
            return parse_statement(text)
        except (ParseError, ArityError) as exc:
            self.fail(pointer, f"bad statement {text!r}: {exc}")

    def str_list(self, value, pointer: str) -> tuple[str, ...]:
        return tuple(self.str_(v, f"{pointer}/{i}") for i, v in enumerate(self.arr(value, pointer)))


def _read_json(path: str | Path) -> tuple[Any, str]:
    p = str(path)
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusIoError(f"cannot read {p}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise CorpusFormatError(p, "", f"not valid UTF-8: {exc}")
    try:
        return json.loads(raw), p
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(p, f"line {exc.lineno} column {exc.colno}", exc.msg)


# ---------------------------------------------------------------------------
# corpus


def load_corpus(path: str | Path) -> Catalog:
    """Read, schema-check, parse statements, lint; errors abort the load."""
    catalog, diagnostics = load_corpus_unchecked(path)
    errors = lint_errors(diagnostics)
    if errors:
        raise LintFailureError(errors)
    return catalog


def load_corpus_unchecked(path: str | Path) -> tuple[Catalog, list[Diagnostic]]:
    """Like load_corpus, but returns lint diagnostics instead of raising.

    Structurally malformed files (bad JSON, unparseable statements, wrong
    types) still raise; only integrity findings are deferred to the caller.
    """
    data, p = _read_json(path)
    r = _Reader(p)
    root = r.obj(data, "")
    version = r.get(root, "schema_version", "")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatchError(version, SCHEMA_VERSION)

    duplicates: list[Diagnostic] = []

    skills: dict[str, Skill] = {}
    for i, raw in enumerate(r.arr(r.get(root, "skills", ""), "/skills")):
        ptr = f"/skills/{i}"
        obj = r.obj(raw, ptr)
        kind_text = r.str_(r.get(obj, "kind", ptr), f"{ptr}/kind")
        try:
            kind = SkillKind(kind_text)
        except ValueError:
            r.fail(f"{ptr}/kind", f"unknown skill kind {kind_text!r}")
        sid = r.str_(r.get(obj, "id", ptr), f"{ptr}/id")
        name = r.str_(r.get(obj, "name", ptr), f"{ptr}/name")
        description = r.str_(obj.get("description", ""), f"{ptr}/description")
        aliases = r.str_list(obj.get("aliases", []), f"{ptr}/aliases")
        try:
            skill = Skill(id=sid, kind=kind, name=name, description=description, aliases=aliases)
        except (ValueError, EmptyNameError) as exc:
            r.fail(ptr, str(exc))
        if skill.id in skills:
            duplicates.append(Diagnostic("Error", "DUPLICATE_ID", skill.id, "duplicate skill id"))
        skills[skill.id] = skill

    problems: dict[str, Problem] = {}
    for i, raw in enumerate(r.arr(r.get(root, "problems", ""), "/problems")):
        ptr = f"/problems/{i}"
        problem = _load_problem(r, raw, ptr)
        if problem.id in problems:
            duplicates.append(Diagnostic("Error", "DUPLICATE_ID", problem.id, "duplicate problem id"))
        problems[problem.id] = problem

    synonyms: dict[str, str] = {}
    for i, raw in enumerate(r.arr(root.get("synonym_table", []), "/synonym_table")):
        ptr = f"/synonym_table/{i}"
        pair = r.arr(raw, ptr)
        if len(pair) != 2:
            r.fail(ptr, "synonym entries are [alias, canonical] pairs")
        alias = r.str_(pair[0], f"{ptr}/0").lower()
        synonyms[alias] = r.str_(pair[1], f"{ptr}/1").lower()

    catalog = Catalog(skills=skills, problems=problems, synonyms=synonyms)
    diagnostics = duplicates + lint_catalog(catalog)
    diagnostics.sort(key=lambda d: (d.subject, d.code))
    return catalog, diagnostics


def _load_problem(r: _Reader, raw, ptr: str) -> Problem:
    obj = r.obj(raw, ptr)
    pid = r.str_(r.get(obj, "id", ptr), f"{ptr}/id")
    givens = tuple(
        r.statement(v, f"{ptr}/givens/{i}")
        for i, v in enumerate(r.arr(r.get(obj, "givens", ptr), f"{ptr}/givens"))
    )

    attrs_ptr = f"{ptr}/attributes"
    attrs_obj = r.obj(r.get(obj, "attributes", ptr), attrs_ptr)
    attr_values = {}
    for name in ATTRIBUTE_NAMES:
        text = r.str_(attrs_obj.get(name, "No"), f"{attrs_ptr}/{name}")
        try:
            attr_values[name] = AttributeValue(text)
        except ValueError:
            r.fail(f"{attrs_ptr}/{name}", f"attribute values are Yes/Perhaps/No, got {text!r}")
    subtype_raw = attrs_obj.get("key_problem_subtype")
    subtype = None
    if subtype_raw is not None:
        try:
            subtype = KeyProblemSubtype(r.str_(subtype_raw, f"{attrs_ptr}/key_problem_subtype"))
        except ValueError:
            r.fail(f"{attrs_ptr}/key_problem_subtype", f"unknown subtype {subtype_raw!r}")
    try:
        attributes = ProblemAttributes(key_problem_subtype=subtype, **attr_values)
    except ValueError as exc:
        r.fail(attrs_ptr, str(exc))

    flags_ptr = f"{ptr}/type_flags"
    flags_obj = r.obj(r.get(obj, "type_flags", ptr), flags_ptr)
    try:
        flags = ProblemTypeFlags(
            **{n: r.bool_(flags_obj.get(n, False), f"{flags_ptr}/{n}") for n in TYPE_FLAG_NAMES}
        )
    except ValueError as exc:
        r.fail(flags_ptr, str(exc))

    prov_ptr = f"{ptr}/provenance"
    prov_obj = r.obj(obj.get("provenance", {}), prov_ptr)
    named = prov_obj.get("named_problem")
    if named is not None:
        named = r.str_(named, f"{prov_ptr}/named_problem")
    try:
        provenance = Provenance(
            authors=r.str_list(prov_obj.get("authors", []), f"{prov_ptr}/authors"),
            sources=r.str_list(prov_obj.get("sources", []), f"{prov_ptr}/sources"),
            named_problem=named,
            competitions=r.str_list(prov_obj.get("competitions", []), f"{prov_ptr}/competitions"),
        )
    except ValueError as exc:
        r.fail(prov_ptr, str(exc))

    graphs = []
    for i, graw in enumerate(r.arr(obj.get("graphs", []), f"{ptr}/graphs")):
        graphs.append(_load_graph(r, graw, f"{ptr}/graphs/{i}", pid, givens))

    difficulty = r.int_(r.get(obj, "difficulty", ptr), f"{ptr}/difficulty")
    if not 1 <= difficulty <= 40:
        r.fail(f"{ptr}/difficulty", f"difficulty {difficulty} outside 1..40")
    try:
        return Problem(
            id=pid,
            statement_text=r.str_(r.get(obj, "statement_text", ptr), f"{ptr}/statement_text"),
            givens=givens,
            difficulty=difficulty,
            attributes=attributes,
            type_flags=flags,
            provenance=provenance,
            graphs=tuple(graphs),
        )
    except (ValueError, OutOfRangeError) as exc:
        r.fail(ptr, str(exc))


def _load_graph(r: _Reader, raw, ptr: str, problem_id: str, givens) -> SolutionGraph:
    obj = r.obj(raw, ptr)
    gid = r.str_(r.get(obj, "id", ptr), f"{ptr}/id")
    steps = []
    for i, sraw in enumerate(r.arr(r.get(obj, "steps", ptr), f"{ptr}/steps")):
        sptr = f"{ptr}/steps/{i}"
        sobj = r.obj(sraw, sptr)
        sid = r.str_(r.get(sobj, "id", sptr), f"{sptr}/id")
        if "given_index" in sobj:
            gi = r.int_(sobj["given_index"], f"{sptr}/given_index")
            if not 0 <= gi < len(givens):
                r.fail(f"{sptr}/given_index", f"given index {gi} does not name a premise")
            steps.append(Step(id=sid, statement=givens[gi], given_index=gi))
        else:
            steps.append(
                Step(
                    id=sid,
                    statement=r.statement(r.get(sobj, "statement", sptr), f"{sptr}/statement"),
                    skill_id=r.str_(r.get(sobj, "skill_id", sptr), f"{sptr}/skill_id"),
                    is_goal=r.bool_(sobj.get("is_goal", False), f"{sptr}/is_goal"),
                )
            )
    edges = []
    for i, eraw in enumerate(r.arr(obj.get("edges", []), f"{ptr}/edges")):
        eptr = f"{ptr}/edges/{i}"
        pair = r.arr(eraw, eptr)
        if len(pair) != 2:
            r.fail(eptr, "edges are [from, to] pairs")
        edges.append((r.str_(pair[0], f"{eptr}/0"), r.str_(pair[1], f"{eptr}/1")))
    return SolutionGraph(id=gid, problem_id=problem_id, steps=tuple(steps), edges=tuple(edges))


def save_corpus(catalog: Catalog, path: str | Path) -> None:
    """Write the canonical JSON form; the catalog must be lint-clean."""
    errors = lint_errors(lint_catalog(catalog))
    if errors:
        raise LintFailureError(errors)
    try:
        Path(path).write_text(corpus_to_json(catalog), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise CorpusIoError(f"cannot write {path}: {exc}") from exc


def corpus_to_json(catalog: Catalog) -> str:
    return canonical_json(corpus_to_dict(catalog))


def corpus_to_dict(catalog: Catalog) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "skills": [
            {
                "id": s.id,
                "kind": s.kind.value,
                "name": s.name,
                "description": s.description,
                "aliases": list(s.aliases),
            }
            for s in sorted(catalog.skills.values(), key=lambda s: s.id)
        ],
        "problems": [_problem_to_dict(p) for p in sorted(catalog.problems.values(), key=lambda p: p.id)],
        "synonym_table": sorted([a, c] for a, c in catalog.synonyms.items()),
    }


def _problem_to_dict(p: Problem) -> dict:
    attributes = {name: p.attributes.get(name).value for name in ATTRIBUTE_NAMES}
    attributes["key_problem_subtype"] = (
        p.attributes.key_problem_subtype.value if p.attributes.key_problem_subtype else None
    )
    return {
        "id": p.id,
        "statement_text": p.statement_text,
        "givens": [render(g) for g in p.givens],
        "difficulty": p.difficulty,
        "attributes": attributes,
        "type_flags": {n: getattr(p.type_flags, n) for n in TYPE_FLAG_NAMES},
        "provenance": {
            "authors": list(p.provenance.authors),
            "sources": list(p.provenance.sources),
            "named_problem": p.provenance.named_problem,
            "competitions": list(p.provenance.competitions),
        },
        "graphs": [
            {
                "id": g.id,
                "steps": [
                    (
                        {"id": s.id, "given_index": s.given_index}
                        if s.is_given
                        else {
                            "id": s.id,
                            "statement": render(s.statement),
                            "skill_id": s.skill_id,
                            "is_goal": s.is_goal,
                        }
                    )
                    for s in g.steps
                ],
                "edges": [list(e) for e in g.edges],
            }
            for g in p.graphs
        ],
    }


# ---------------------------------------------------------------------------
# proof scripts


def load_script(path: str | Path) -> tuple[str, frozenset[str], list[ProofLine]]:
    """Returns (problem_id, known-skill profile, lines)."""
    data, p = _read_json(path)
    r = _Reader(p)
    root = r.obj(data, "")
    version = r.get(root, "schema_version", "")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatchError(version, SCHEMA_VERSION)
    problem_id = r.str_(r.get(root, "problem_id", ""), "/problem_id")
    profile_obj = r.obj(root.get("profile", {}), "/profile")
    known = frozenset(r.str_list(profile_obj.get("known", []), "/profile/known"))
    lines = []
    for i, raw in enumerate(r.arr(r.get(root, "lines", ""), "/lines")):
        ptr = f"/lines/{i}"
        obj = r.obj(raw, ptr)
        refs = tuple(
            r.int_(v, f"{ptr}/refs/{j}")
            for j, v in enumerate(r.arr(obj.get("refs", []), f"{ptr}/refs"))
        )
        lines.append(
            ProofLine(
                index=i + 1,
                statement_text=r.str_(r.get(obj, "statement_text", ptr), f"{ptr}/statement_text"),
                reason_text=r.str_(obj.get("reason_text", ""), f"{ptr}/reason_text"),
                refs=refs,
            )
        )
    return problem_id, known, lines


def save_script(problem_id: str, known: frozenset[str], lines: list[ProofLine], path: str | Path) -> None:
    data = {
        "schema_version": SCHEMA_VERSION,
        "problem_id": problem_id,
        "profile": {"known": sorted(known)},
        "lines": [
            {
                "statement_text": ln.statement_text,
                "reason_text": ln.reason_text,
                "refs": list(ln.refs),
            }
            for ln in lines
        ],
    }
    try:
        Path(path).write_text(canonical_json(data), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise CorpusIoError(f"cannot write {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# reports


def report_to_text(report: dict) -> str:
    lines = [
        f"problem: {report['problem_id']}   status: {report['status']}",
        f"best graph: {report['best_graph'] or '-'}   coverage: {report['coverage']:.2f}",
        f"manual review: {'yes' if report['manual_review'] else 'no'}",
    ]
    if report["unmatched_lines"]:
        lines.append("unmatched lines: " + ", ".join(map(str, report["unmatched_lines"])))
    lines.append("")
    for entry in report["lines"]:
        verdict = entry["verdict"]
        notes = f"  [{', '.join(verdict['notes'])}]" if verdict["notes"] else ""
        lines.append(
            f"{entry['index']:3}. {entry['statement_text']}  ({entry['reason_text'] or 'no reason'})"
        )
        lines.append(f"     -> {verdict['class']}{notes}")
    return "\n".join(lines) + "\n"


def save_report(report: dict, path: str | Path, format: str = "json") -> None:
    if format == "json":
        payload = canonical_json(report)
    elif format == "text":
        payload = report_to_text(report)
    else:
        raise UnsupportedFormatError(f"unknown report format {format!r}")
    try:
        Path(path).write_text(payload, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise CorpusIoError(f"cannot write {path}: {exc}") from exc


def load_report(path: str | Path) -> dict:
    data, p = _read_json(path)
    return _Reader(p).obj(data, "")
