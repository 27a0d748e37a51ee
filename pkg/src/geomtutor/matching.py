"""Map student statement and reason text onto graph steps and skills.

The deterministic pipeline is: strict parse, then token normalization
(case, whitespace, synonym table), then per-token fuzzy keyword repair
with Levenshtein distance at most 2.  Entity tokens are never repaired,
so a typo can fix "midpiont" but can never turn point A into point B.
An external semantic matcher can be configured as a last resort; it is
advisory and only ever adds candidates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import ArityError, ExternalUnavailableError, ParseError
from .graphs import SolutionGraph
from .ontology import Catalog, Problem, Skill
from .statements import (
    KEYWORDS,
    CanonicalStatement,
    Token,
    parse_statement,
    render,
    tokenize,
)

AUTO_ACCEPT_THRESHOLD = 0.8


class MatchMethod(Enum):
    EXACT = "Exact"
    NORMALIZED = "Normalized"
    FUZZY = "Fuzzy"
    EXTERNAL = "External"


@dataclass(frozen=True)
class StepRef:
    graph_id: str
    step_id: str


@dataclass(frozen=True)
class MatchResult:
    target: StepRef
    confidence: float
    method: MatchMethod

    def as_dict(self) -> dict:
        return {
            "graph_id": self.target.graph_id,
            "step_id": self.target.step_id,
            "confidence": round(self.confidence, 6),
            "method": self.method.value,
        }


@dataclass(frozen=True)
class ExternalMatcherConfig:
    url: str
    timeout: float = 10.0
    retries: int = 1


@dataclass(frozen=True)
class MatcherConfig:
    auto_accept_threshold: float = AUTO_ACCEPT_THRESHOLD
    external: ExternalMatcherConfig | None = None
    strict_only: bool = False  # write-in disabled: no normalization or fuzz


def levenshtein(a: str, b: str, cap: int = 3) -> int:
    """Edit distance with an early-out once ``cap`` is exceeded."""
    if abs(len(a) - len(b)) > cap:
        return cap + 1
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        best = i
        for j, cb in enumerate(b, 1):
            cost = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb))
            cur.append(cost)
            best = min(best, cost)
        if best > cap:
            return cap + 1
        prev = cur
    return prev[-1]


def _normalize_tokens(tokens: Sequence[Token], synonyms: dict[str, str]) -> list[str]:
    out = []
    for t in tokens:
        if t.kind == "END":
            continue
        if t.kind == "IDENT":
            word = t.text.lower()
            out.append(synonyms.get(word, word if word in KEYWORDS else t.text.lower()))
        elif t.kind == "ENTITY" and len(t.text) >= 2 and (
            t.text.lower() in KEYWORDS or t.text.lower() in synonyms
        ):
            # an all-caps word ("SIDE", "IS") tokenizes as an entity run;
            # single letters stay entities so point names survive
            word = t.text.lower()
            out.append(synonyms.get(word, word))
        else:
            out.append(t.text)
    return out


def _join(tokens: Iterable[str]) -> str:
    return " ".join(tokens)


def _candidate_steps(graphs: Sequence[SolutionGraph]) -> list[tuple[str, str, CanonicalStatement]]:
    out = []
    for g in sorted(graphs, key=lambda g: g.id):
        for s in sorted(g.steps, key=lambda s: s.id):
            out.append((g.id, s.id, s.statement))
    return out


def _structural_hits(
    stmt: CanonicalStatement,
    candidates: list[tuple[str, str, CanonicalStatement]],
    confidence: float,
    method: MatchMethod,
) -> list[MatchResult]:
    hits = [
        MatchResult(StepRef(gid, sid), confidence, method)
        for gid, sid, cand in candidates
        if cand == stmt
    ]
    hits.sort(key=lambda m: (-m.confidence, m.target.graph_id, m.target.step_id))
    return hits


def _fuzzy_repair(tokens: Sequence[Token], vocabulary: Sequence[str]) -> tuple[list[str], int, int] | None:
    """Repair misspelled word tokens against the vocabulary.

    Returns (repaired token texts, total edits, total chars) or None when
    some word cannot be brought within distance 2.  Entity tokens pass
    through untouched.
    """
    repaired: list[str] = []
    edits = 0
    chars = 0
    for t in tokens:
        if t.kind == "END":
            continue
        chars += len(t.text)
        if t.kind != "IDENT" or t.text in vocabulary:
            repaired.append(t.text)
            continue
        lowered = t.text.lower()
        if lowered in vocabulary:
            repaired.append(lowered)
            continue
        scored = sorted(
            (levenshtein(lowered, kw.lower()), kw) for kw in vocabulary
        )
        best_d, best_kw = scored[0]
        if best_d > 2:
            return None
        repaired.append(best_kw)
        edits += best_d
    if edits == 0:
        return None
    return repaired, edits, chars


def match_statement(
    text: str,
    problem: Problem,
    graphs: Sequence[SolutionGraph] | None = None,
    config: MatcherConfig | None = None,
    synonyms: dict[str, str] | None = None,
) -> list[MatchResult]:
    """Ranked matches of student text against the problem's graph steps.

    An empty list means no step states the same thing, or the text does
    not parse even after normalization and fuzzy keyword repair.
    """
    config = config or MatcherConfig()
    graphs = list(graphs) if graphs is not None else list(problem.graphs)
    synonyms = dict(synonyms or {})
    candidates = _candidate_steps(graphs)

    # (1) strict parse, exact structural match
    parsed: CanonicalStatement | None = None
    try:
        parsed = parse_statement(text)
    except (ParseError, ArityError):
        parsed = None
    if parsed is not None:
        return _structural_hits(parsed, candidates, 1.0, MatchMethod.EXACT)
    if config.strict_only:
        return []

    # (2) token-normalize (case, whitespace, synonyms) and retry
    try:
        tokens = tokenize(text)
    except ParseError:
        tokens = []
    if tokens:
        normalized = _join(_normalize_tokens(tokens, synonyms))
        try:
            parsed = parse_statement(normalized)
        except (ParseError, ArityError):
            parsed = None
        if parsed is not None:
            return _structural_hits(parsed, candidates, 1.0, MatchMethod.NORMALIZED)

        # (3) fuzzy keyword repair, entity letters must match exactly
        vocabulary = sorted(KEYWORDS | set(synonyms.values()))
        norm_tokens = tokenize(_join(_normalize_tokens(tokens, synonyms)))
        repair = _fuzzy_repair(norm_tokens, vocabulary)
        if repair is not None:
            repaired, edits, chars = repair
            try:
                parsed = parse_statement(_join(repaired))
            except (ParseError, ArityError):
                parsed = None
            if parsed is not None and chars > 0:
                confidence = max(0.0, 1.0 - edits / chars)
                if confidence < 1.0:
                    hits = _structural_hits(parsed, candidates, confidence, MatchMethod.FUZZY)
                    if hits:
                        return hits

    # (4) optional external matcher
    if config.external is not None:
        return _call_external(text, problem, candidates, config.external)
    return []


def match_reason(
    reason_text: str, skill: Skill, synonyms: dict[str, str] | None = None
) -> tuple[bool, float]:
    """Does the reason cite this skill (by name or alias)?

    Token-level comparison: case/whitespace-insensitive, every word within
    edit distance 2 of the corresponding target word.  Empty reasons never
    match.
    """
    words = [w for w in _words(reason_text) if w]
    if not words:
        return False, 0.0
    synonyms = synonyms or {}
    words = [synonyms.get(w, w) for w in words]
    targets = [skill.name] + list(skill.aliases)
    best = 0.0
    for target in targets:
        twords = [synonyms.get(w, w) for w in _words(target)]
        if len(twords) != len(words):
            continue
        edits = 0
        chars = 0
        ok = True
        for got, want in zip(words, twords):
            chars += max(len(got), len(want))
            d = levenshtein(got, want)
            if d > 2:
                ok = False
                break
            edits += d
        if ok and chars:
            best = max(best, 1.0 - edits / chars)
    return (best > 0.0, best)


def _words(text: str) -> list[str]:
    cleaned = "".join(c if c.isalnum() else " " for c in text.lower())
    return [w for w in cleaned.split() if w]


# ---------------------------------------------------------------------------
# external matcher boundary (wire contract in docs/external-matcher.md)


def build_external_request(
    text: str, problem: Problem, candidates: list[tuple[str, str, CanonicalStatement]]
) -> dict:
    return {
        "problem_statement": problem.statement_text,
        "student_text": text,
        "candidates": [
            {"graph_id": gid, "step_id": sid, "statement": render(stmt)}
            for gid, sid, stmt in candidates
        ],
    }


def _call_external(
    text: str,
    problem: Problem,
    candidates: list[tuple[str, str, CanonicalStatement]],
    external: ExternalMatcherConfig,
) -> list[MatchResult]:
    import requests

    request = build_external_request(text, problem, candidates)
    offered = {(c["graph_id"], c["step_id"]) for c in request["candidates"]}
    last_error: Exception | None = None
    for _ in range(external.retries + 1):
        try:
            resp = requests.post(external.url, json=request, timeout=external.timeout)
            resp.raise_for_status()
            payload = resp.json()
        except Exception as exc:  # noqa: BLE001 - transport failures collapse to one error
            last_error = exc
            continue
        if payload.get("abstain"):
            return []
        results = []
        for cand in payload.get("candidates", []):
            key = (cand.get("graph_id"), cand.get("step_id"))
            if key not in offered:
                continue  # responses may only reference offered ids
            score = float(cand.get("score", 0.0))
            if not 0.0 <= score <= 1.0:
                continue
            results.append(MatchResult(StepRef(*key), score, MatchMethod.EXTERNAL))
        results.sort(key=lambda m: (-m.confidence, m.target.graph_id, m.target.step_id))
        return results
    raise ExternalUnavailableError(f"external matcher unreachable: {last_error}")
