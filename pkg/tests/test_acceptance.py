"""Acceptance gate: one test per shipping criterion, tolerances pinned.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS line per
criterion.  Each criterion is independent; oracles here re-derive results
from definitions rather than calling the code paths they check.
"""

from __future__ import annotations

import contextlib
import io
import json
import random
import time
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from conftest import GOLDEN_DIR, SCRIPT_NAMES, read_script, script_path
from geomtutor.cli import main as cli_main
from geomtutor.config import ServiceConfig
from geomtutor.corpus_io import canonical_json, corpus_to_json, load_corpus
from geomtutor.errors import CorpusFormatError, GeomError
from geomtutor.graphs import validate_dag
from geomtutor.ontology import DifficultyBand, difficulty_band
from geomtutor.selection import SetRequest, eligible
from geomtutor.service import create_app
from geomtutor.validation import ProofLine, Session, SessionStatus, replay_session

from test_corpus_io import _mutate, random_catalog
from test_graphs import oracle_has_cycle, random_graph
from test_selection import oracle_eligible, random_requests
from test_validation import EXPECTED_CLASSES, oracle_establishment


def _ok(label: str):
    print(f"PASS: {label}")


def test_dag_validity_oracle():
    """validate_dag agrees with exhaustive path enumeration; 200 graphs < 1 s."""
    rng = random.Random(20260810)
    started = time.perf_counter()
    disagreements = 0
    for _ in range(200):
        graph, ids, edges = random_graph(rng, max_nodes=10)
        got = any(d.code == "CYCLE" for d in validate_dag(graph))
        want = oracle_has_cycle(ids, edges)
        if got != want:
            disagreements += 1
    elapsed = time.perf_counter() - started
    assert disagreements == 0
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    _ok(f"DAG validity: 200 random graphs, 0 disagreements, {elapsed * 1000:.0f} ms")


def test_selector_oracle_equivalence(catalog):
    """eligible() equals the brute-force C1-C3 oracle on 100 requests < 5 s."""
    started = time.perf_counter()
    disagreements = 0
    checked = 0
    for target, known, mode, ratio in random_requests(catalog, 100, seed=20260810):
        request = SetRequest(target=target, known=known, count=1, mode=mode, ratio=ratio)
        for problem in catalog.problems.values():
            checked += 1
            if eligible(problem, request).eligible != oracle_eligible(
                problem, known, target, mode, ratio
            ):
                disagreements += 1
    elapsed = time.perf_counter() - started
    assert disagreements == 0
    assert elapsed < 5.0, f"took {elapsed:.3f}s"
    _ok(
        f"selector oracle: 100 requests x {len(catalog.problems)} problems "
        f"({checked} checks), 0 disagreements, {elapsed:.2f} s"
    )


def test_strict_efficiency_containment_and_monotonicity(catalog):
    """Strict-eligible stays eligible under any ratio; growing the known set
    never breaks feasibility."""
    rng = random.Random(8)
    all_skills = sorted(catalog.skills)
    for target, known, mode, ratio in random_requests(catalog, 100, seed=20260810):
        strict = SetRequest(target=target, known=known, count=1, mode="strict")
        efficient = SetRequest(target=target, known=known, count=1, mode="efficiency",
                               ratio=ratio)
        larger = frozenset(known | set(rng.sample(all_skills, 4)) - {target})
        grown = SetRequest(target=target, known=larger, count=1, mode=mode, ratio=ratio)
        for problem in catalog.problems.values():
            record = eligible(problem, strict)
            if record.eligible:
                assert eligible(problem, efficient).eligible
            if record.c1_feasible:
                assert eligible(problem, grown).c1_feasible
    _ok("strict=>efficiency containment and known-set monotonicity on 100 requests")


FEEDBACK_CATEGORY_SCRIPTS = {
    "incorrect or unproven": ("p07_offgraph", "IncorrectOrUnproven"),
    "unproven due to inaccurate reasons": ("p07_unjustified", "CorrectUnjustified"),
    "likely irrelevant": ("p07_irrelevant", "CorrectIrrelevant"),
    "both correct and relevant": ("p07_complete", "CorrectRelevant"),
}


def test_four_class_partition_and_goldens(catalog):
    """Every fixture line gets exactly one of the four classes and every
    report reproduces its golden file byte for byte."""
    assert len(SCRIPT_NAMES) >= 12
    seen_classes = set()
    for name in SCRIPT_NAMES:
        problem_id, known, lines = read_script(name)
        session = replay_session(name, catalog, catalog.problems[problem_id], lines, known)
        classes = [v.verdict.value for v in session.verdicts]
        assert classes == EXPECTED_CLASSES[name]
        seen_classes.update(classes)
        got = canonical_json(session.teacher_report().as_dict())
        golden = (GOLDEN_DIR / f"{name}.report.json").read_text(encoding="utf-8")
        assert got == golden, f"golden drift in {name}"
    assert seen_classes == {
        "IncorrectOrUnproven", "CorrectUnjustified", "CorrectIrrelevant", "CorrectRelevant",
    }
    for category, (name, expected) in FEEDBACK_CATEGORY_SCRIPTS.items():
        assert expected in EXPECTED_CLASSES[name], category
    _ok(
        f"four-class partition: {len(SCRIPT_NAMES)} scripts, all classes covered, "
        "goldens byte-identical, one script per category"
    )


def test_derivability_oracle(catalog):
    """Incremental establishment equals the from-scratch closure oracle on
    every prefix of every script; closure checked by subset enumeration."""
    disagreements = 0
    prefixes = 0
    for name in SCRIPT_NAMES:
        problem_id, known, lines = read_script(name)
        problem = catalog.problems[problem_id]
        oracle_iter = oracle_establishment(catalog, problem, lines)
        session = Session("t", catalog, problem, known)
        for line in lines:
            if session.status is not SessionStatus.OPEN:
                break
            session.submit_line(line)
            want = next(oracle_iter)
            got = {gid: frozenset(v) for gid, v in session.established.items()}
            prefixes += 1
            if got != want:
                disagreements += 1
    assert disagreements == 0
    _ok(f"derivability oracle: {prefixes} prefixes across {len(SCRIPT_NAMES)} scripts, "
        "0 disagreements")


def test_difficulty_band_boundaries_complete():
    """Exact band for every one of the 40 difficulty values."""
    expected = (
        [DifficultyBand.BASIC] * 10
        + [DifficultyBand.ADVANCED] * 10
        + [DifficultyBand.OLYMPIAD] * 10
        + [DifficultyBand.VERY_DIFFICULT] * 10
    )
    assert [difficulty_band(d) for d in range(1, 41)] == expected
    _ok("difficulty bands: 40/40 inputs on the 1-10/11-20/21-30/31-40 boundaries")


def test_round_trip_and_canonical_bytes(tmp_path, corpus_path):
    """100 random catalogs round-trip; double save is byte-stable; 100
    mutated files raise positioned errors and never crash."""
    rng = random.Random(20260810)
    for i in range(100):
        catalog = random_catalog(rng)
        first = tmp_path / f"c{i}a.json"
        second = tmp_path / f"c{i}b.json"
        first.write_text(corpus_to_json(catalog), encoding="utf-8")
        from geomtutor.corpus_io import load_corpus_unchecked

        loaded, diags = load_corpus_unchecked(first)
        assert not [d for d in diags if d.severity == "Error"]
        assert loaded == catalog
        second.write_text(corpus_to_json(loaded), encoding="utf-8")
        assert first.read_bytes() == second.read_bytes()

    source = Path(corpus_path).read_text(encoding="utf-8")
    crashes = 0
    positioned = 0
    for i in range(100):
        mutated = _mutate(source, rng)
        target = tmp_path / f"fuzz{i}.json"
        target.write_text(mutated, encoding="utf-8")
        try:
            load_corpus(target)
        except CorpusFormatError as exc:
            assert exc.path and exc.pointer is not None
            positioned += 1
        except GeomError:
            positioned += 1
        except Exception:  # noqa: BLE001 - the criterion is "zero crashes"
            crashes += 1
    assert crashes == 0
    _ok(f"round-trip: 100 random catalogs identical, double-save stable, "
        f"fuzz corpus of 100 files -> {positioned} positioned failures, 0 crashes")


def test_replay_determinism_fuzz(catalog):
    """500 random submit/retract traces replay to identical verdicts."""
    rng = random.Random(20260810)
    problems = ["P07", "P12", "P13", "P18"]
    pools = {}
    for pid in problems:
        pool = []
        for graph in catalog.problems[pid].graphs:
            for step in graph.non_given_steps():
                skill = catalog.skills[step.skill_id]
                pool.append((step.statement.render(), skill.name, ()))
                pool.append((step.statement.render(), "", ()))
        pool.append(("PQ = QR", "guess", ()))
        pool.append(("AB ∥ XY", "", ()))
        pools[pid] = pool
    traces = 0
    for _ in range(500):
        pid = rng.choice(problems)
        session = Session("t", catalog, catalog.problems[pid])
        for _ in range(rng.randint(1, 10)):
            if session.lines and rng.random() < 0.25:
                session.retract_line(rng.randint(1, len(session.lines)))
                continue
            if session.status is not SessionStatus.OPEN:
                break
            stmt, reason, refs = rng.choice(pools[pid])
            session.submit_line(ProofLine(session.next_index, stmt, reason, refs))
        fresh = replay_session("t", catalog, catalog.problems[pid], list(session.lines))
        assert canonical_json(fresh.teacher_report().as_dict()) == canonical_json(
            session.teacher_report().as_dict()
        )
        traces += 1
    assert traces == 500
    _ok("replay determinism: 500 random traces equal their fresh replay")


def test_cli_service_parity(catalog, corpus_path):
    """`geom validate --format json` equals the service's report body for
    every fixture script."""
    client = TestClient(create_app(catalog, ServiceConfig()))
    for name in SCRIPT_NAMES:
        problem_id, known, lines = read_script(name)
        created = client.post(
            "/api/v1/sessions", json={"problem_id": problem_id, "known": sorted(known)}
        )
        sid = created.json()["session_id"]
        for line in lines:
            response = client.post(
                f"/api/v1/sessions/{sid}/lines",
                json={
                    "statement_text": line.statement_text,
                    "reason_text": line.reason_text,
                    "refs": list(line.refs),
                },
            )
            assert response.status_code == 200
        service_body = client.get(f"/api/v1/sessions/{sid}/report").json()

        buffer = io.StringIO()
        with contextlib.redirect_stdout(buffer):
            code = cli_main(
                ["validate", str(corpus_path), str(script_path(name)), "--format", "json"]
            )
        assert code in (0, 1)
        assert json.loads(buffer.getvalue()) == service_body
        assert buffer.getvalue() == canonical_json(service_body)
    _ok(f"CLI/service parity: {len(SCRIPT_NAMES)} scripts, JSON bodies identical")
