from __future__ import annotations

from pathlib import Path

import pytest

from geomtutor import sample_corpus_path
from geomtutor.corpus_io import load_corpus, load_script

FIXTURES = Path(__file__).parent / "fixtures"
SCRIPTS_DIR = FIXTURES / "scripts"
GOLDEN_DIR = FIXTURES / "golden"

SCRIPT_NAMES = sorted(p.stem for p in SCRIPTS_DIR.glob("*.json"))


@pytest.fixture(scope="session")
def catalog():
    return load_corpus(sample_corpus_path())


@pytest.fixture(scope="session")
def corpus_path():
    return sample_corpus_path()


def read_script(name: str):
    return load_script(SCRIPTS_DIR / f"{name}.json")


def script_path(name: str) -> Path:
    return SCRIPTS_DIR / f"{name}.json"


def golden_path(name: str) -> Path:
    return GOLDEN_DIR / name
