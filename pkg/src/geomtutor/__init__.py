"""Curriculum engine and proof-validation workbench for Euclidean geometry."""

from importlib import resources
from pathlib import Path

__version__ = "0.1.0"


def sample_corpus_path() -> Path:
    """Path of the bundled desk-scale corpus."""
    return Path(resources.files("geomtutor") / "data" / "sample_corpus.json")
