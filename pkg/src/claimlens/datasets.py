"""Paths to data files bundled with the package."""

from importlib import resources
from pathlib import Path


def bundled_mini_dir() -> Path:
    """Directory holding the demo corpus: claims.jsonl, perspectives.jsonl,
    evidence.jsonl and gold.jsonl."""
    return Path(str(resources.files("claimlens").joinpath("data/mini")))
