import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # expose oracles.py to tests

from claimlens.corpus import CorpusStore


def write_jsonl(path: Path, records: list[dict]) -> Path:
    with path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
    return path


@pytest.fixture
def jsonl_writer(tmp_path):
    def _write(name: str, records: list[dict]) -> Path:
        return write_jsonl(tmp_path / name, records)
    return _write


@pytest.fixture
def store(tmp_path) -> CorpusStore:
    return CorpusStore(tmp_path / "store")
