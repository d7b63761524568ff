"""Durable capture of issued queries and per-perspective thumbs feedback.

Two append-only JSONL logs under one directory: ``queries.jsonl`` (one entry
per issued claim, written before the result is returned) and
``feedback.jsonl`` (every thumbs event; nothing is ever rewritten). Export
reduces feedback to the latest record per (query, perspective) pair in a
training-ready shape. No field anywhere in the schema carries personal
information.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass
from pathlib import Path

POLARITIES = ("up", "down")


class FeedbackError(Exception):
    pass


@dataclass(frozen=True)
class QueryLogEntry:
    query_id: str
    claim_text: str
    timestamp: int  # UTC seconds
    config: dict


@dataclass(frozen=True)
class FeedbackRecord:
    query_id: str
    perspective_ref: str  # corpus id, or normalized-text hash for expansion
    perspective_text: str
    polarity: str
    timestamp: int

    def __post_init__(self):
        if self.polarity not in POLARITIES:
            raise ValueError(f"invalid polarity {self.polarity!r}")


class FeedbackLog:
    """Single serialized appender; reads see a consistent snapshot."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.queries_path = self.root / "queries.jsonl"
        self.feedback_path = self.root / "feedback.jsonl"
        self._lock = threading.Lock()
        self._queries: dict[str, QueryLogEntry] = {}
        self._records: list[FeedbackRecord] = []
        self._last_ts = 0
        self._load()

    def _load(self):
        if self.queries_path.exists():
            with self.queries_path.open(encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    obj = json.loads(line)
                    entry = QueryLogEntry(obj["query_id"], obj["claim"],
                                          obj["timestamp"], obj.get("config", {}))
                    self._queries[entry.query_id] = entry
                    self._last_ts = max(self._last_ts, entry.timestamp)
        if self.feedback_path.exists():
            with self.feedback_path.open(encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    obj = json.loads(line)
                    self._records.append(FeedbackRecord(
                        obj["query_id"], obj["perspective_ref"],
                        obj["perspective"], obj["polarity"], obj["timestamp"]))
                    self._last_ts = max(self._last_ts, obj["timestamp"])

    @staticmethod
    def _append_line(path: Path, obj: dict):
        with path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(obj, sort_keys=True))
            fh.write("\n")
            fh.flush()
            os.fsync(fh.fileno())

    def _next_timestamp(self) -> int:
        # wall clock clamped non-decreasing so log order matches timestamps
        ts = max(int(time.time()), self._last_ts)
        self._last_ts = ts
        return ts

    # -- operations --------------------------------------------------------

    def log_query(self, claim_text: str, config: dict | None = None) -> str:
        query_id = uuid.uuid4().hex
        with self._lock:
            ts = self._next_timestamp()
            entry = QueryLogEntry(query_id, claim_text, ts, config or {})
            self._append_line(self.queries_path, {
                "query_id": query_id,
                "claim": claim_text,
                "timestamp": ts,
                "config": entry.config,
            })
            self._queries[query_id] = entry
        return query_id

    def has_query(self, query_id: str) -> bool:
        return query_id in self._queries

    def get_query(self, query_id: str) -> QueryLogEntry:
        try:
            return self._queries[query_id]
        except KeyError:
            raise FeedbackError(f"unknown query_id {query_id!r}") from None

    def record_feedback(self, query_id: str, perspective_ref: str,
                        perspective_text: str, polarity: str) -> FeedbackRecord:
        if polarity not in POLARITIES:
            raise FeedbackError(f"invalid polarity {polarity!r}")
        with self._lock:
            if query_id not in self._queries:
                raise FeedbackError(f"unknown query_id {query_id!r}")
            record = FeedbackRecord(query_id, perspective_ref, perspective_text,
                                    polarity, self._next_timestamp())
            self._append_line(self.feedback_path, {
                "query_id": record.query_id,
                "perspective_ref": record.perspective_ref,
                "perspective": record.perspective_text,
                "polarity": record.polarity,
                "timestamp": record.timestamp,
            })
            self._records.append(record)
        return record

    def export_training_pairs(self, path: str | os.PathLike) -> int:
        """Write one JSONL line per (query, perspective) pair using the latest
        record: {claim, perspective, label 1/0, query_id, timestamp}. Ordering
        is (timestamp, query_id, perspective_ref), so identical stores export
        byte-identical files."""
        with self._lock:
            latest: dict[tuple[str, str], FeedbackRecord] = {}
            for record in self._records:
                latest[(record.query_id, record.perspective_ref)] = record
            rows = sorted(
                latest.values(),
                key=lambda r: (r.timestamp, r.query_id, r.perspective_ref),
            )
            lines = []
            for record in rows:
                lines.append(json.dumps({
                    "claim": self._queries[record.query_id].claim_text,
                    "perspective": record.perspective_text,
                    "label": 1 if record.polarity == "up" else 0,
                    "query_id": record.query_id,
                    "timestamp": record.timestamp,
                }, sort_keys=True))
        with open(path, "w", encoding="utf-8") as fh:
            for line in lines:
                fh.write(line)
                fh.write("\n")
        return len(lines)
