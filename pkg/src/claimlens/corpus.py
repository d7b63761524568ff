"""Document model and durable storage for claim, perspective and evidence corpora.

Corpora are ingested from line-delimited JSON files and kept in an append-log
store on local disk: one JSONL file per record kind under a store directory.
After ingestion the store is immutable and safe to read from concurrent
request handlers.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

VALID_SOURCES = ("corpus", "expansion")
VALID_STANCES = ("support", "oppose")


class CorpusError(Exception):
    """Base class for corpus storage errors."""


class IngestError(CorpusError):
    """A corpus file could not be ingested; message names the offending line."""


class NotFoundError(CorpusError):
    """Lookup of an unknown record id."""


def normalize_text(text: str) -> str:
    """Collapse all whitespace runs to single spaces and trim the ends."""
    return " ".join(text.split())


@dataclass(frozen=True)
class Claim:
    """A discussion-worthy natural-language assertion; the query unit."""

    id: str
    text: str

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("claim text is empty")


@dataclass(frozen=True)
class Perspective:
    """An opinion sentence taking a stance toward a claim."""

    id: str
    text: str
    source: str = "corpus"
    uri: str | None = None

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("perspective text is empty")
        if self.source not in VALID_SOURCES:
            raise ValueError(f"invalid source {self.source!r}")


@dataclass(frozen=True)
class EvidenceParagraph:
    """A paragraph substantiating a perspective in the context of a claim."""

    id: str
    text: str
    source: str = "corpus"
    uri: str | None = None

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("evidence text is empty")
        if self.source not in VALID_SOURCES:
            raise ValueError(f"invalid source {self.source!r}")


@dataclass(frozen=True)
class GoldAnnotation:
    """A dataset judgment tying a (claim, perspective) pair to its stance,
    equivalence class and substantiating evidence ids."""

    claim_id: str
    perspective_id: str
    stance: str
    cluster_id: str
    evidence_ids: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.stance not in VALID_STANCES:
            raise ValueError(f"invalid stance {self.stance!r}")


def _parse_record_line(line: str, lineno: int, kind: str):
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise IngestError(f"line {lineno}: malformed JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise IngestError(f"line {lineno}: expected a JSON object")
    return obj


def _require_str(obj: dict, key: str, lineno: int) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise IngestError(f"line {lineno}: missing or non-string field {key!r}")
    return value


class CorpusStore:
    """Single-writer embedded store holding the three corpora plus gold labels.

    Layout: ``<root>/claims.jsonl``, ``<root>/perspectives.jsonl``,
    ``<root>/evidence.jsonl``, ``<root>/gold.jsonl``. Records are appended at
    ingest time and replayed on open, so a reopened store sees every
    previously ingested record.
    """

    FILES = {
        "claims": "claims.jsonl",
        "perspectives": "perspectives.jsonl",
        "evidence": "evidence.jsonl",
        "gold": "gold.jsonl",
    }

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.claims: dict[str, Claim] = {}
        self.perspectives: dict[str, Perspective] = {}
        self.evidence: dict[str, EvidenceParagraph] = {}
        self.gold: list[GoldAnnotation] = []
        self._load()

    # -- loading ---------------------------------------------------------

    def _path(self, kind: str) -> Path:
        return self.root / self.FILES[kind]

    def _load(self):
        for kind in ("claims", "perspectives", "evidence"):
            path = self._path(kind)
            if not path.exists():
                continue
            with path.open(encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, start=1):
                    if not line.strip():
                        continue
                    record = self._record_from_obj(
                        kind, _parse_record_line(line, lineno, kind), lineno
                    )
                    self._table(kind)[record.id] = record
        gold_path = self._path("gold")
        if gold_path.exists():
            with gold_path.open(encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, start=1):
                    if not line.strip():
                        continue
                    obj = _parse_record_line(line, lineno, "gold")
                    self.gold.append(self._gold_from_obj(obj, lineno))

    def _table(self, kind: str) -> dict:
        return {"claims": self.claims, "perspectives": self.perspectives,
                "evidence": self.evidence}[kind]

    def _record_from_obj(self, kind: str, obj: dict, lineno: int):
        rid = _require_str(obj, "id", lineno)
        text = _require_str(obj, "text", lineno)
        if not text.strip():
            raise IngestError(f"line {lineno}: empty text for id {rid!r}")
        source = obj.get("source", "corpus")
        if source not in VALID_SOURCES:
            raise IngestError(f"line {lineno}: invalid source {source!r}")
        if kind == "claims":
            return Claim(id=rid, text=text)
        cls = Perspective if kind == "perspectives" else EvidenceParagraph
        return cls(id=rid, text=text, source=source)

    def _gold_from_obj(self, obj: dict, lineno: int) -> GoldAnnotation:
        claim_id = _require_str(obj, "claim_id", lineno)
        perspective_id = _require_str(obj, "perspective_id", lineno)
        stance = _require_str(obj, "stance", lineno)
        if stance not in VALID_STANCES:
            raise IngestError(f"line {lineno}: invalid stance {stance!r}")
        cluster_id = _require_str(obj, "cluster_id", lineno)
        evidence_ids = obj.get("evidence_ids", [])
        if not isinstance(evidence_ids, list) or not all(
            isinstance(e, str) for e in evidence_ids
        ):
            raise IngestError(f"line {lineno}: evidence_ids must be a string array")
        return GoldAnnotation(
            claim_id=claim_id,
            perspective_id=perspective_id,
            stance=stance,
            cluster_id=cluster_id,
            evidence_ids=tuple(evidence_ids),
        )

    # -- ingestion -------------------------------------------------------

    def _ingest_records(self, path: str | os.PathLike, kind: str) -> int:
        """Validate the whole file, then append. An error stores nothing."""
        table = self._table(kind)
        batch = []
        seen: set[str] = set()
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                obj = _parse_record_line(line, lineno, kind)
                record = self._record_from_obj(kind, obj, lineno)
                if record.id in table or record.id in seen:
                    raise IngestError(f"line {lineno}: duplicate id {record.id!r}")
                seen.add(record.id)
                batch.append(record)
        self._append(kind, batch)
        for record in batch:
            table[record.id] = record
        return len(batch)

    def _append(self, kind: str, records: list):
        if not records:
            return
        with self._path(kind).open("a", encoding="utf-8") as fh:
            for record in records:
                fh.write(json.dumps(self._record_to_obj(record), sort_keys=True))
                fh.write("\n")
            fh.flush()
            os.fsync(fh.fileno())

    @staticmethod
    def _record_to_obj(record) -> dict:
        if isinstance(record, GoldAnnotation):
            return {
                "claim_id": record.claim_id,
                "perspective_id": record.perspective_id,
                "stance": record.stance,
                "cluster_id": record.cluster_id,
                "evidence_ids": list(record.evidence_ids),
            }
        obj = {"id": record.id, "text": record.text}
        if not isinstance(record, Claim):
            obj["source"] = record.source
        return obj

    def ingest_claims(self, path: str | os.PathLike) -> int:
        return self._ingest_records(path, "claims")

    def ingest_perspectives(self, path: str | os.PathLike) -> int:
        return self._ingest_records(path, "perspectives")

    def ingest_evidence(self, path: str | os.PathLike) -> int:
        return self._ingest_records(path, "evidence")

    def ingest_gold(self, path: str | os.PathLike) -> int:
        """Load gold annotations, checking every referenced id resolves."""
        batch = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                ann = self._gold_from_obj(_parse_record_line(line, lineno, "gold"), lineno)
                if ann.claim_id not in self.claims:
                    raise IngestError(f"line {lineno}: unknown claim_id {ann.claim_id!r}")
                if ann.perspective_id not in self.perspectives:
                    raise IngestError(
                        f"line {lineno}: unknown perspective_id {ann.perspective_id!r}"
                    )
                for eid in ann.evidence_ids:
                    if eid not in self.evidence:
                        raise IngestError(f"line {lineno}: unknown evidence id {eid!r}")
                batch.append(ann)
        self._append("gold", batch)
        self.gold.extend(batch)
        return len(batch)

    # -- lookup ----------------------------------------------------------

    def get_claim(self, claim_id: str) -> Claim:
        try:
            return self.claims[claim_id]
        except KeyError:
            raise NotFoundError(f"unknown claim id {claim_id!r}") from None

    def get_perspective(self, perspective_id: str) -> Perspective:
        try:
            return self.perspectives[perspective_id]
        except KeyError:
            raise NotFoundError(f"unknown perspective id {perspective_id!r}") from None

    def get_evidence(self, evidence_id: str) -> EvidenceParagraph:
        try:
            return self.evidence[evidence_id]
        except KeyError:
            raise NotFoundError(f"unknown evidence id {evidence_id!r}") from None

    def counts(self) -> dict[str, int]:
        return {
            "claims": len(self.claims),
            "perspectives": len(self.perspectives),
            "evidence": len(self.evidence),
            "gold": len(self.gold),
        }
