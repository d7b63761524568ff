"""Candidate expansion from externally fetched documents.

A file-backed document source stands in for live web search: a directory of
plain-text files plus a ``manifest`` mapping each file to its uri and title.
The first sentence of every paragraph becomes a candidate perspective, the
remaining sentences one candidate evidence entry; both carry the source uri.
Expansion candidates get no privileged path: they pass the same gates as
corpus candidates.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path

from .retrieval import search, build_index

logger = logging.getLogger(__name__)

_TERMINATORS = ".!?"


@dataclass(frozen=True)
class ExternalDocument:
    uri: str
    title: str
    paragraphs: tuple[str, ...]

    def __post_init__(self):
        if not self.paragraphs or any(not p.strip() for p in self.paragraphs):
            raise ValueError("document paragraphs must be non-empty")


@dataclass(frozen=True)
class ExpansionCandidates:
    perspectives: list[tuple[str, str]]  # (text, source uri)
    evidence: list[tuple[str, str]]


class FileDocumentSource:
    """Reads documents from ``<dir>/manifest`` lines ``filename<TAB>uri<TAB>title``.

    Each listed file is UTF-8 plain text with paragraphs separated by blank
    lines; a paragraph's internal newlines are joined with single spaces.
    Files that reduce to zero paragraphs are skipped with a warning.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self._documents: list[ExternalDocument] | None = None

    def documents(self) -> list[ExternalDocument]:
        if self._documents is None:
            self._documents = self._load()
        return self._documents

    def _load(self) -> list[ExternalDocument]:
        manifest = self.directory / "manifest"
        if not manifest.exists():
            return []
        docs = []
        with manifest.open(encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise ValueError(
                        f"manifest line {lineno}: expected filename<TAB>uri<TAB>title"
                    )
                filename, uri, title = parts
                text = (self.directory / filename).read_text(encoding="utf-8")
                paragraphs = tuple(
                    " ".join(block.split())
                    for block in re.split(r"\n\s*\n", text)
                    if block.strip()
                )
                if not paragraphs:
                    logger.warning("expansion document %s has no paragraphs; skipped",
                                   filename)
                    continue
                docs.append(ExternalDocument(uri=uri, title=title, paragraphs=paragraphs))
        return docs


_warned_unconfigured = False


def fetch_documents(source: FileDocumentSource | None, query: str, limit: int = 10,
                    k1: float = 1.2, b: float = 0.75,
                    stopwords: frozenset[str] | set[str] = frozenset()
                    ) -> list[ExternalDocument]:
    """Up to ``limit`` documents ranked by BM25 of the query against full text
    (title plus paragraphs). With no source configured, expansion is disabled:
    returns an empty list and logs once."""
    global _warned_unconfigured
    if source is None:
        if not _warned_unconfigured:
            logger.info("no expansion document source configured; expansion disabled")
            _warned_unconfigured = True
        return []
    docs = source.documents()
    if not docs:
        return []
    # zero-padded ids so the doc-id tie-break follows manifest order
    index = build_index(
        ((f"{i:06d}", doc.title + " " + " ".join(doc.paragraphs))
         for i, doc in enumerate(docs)),
        stopwords=stopwords,
    )
    hits = search(index, query, limit, k1=k1, b=b)
    return [docs[int(hit.doc_id)] for hit in hits]


def split_sentences(text: str) -> list[str]:
    """Rule-based sentence split: boundary after '.', '!' or '?' followed by
    whitespace and an uppercase letter. Abbreviation false positives are an
    accepted limitation. Emitted sentences are stripped; their non-whitespace
    character sequence reconstructs the input's."""
    sentences = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in _TERMINATORS:
            j = i + 1
            while j < n and text[j].isspace():
                j += 1
            if j > i + 1 and j < n and text[j].isupper():
                sentence = text[start:i + 1].strip()
                if sentence:
                    sentences.append(sentence)
                start = j
                i = j
                continue
        i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def extract_candidates(docs: list[ExternalDocument]) -> ExpansionCandidates:
    """First sentence of each paragraph -> perspective; the remaining
    sentences, joined by single spaces -> one evidence entry (none for
    single-sentence paragraphs)."""
    perspectives: list[tuple[str, str]] = []
    evidence: list[tuple[str, str]] = []
    for doc in docs:
        for paragraph in doc.paragraphs:
            sentences = split_sentences(paragraph)
            if not sentences:
                continue
            perspectives.append((sentences[0], doc.uri))
            if len(sentences) >= 2:
                evidence.append((" ".join(sentences[1:]), doc.uri))
    return ExpansionCandidates(perspectives=perspectives, evidence=evidence)
