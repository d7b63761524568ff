"""Tokenization, inverted index construction and Okapi BM25 top-k retrieval.

Two instances of :class:`InvertedIndex` back the engine: one over perspective
sentences, one over evidence paragraphs. Evidence lookups query the claim
concatenated with a perspective candidate.

Scoring is deliberately reproducible: lowercase alnum tokenization, no
stemming, +1-smoothed IDF (never negative), and ties broken by doc id
ascending, so ranked output is a pure function of corpus + query + (k1, b).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75


def tokenize(text: str, stopwords: frozenset[str] | set[str] = frozenset()) -> list[str]:
    """Lowercase and split on every char that is not a Unicode letter or digit.

    Tokens found in ``stopwords`` are dropped; order is preserved.
    """
    tokens: list[str] = []
    buf: list[str] = []
    for ch in text.lower():
        if ch.isalnum():
            buf.append(ch)
        elif buf:
            tokens.append("".join(buf))
            buf = []
    if buf:
        tokens.append("".join(buf))
    if stopwords:
        tokens = [t for t in tokens if t not in stopwords]
    return tokens


@dataclass(frozen=True)
class RetrievalHit:
    doc_id: str
    score: float


class InvertedIndex:
    """Immutable BM25 index over (doc id, text) pairs.

    Documents are stored in doc-id-ascending order, so internal integer
    indexes sort identically to doc ids and posting lists are naturally
    sorted by doc id. A document whose tokenization is empty is indexed
    with length 0 and appears in no posting.
    """

    def __init__(self, docs: Iterable[tuple[str, str]],
                 stopwords: frozenset[str] | set[str] = frozenset()):
        pairs = list(docs)
        seen: set[str] = set()
        for doc_id, _ in pairs:
            if doc_id in seen:
                raise ValueError(f"duplicate doc id {doc_id!r}")
            seen.add(doc_id)
        pairs.sort(key=lambda p: p[0])

        self.stopwords = frozenset(stopwords)
        self.doc_ids: list[str] = [doc_id for doc_id, _ in pairs]
        self.doc_count = len(pairs)

        lengths = np.zeros(self.doc_count, dtype=np.float64)
        # token -> ([doc index], [tf]); doc indexes appended in ascending order
        raw: dict[str, tuple[list[int], list[float]]] = {}
        for i, (_, text) in enumerate(pairs):
            tokens = tokenize(text, self.stopwords)
            lengths[i] = len(tokens)
            for token, tf in sorted(Counter(tokens).items()):
                slot = raw.setdefault(token, ([], []))
                slot[0].append(i)
                slot[1].append(float(tf))

        self._lengths = lengths
        self._postings: dict[str, tuple[np.ndarray, np.ndarray]] = {
            token: (np.asarray(idxs, dtype=np.int32), np.asarray(tfs, dtype=np.float64))
            for token, (idxs, tfs) in raw.items()
        }
        total = float(lengths.sum())
        self.avg_doc_length = total / self.doc_count if self.doc_count else 0.0

    # Mapping views matching the documented index shape; the array form above
    # is what search() actually runs on.
    @property
    def postings(self) -> dict[str, list[tuple[str, int]]]:
        return {
            token: [(self.doc_ids[i], int(tf)) for i, tf in zip(idxs, tfs)]
            for token, (idxs, tfs) in self._postings.items()
        }

    @property
    def doc_lengths(self) -> dict[str, int]:
        return {doc_id: int(n) for doc_id, n in zip(self.doc_ids, self._lengths)}

    def idf(self, token: str) -> float:
        """+1-smoothed inverse document frequency; > 0 for any indexed token."""
        posting = self._postings.get(token)
        if posting is None:
            return 0.0
        n = len(posting[0])
        return math.log((self.doc_count - n + 0.5) / (n + 0.5) + 1.0)

    def document_frequency(self, token: str) -> int:
        posting = self._postings.get(token)
        return 0 if posting is None else len(posting[0])


def build_index(docs: Iterable[tuple[str, str]],
                stopwords: frozenset[str] | set[str] = frozenset()) -> InvertedIndex:
    return InvertedIndex(docs, stopwords)


def search(index: InvertedIndex, query: str, k: int,
           k1: float = DEFAULT_K1, b: float = DEFAULT_B) -> list[RetrievalHit]:
    """Top-k documents by BM25, score-descending, ties by doc id ascending.

    Documents matching no query term are omitted; fewer than k hits are
    returned when fewer match. Repeated query tokens contribute once per
    occurrence. An empty query (after tokenization) yields an empty result.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    tokens = tokenize(query, index.stopwords)
    terms = []
    for token in tokens:
        posting = index._postings.get(token)
        if posting is not None:
            terms.append((posting[0], posting[1], index.idf(token)))
    if not terms:
        return []

    norms = k1 * (1.0 - b + b * (index._lengths / index.avg_doc_length))
    scores = np.zeros(index.doc_count, dtype=np.float64)
    _kernels.accumulate_scores(scores, norms, terms, k1)

    candidates = np.flatnonzero(scores > 0.0)
    # stable sort on negated scores: ties keep ascending doc-index order,
    # which equals doc-id order by construction
    order = np.argsort(-scores[candidates], kind="stable")
    top = candidates[order[:k]]
    return [RetrievalHit(index.doc_ids[i], float(scores[i])) for i in top]


def search_evidence(index: InvertedIndex, claim: str, perspective: str, k: int,
                    k1: float = DEFAULT_K1, b: float = DEFAULT_B) -> list[RetrievalHit]:
    """Evidence lookup: BM25 over the claim concatenated with the perspective."""
    return search(index, claim + " " + perspective, k, k1=k1, b=b)
