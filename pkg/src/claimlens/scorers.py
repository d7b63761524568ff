"""The four classifier contracts behind one scorer interface.

Tasks and output ranges:

* C1 relevance(claim, perspective)        -> [0, 1]
* C2 stance(claim, perspective)           -> [-1, 1], sign = support/oppose
* C3 equivalence(claim, p1, p2)           -> [0, 1]
* C4 evidence(claim, perspective, para)   -> [0, 1]

Three interchangeable backends: deterministic lexical baselines, a
gold-annotation lookup (the test oracle), and a remote HTTP adapter that
plugs in any learned model and falls back to the baseline on failure.
"""

from __future__ import annotations

import logging
import math
import threading
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import requests

from .corpus import CorpusStore, normalize_text
from .retrieval import InvertedIndex, tokenize

logger = logging.getLogger(__name__)

TASKS = ("C1", "C2", "C3", "C4")

# inclusive (lo, hi) per task
TASK_RANGES = {
    "C1": (0.0, 1.0),
    "C2": (-1.0, 1.0),
    "C3": (0.0, 1.0),
    "C4": (0.0, 1.0),
}


class ScorerError(Exception):
    pass


@dataclass(frozen=True)
class ScoreRequest:
    """One scoring call; also the body of the remote wire protocol."""

    task: str
    claim: str
    perspective: str
    perspective2: str | None = None
    evidence: str | None = None

    def __post_init__(self):
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}")
        if (self.perspective2 is not None) != (self.task == "C3"):
            raise ValueError("perspective2 is required for C3 and only C3")
        if (self.evidence is not None) != (self.task == "C4"):
            raise ValueError("evidence is required for C4 and only C4")

    def to_wire(self) -> dict:
        body = {"task": self.task, "claim": self.claim, "perspective": self.perspective}
        if self.perspective2 is not None:
            body["perspective2"] = self.perspective2
        if self.evidence is not None:
            body["evidence"] = self.evidence
        return body


def in_range(task: str, value: float) -> bool:
    lo, hi = TASK_RANGES[task]
    return lo <= value <= hi


def _require_nonempty(*texts: str):
    for text in texts:
        if not text or not text.strip():
            raise ScorerError("empty text")


class Scorer:
    """Backend interface. All methods are safe for concurrent use."""

    name = "scorer"

    def score_relevance(self, claim: str, perspective: str) -> float:
        raise NotImplementedError

    def score_stance(self, claim: str, perspective: str) -> float:
        raise NotImplementedError

    def score_equivalence(self, claim: str, p1: str, p2: str) -> float:
        raise NotImplementedError

    def score_evidence(self, claim: str, perspective: str, evidence: str) -> float:
        raise NotImplementedError

    def score(self, request: ScoreRequest) -> float:
        if request.task == "C1":
            return self.score_relevance(request.claim, request.perspective)
        if request.task == "C2":
            return self.score_stance(request.claim, request.perspective)
        if request.task == "C3":
            return self.score_equivalence(request.claim, request.perspective,
                                          request.perspective2)
        return self.score_evidence(request.claim, request.perspective, request.evidence)


# -- cue lexicon for the baseline stance heuristic -------------------------

@dataclass(frozen=True)
class CueLexicon:
    """Editable stance cue list: one cue per line, prefixed '+' (support),
    '-' (oppose) or '!' (negation). A starter list ships with the package."""

    support: frozenset[str]
    oppose: frozenset[str]
    negation: frozenset[str]

    @classmethod
    def from_lines(cls, lines) -> "CueLexicon":
        support, oppose, negation = set(), set(), set()
        for lineno, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            prefix, word = line[0], line[1:].strip()
            tokens = tokenize(word)
            if len(tokens) != 1:
                raise ValueError(f"cue line {lineno}: expected a single token, got {word!r}")
            if prefix == "+":
                support.add(tokens[0])
            elif prefix in ("-", "−"):
                oppose.add(tokens[0])
            elif prefix == "!":
                negation.add(tokens[0])
            else:
                raise ValueError(f"cue line {lineno}: unknown prefix {prefix!r}")
        return cls(frozenset(support), frozenset(oppose), frozenset(negation))

    @classmethod
    def from_file(cls, path: str | Path) -> "CueLexicon":
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh)

    @classmethod
    def default(cls) -> "CueLexicon":
        text = resources.files("claimlens").joinpath("data/cues.txt").read_text("utf-8")
        return cls.from_lines(text.splitlines())


class BaselineScorer(Scorer):
    """Deterministic lexical baselines.

    C1 is TF-IDF cosine between the two token vectors, with IDF taken from
    the perspective index when one is supplied (tokens unseen by the index
    get the df=0 smoothed IDF). C2 multiplies the C1 magnitude by a cue-count
    sign. C3 is Jaccard over token sets and ignores the claim context, a
    documented simplification. C4 is token recall of claim+perspective
    against the evidence paragraph.
    """

    name = "baseline"

    def __init__(self, index: InvertedIndex | None = None,
                 cues: CueLexicon | None = None,
                 stopwords: frozenset[str] | set[str] = frozenset()):
        self.index = index
        self.cues = cues if cues is not None else CueLexicon.default()
        self.stopwords = frozenset(stopwords)

    def _idf(self, token: str) -> float:
        if self.index is None:
            return 1.0
        n = self.index.document_frequency(token)
        big_n = self.index.doc_count
        return math.log((big_n - n + 0.5) / (n + 0.5) + 1.0)

    def _tokens(self, text: str) -> list[str]:
        return tokenize(text, self.stopwords)

    def score_relevance(self, claim: str, perspective: str) -> float:
        _require_nonempty(claim, perspective)
        ca = Counter(self._tokens(claim))
        cb = Counter(self._tokens(perspective))
        if not ca or not cb:
            return 0.0
        if ca == cb:
            return 1.0  # cosine of a vector with itself
        dot = 0.0
        for token, tf in ca.items():
            if token in cb:
                dot += (tf * self._idf(token)) * (cb[token] * self._idf(token))
        if dot == 0.0:
            return 0.0
        norm_a = math.sqrt(sum((tf * self._idf(t)) ** 2 for t, tf in ca.items()))
        norm_b = math.sqrt(sum((tf * self._idf(t)) ** 2 for t, tf in cb.items()))
        return min(1.0, max(0.0, dot / (norm_a * norm_b)))

    def score_stance(self, claim: str, perspective: str) -> float:
        _require_nonempty(claim, perspective)
        tokens = self._tokens(perspective)
        net = sum(t in self.cues.support for t in tokens) - sum(
            t in self.cues.oppose for t in tokens
        )
        if net == 0:
            return 0.0
        sign = 1.0 if net > 0 else -1.0
        flips = sum(t in self.cues.negation for t in tokens)
        if flips % 2:
            sign = -sign
        return sign * self.score_relevance(claim, perspective)

    def score_equivalence(self, claim: str, p1: str, p2: str) -> float:
        _require_nonempty(claim, p1, p2)
        s1 = set(self._tokens(p1))
        s2 = set(self._tokens(p2))
        if not s1 and not s2:
            return 1.0  # identical (empty) token sets
        union = s1 | s2
        if not s1 or not s2:
            return 0.0
        return len(s1 & s2) / len(union)

    def score_evidence(self, claim: str, perspective: str, evidence: str) -> float:
        _require_nonempty(claim, perspective, evidence)
        required = set(self._tokens(claim)) | set(self._tokens(perspective))
        if not required:
            return 0.0
        present = set(self._tokens(evidence))
        return len(required & present) / len(required)


class GoldScorer(Scorer):
    """Answers from gold annotations; the deterministic pipeline oracle.

    Texts resolve to ids by exact match after whitespace normalization; any
    call with an unresolvable text falls through to the fallback scorer, so
    mixed corpora (e.g. expansion candidates) still score.
    """

    name = "gold"

    def __init__(self, store: CorpusStore, fallback: Scorer):
        self.fallback = fallback
        self._claim_ids = self._text_map(store.claims)
        self._perspective_ids = self._text_map(store.perspectives)
        self._evidence_ids = self._text_map(store.evidence)
        self._pairs: dict[tuple[str, str], tuple[str, str, frozenset[str]]] = {}
        for ann in store.gold:
            key = (ann.claim_id, ann.perspective_id)
            if key not in self._pairs:
                self._pairs[key] = (ann.stance, ann.cluster_id, frozenset(ann.evidence_ids))

    @staticmethod
    def _text_map(table: dict) -> dict[str, str]:
        # sorted by id so colliding normalized texts resolve deterministically
        mapping: dict[str, str] = {}
        for rid in sorted(table):
            mapping.setdefault(normalize_text(table[rid].text), rid)
        return mapping

    def _resolve(self, mapping: dict[str, str], text: str) -> str | None:
        return mapping.get(normalize_text(text))

    def score_relevance(self, claim: str, perspective: str) -> float:
        _require_nonempty(claim, perspective)
        cid = self._resolve(self._claim_ids, claim)
        pid = self._resolve(self._perspective_ids, perspective)
        if cid is None or pid is None:
            return self.fallback.score_relevance(claim, perspective)
        return 1.0 if (cid, pid) in self._pairs else 0.0

    def score_stance(self, claim: str, perspective: str) -> float:
        _require_nonempty(claim, perspective)
        cid = self._resolve(self._claim_ids, claim)
        pid = self._resolve(self._perspective_ids, perspective)
        if cid is None or pid is None:
            return self.fallback.score_stance(claim, perspective)
        ann = self._pairs.get((cid, pid))
        if ann is None:
            return 0.0
        return 1.0 if ann[0] == "support" else -1.0

    def score_equivalence(self, claim: str, p1: str, p2: str) -> float:
        _require_nonempty(claim, p1, p2)
        cid = self._resolve(self._claim_ids, claim)
        pid1 = self._resolve(self._perspective_ids, p1)
        pid2 = self._resolve(self._perspective_ids, p2)
        if cid is None or pid1 is None or pid2 is None:
            return self.fallback.score_equivalence(claim, p1, p2)
        ann1 = self._pairs.get((cid, pid1))
        ann2 = self._pairs.get((cid, pid2))
        if ann1 is None or ann2 is None:
            return 0.0
        return 1.0 if ann1[1] == ann2[1] else 0.0

    def score_evidence(self, claim: str, perspective: str, evidence: str) -> float:
        _require_nonempty(claim, perspective, evidence)
        cid = self._resolve(self._claim_ids, claim)
        pid = self._resolve(self._perspective_ids, perspective)
        eid = self._resolve(self._evidence_ids, evidence)
        if cid is None or pid is None or eid is None:
            return self.fallback.score_evidence(claim, perspective, evidence)
        ann = self._pairs.get((cid, pid))
        if ann is None:
            return 0.0
        return 1.0 if eid in ann[2] else 0.0


class RemoteScorer(Scorer):
    """HTTP adapter speaking the wire protocol to an external model server.

    POSTs ``{"task", "claim", "perspective", "perspective2"?, "evidence"?}``
    and expects ``{"score": number}`` back. Transport failures and
    out-of-range replies fall back to the baseline with a logged warning;
    nothing surfaces to the pipeline.
    """

    name = "remote"

    def __init__(self, url: str, fallback: Scorer, timeout: float = 10.0,
                 max_inflight: int = 8):
        if not url:
            raise ScorerError("remote scorer requires a URL")
        self.url = url
        self.fallback = fallback
        self.timeout = timeout
        self._gate = threading.Semaphore(max_inflight)
        self._session = requests.Session()

    def probe(self, timeout: float = 2.0) -> bool:
        """Cheap reachability check used by health reporting."""
        try:
            resp = self._session.post(
                self.url, json=ScoreRequest("C1", "ping", "ping").to_wire(),
                timeout=timeout)
            resp.raise_for_status()
            return True
        except Exception:
            return False

    def score(self, request: ScoreRequest) -> float:
        try:
            with self._gate:
                resp = self._session.post(self.url, json=request.to_wire(),
                                          timeout=self.timeout)
            resp.raise_for_status()
            value = resp.json()["score"]
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValueError(f"non-numeric score {value!r}")
            value = float(value)
            if not in_range(request.task, value):
                raise ValueError(f"score {value} out of range for {request.task}")
            return value
        except Exception as exc:
            logger.warning("remote scorer failed (%s); using baseline", exc)
            return self.fallback.score(request)

    def score_relevance(self, claim: str, perspective: str) -> float:
        _require_nonempty(claim, perspective)
        return self.score(ScoreRequest("C1", claim, perspective))

    def score_stance(self, claim: str, perspective: str) -> float:
        _require_nonempty(claim, perspective)
        return self.score(ScoreRequest("C2", claim, perspective))

    def score_equivalence(self, claim: str, p1: str, p2: str) -> float:
        _require_nonempty(claim, p1, p2)
        return self.score(ScoreRequest("C3", claim, p1, perspective2=p2))

    def score_evidence(self, claim: str, perspective: str, evidence: str) -> float:
        _require_nonempty(claim, perspective, evidence)
        return self.score(ScoreRequest("C4", claim, perspective, evidence=evidence))
