"""End-to-end perspective discovery.

The flow per query: retrieve candidate perspectives, gate them on relevance
and stance magnitude, optionally verify evidence for each survivor, cluster
the survivors by equivalence and keep one representative per cluster, then
split the clusters into supporting and opposing sides.

Output is deterministic given corpora, config and scorer backend: every sort
key is a total order independent of timing.
"""

from __future__ import annotations

import dataclasses
import hashlib
import time
import uuid
from dataclasses import dataclass, field

from .clustering import build_distance_matrix, dbscan, select_representative
from .corpus import Claim, CorpusStore, EvidenceParagraph, Perspective, normalize_text
from .expansion import FileDocumentSource, extract_candidates, fetch_documents
from .retrieval import InvertedIndex, search, search_evidence
from .scorers import Scorer

EVIDENCE_MODES = ("eager", "lazy")


class PipelineError(Exception):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    """All gate thresholds, clustering parameters and candidate budgets."""

    t1: float = 0.5            # relevance gate: keep iff C1 > t1
    t2: float = 0.1            # stance gate: keep iff |C2| > t2
    t4: float = 0.5            # evidence gate: keep iff C4 > t4
    eps: float = 0.4           # DBSCAN neighborhood radius on 1 - C3
    min_pts: int = 2
    k_perspectives: int = 30
    k_evidence: int = 20
    bm25_k1: float = 1.2
    bm25_b: float = 0.75
    evidence_mode: str = "eager"

    def __post_init__(self):
        for name in ("t1", "t2", "t4", "eps"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) \
                    or not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        for name in ("min_pts", "k_perspectives", "k_evidence"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{name} must be an integer >= 1")
        for name in ("bm25_k1", "bm25_b"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) \
                    or value < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.bm25_b > 1.0:
            raise ValueError("bm25_b must lie in [0, 1]")
        if self.evidence_mode not in EVIDENCE_MODES:
            raise ValueError(f"evidence_mode must be one of {EVIDENCE_MODES}")

    def replace(self, **overrides) -> "PipelineConfig":
        unknown = set(overrides) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return dataclasses.replace(self, **overrides)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class ScoredEvidence:
    evidence: EvidenceParagraph
    verification_score: float


@dataclass
class ScoredPerspective:
    """A gated perspective with its recorded scores; ``evidence`` stays None
    until resolved (lazy mode)."""

    perspective: Perspective
    relevance: float
    stance: float
    evidence: list[ScoredEvidence] | None = None

    @property
    def ref(self) -> str:
        return self.perspective.id


@dataclass
class ClusterOutput:
    representative: ScoredPerspective
    members: list[ScoredPerspective]
    is_noise_singleton: bool


@dataclass
class QueryResult:
    query_id: str
    claim: Claim
    supporting: list[ClusterOutput]
    opposing: list[ClusterOutput]
    config_used: PipelineConfig
    timings: dict[str, float] = field(default_factory=dict)


@dataclass
class QueryState:
    """Everything retained per query to serve lazy evidence resolution and
    feedback references later."""

    result: QueryResult
    claim_text: str
    config: PipelineConfig
    perspectives_by_ref: dict[str, ScoredPerspective]
    adhoc_evidence: tuple[InvertedIndex, dict[str, EvidenceParagraph]] | None = None


def expansion_id(text: str) -> str:
    digest = hashlib.sha1(normalize_text(text).encode("utf-8")).hexdigest()
    return "exp-" + digest[:16]


class PerspectiveEngine:
    """Holds the corpora, the two indexes, a scorer backend and the default
    config; executes queries. Immutable after construction, so concurrent
    queries need no shared locks."""

    def __init__(self, store: CorpusStore, scorer: Scorer,
                 perspective_index: InvertedIndex, evidence_index: InvertedIndex,
                 config: PipelineConfig | None = None,
                 expansion_source: FileDocumentSource | None = None,
                 expansion_limit: int = 10):
        self.store = store
        self.scorer = scorer
        self.perspective_index = perspective_index
        self.evidence_index = evidence_index
        self.config = config or PipelineConfig()
        self.expansion_source = expansion_source
        self.expansion_limit = expansion_limit

    # -- candidate generation ---------------------------------------------

    def _corpus_candidates(self, claim_text: str, cfg: PipelineConfig) -> list[Perspective]:
        hits = search(self.perspective_index, claim_text, cfg.k_perspectives,
                      k1=cfg.bm25_k1, b=cfg.bm25_b)
        return [self.store.perspectives[hit.doc_id] for hit in hits]

    def _expansion_candidates(self, claim_text: str, cfg: PipelineConfig):
        """Returns (perspectives, adhoc evidence index + table) or ([], None)."""
        if self.expansion_source is None:
            return [], None
        docs = fetch_documents(self.expansion_source, claim_text,
                               limit=self.expansion_limit,
                               k1=cfg.bm25_k1, b=cfg.bm25_b,
                               stopwords=self.perspective_index.stopwords)
        if not docs:
            return [], None
        candidates = extract_candidates(docs)
        perspectives = [
            Perspective(id=expansion_id(text), text=text, source="expansion", uri=uri)
            for text, uri in candidates.perspectives
        ]
        evidence_table: dict[str, EvidenceParagraph] = {}
        for text, uri in candidates.evidence:
            para = EvidenceParagraph(id=expansion_id(text), text=text,
                                     source="expansion", uri=uri)
            evidence_table.setdefault(para.id, para)
        adhoc = None
        if evidence_table:
            index = InvertedIndex(
                ((eid, para.text) for eid, para in evidence_table.items()),
                stopwords=self.evidence_index.stopwords,
            )
            adhoc = (index, evidence_table)
        return perspectives, adhoc

    # -- evidence ----------------------------------------------------------

    def resolve_evidence(self, claim_text: str, perspective: Perspective,
                         cfg: PipelineConfig | None = None,
                         adhoc: tuple[InvertedIndex, dict[str, EvidenceParagraph]] | None = None
                         ) -> list[ScoredEvidence]:
        """Top k_evidence candidates for (claim, perspective), kept when the
        verification score clears t4, sorted score-descending then id.

        Corpus perspectives search the persistent evidence index; expansion
        perspectives search only the ad-hoc index built from their own
        fetched documents.
        """
        cfg = cfg or self.config
        if perspective.source == "expansion":
            if adhoc is None:
                return []
            index, table = adhoc
        else:
            index, table = self.evidence_index, self.store.evidence
        hits = search_evidence(index, claim_text, perspective.text, cfg.k_evidence,
                               k1=cfg.bm25_k1, b=cfg.bm25_b)
        kept = []
        for hit in hits:
            para = table[hit.doc_id]
            score = self.scorer.score_evidence(claim_text, perspective.text, para.text)
            if score > cfg.t4:
                kept.append(ScoredEvidence(para, score))
        kept.sort(key=lambda se: (-se.verification_score, se.evidence.id))
        return kept

    # -- the full query ----------------------------------------------------

    def discover(self, claim_text: str, config: PipelineConfig | None = None,
                 query_id: str | None = None) -> QueryState:
        if not claim_text or not claim_text.strip():
            raise PipelineError("empty claim")
        cfg = config or self.config
        query_id = query_id or uuid.uuid4().hex
        timings: dict[str, float] = {}
        started = time.perf_counter()

        candidates = self._corpus_candidates(claim_text, cfg)
        expansion_perspectives, adhoc = self._expansion_candidates(claim_text, cfg)
        seen_texts = set()
        merged: list[Perspective] = []
        for p in candidates + expansion_perspectives:
            key = normalize_text(p.text)
            if key in seen_texts:
                continue
            seen_texts.add(key)
            merged.append(p)
        timings["retrieval"] = time.perf_counter() - started

        mark = time.perf_counter()
        survivors: list[ScoredPerspective] = []
        for p in merged:
            relevance = self.scorer.score_relevance(claim_text, p.text)
            if relevance <= cfg.t1:
                continue
            stance = self.scorer.score_stance(claim_text, p.text)
            if abs(stance) <= cfg.t2:
                continue
            survivors.append(ScoredPerspective(p, relevance, stance))
        timings["gating"] = time.perf_counter() - mark

        mark = time.perf_counter()
        if cfg.evidence_mode == "eager":
            for sp in survivors:
                sp.evidence = self.resolve_evidence(claim_text, sp.perspective, cfg, adhoc)
        timings["evidence"] = time.perf_counter() - mark

        mark = time.perf_counter()
        supporting: list[ClusterOutput] = []
        opposing: list[ClusterOutput] = []
        if survivors:
            matrix = build_distance_matrix(
                claim_text, [sp.perspective.text for sp in survivors], self.scorer
            )
            relevances = [sp.relevance for sp in survivors]
            for cluster in dbscan(matrix, cfg.eps, cfg.min_pts):
                rep = select_representative(cluster, relevances)
                output = ClusterOutput(
                    representative=survivors[rep],
                    members=[survivors[i] for i in cluster.member_indices],
                    is_noise_singleton=cluster.is_noise_singleton,
                )
                side = supporting if output.representative.stance > 0 else opposing
                side.append(output)
        sort_key = lambda c: (-c.representative.relevance, c.representative.ref)
        supporting.sort(key=sort_key)
        opposing.sort(key=sort_key)
        timings["clustering"] = time.perf_counter() - mark
        timings["total"] = time.perf_counter() - started

        result = QueryResult(
            query_id=query_id,
            claim=Claim(id=query_id, text=claim_text),
            supporting=supporting,
            opposing=opposing,
            config_used=cfg,
            timings=timings,
        )
        by_ref = {sp.ref: sp for sp in survivors}
        return QueryState(result=result, claim_text=claim_text, config=cfg,
                          perspectives_by_ref=by_ref, adhoc_evidence=adhoc)


# -- JSON shapes -------------------------------------------------------------

def scored_evidence_to_dict(se: ScoredEvidence) -> dict:
    obj = {
        "id": se.evidence.id,
        "text": se.evidence.text,
        "source": se.evidence.source,
        "verification_score": se.verification_score,
    }
    if se.evidence.uri:
        obj["uri"] = se.evidence.uri
    return obj


def scored_perspective_to_dict(sp: ScoredPerspective) -> dict:
    obj = {
        "ref": sp.ref,
        "id": sp.perspective.id,
        "text": sp.perspective.text,
        "source": sp.perspective.source,
        "relevance": sp.relevance,
        "stance": sp.stance,
    }
    if sp.perspective.uri:
        obj["uri"] = sp.perspective.uri
    if sp.evidence is not None:
        obj["evidence"] = [scored_evidence_to_dict(se) for se in sp.evidence]
    return obj


def cluster_to_dict(cluster: ClusterOutput) -> dict:
    return {
        "representative": scored_perspective_to_dict(cluster.representative),
        "members": [scored_perspective_to_dict(sp) for sp in cluster.members],
        "is_noise_singleton": cluster.is_noise_singleton,
        "evidence_resolved": cluster.representative.evidence is not None,
    }


def query_result_to_dict(result: QueryResult) -> dict:
    return {
        "query_id": result.query_id,
        "claim": {"text": result.claim.text},
        "supporting": [cluster_to_dict(c) for c in result.supporting],
        "opposing": [cluster_to_dict(c) for c in result.opposing],
        "config_used": result.config_used.to_dict(),
        "timings": result.timings,
    }
