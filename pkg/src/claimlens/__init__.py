"""claimlens: substantiated perspective discovery over indexed corpora.

Given a natural-language claim, retrieve candidate perspectives and evidence,
score them for relevance, stance, equivalence and evidential support, cluster
equivalent perspectives, and return a minimal stance-labeled, evidence-backed
perspective set.
"""

from .corpus import (Claim, CorpusStore, EvidenceParagraph, GoldAnnotation,
                     Perspective)
from .pipeline import (PerspectiveEngine, PipelineConfig, QueryResult,
                       ScoredEvidence, ScoredPerspective)
from .scorers import BaselineScorer, GoldScorer, RemoteScorer, ScoreRequest

__version__ = "0.1.0"

__all__ = [
    "Claim",
    "Perspective",
    "EvidenceParagraph",
    "GoldAnnotation",
    "CorpusStore",
    "PerspectiveEngine",
    "PipelineConfig",
    "QueryResult",
    "ScoredEvidence",
    "ScoredPerspective",
    "BaselineScorer",
    "GoldScorer",
    "RemoteScorer",
    "ScoreRequest",
    "__version__",
]
