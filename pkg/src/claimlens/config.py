"""Flat `key = value` configuration file handling and engine assembly.

One file carries both the pipeline parameters and the application settings:
backend selection, remote scorer URL, corpus paths, stopword and cue lexicon
paths, and the expansion document directory. Blank lines and `#` comments
are ignored; unknown keys are rejected.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .corpus import CorpusStore
from .expansion import FileDocumentSource
from .pipeline import PerspectiveEngine, PipelineConfig
from .retrieval import build_index
from .scorers import BaselineScorer, CueLexicon, GoldScorer, RemoteScorer, Scorer

SCORER_BACKENDS = ("baseline", "gold", "remote")


class ConfigError(Exception):
    pass


@dataclass
class AppSettings:
    """Everything outside PipelineConfig that the CLI and service need."""

    data_dir: Path = Path("claimlens-data")
    scorer_backend: str = "baseline"
    remote_url: str | None = None
    remote_timeout: float = 10.0
    remote_max_inflight: int = 8
    claims_path: Path | None = None
    perspectives_path: Path | None = None
    evidence_path: Path | None = None
    gold_path: Path | None = None
    stopwords_path: Path | None = None
    cues_path: Path | None = None
    expansion_dir: Path | None = None
    expansion_limit: int = 10

    def __post_init__(self):
        if self.scorer_backend not in SCORER_BACKENDS:
            raise ConfigError(f"scorer_backend must be one of {SCORER_BACKENDS}")
        if self.scorer_backend == "remote" and not self.remote_url:
            raise ConfigError("scorer_backend = remote requires remote_url")
        if self.remote_max_inflight < 1:
            raise ConfigError("remote_max_inflight must be >= 1")
        if self.expansion_limit < 1:
            raise ConfigError("expansion_limit must be >= 1")


_PIPELINE_FIELDS = {f.name: f.type for f in dataclasses.fields(PipelineConfig)}
_INT_KEYS = {"min_pts", "k_perspectives", "k_evidence", "remote_max_inflight",
             "expansion_limit"}
_FLOAT_KEYS = {"t1", "t2", "t4", "eps", "bm25_k1", "bm25_b", "remote_timeout"}
_PATH_KEYS = {"data_dir", "claims_path", "perspectives_path", "evidence_path",
              "gold_path", "stopwords_path", "cues_path", "expansion_dir"}
_STR_KEYS = {"evidence_mode", "scorer_backend", "remote_url"}


def parse_config_text(text: str, base_dir: Path | None = None
                      ) -> tuple[PipelineConfig, AppSettings]:
    pipeline_kwargs: dict = {}
    settings_kwargs: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        try:
            if key in _INT_KEYS:
                parsed = int(value)
            elif key in _FLOAT_KEYS:
                parsed = float(value)
            elif key in _PATH_KEYS:
                path = Path(value)
                if base_dir is not None and not path.is_absolute():
                    path = base_dir / path
                parsed = path
            elif key in _STR_KEYS:
                parsed = value
            else:
                raise ConfigError(f"config line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"config line {lineno}: bad value for {key}: {exc}") from exc
        if key in _PIPELINE_FIELDS:
            pipeline_kwargs[key] = parsed
        else:
            settings_kwargs[key] = parsed
    try:
        return PipelineConfig(**pipeline_kwargs), AppSettings(**settings_kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def parse_config_file(path: str | Path) -> tuple[PipelineConfig, AppSettings]:
    path = Path(path)
    return parse_config_text(path.read_text(encoding="utf-8"),
                             base_dir=path.resolve().parent)


def load_stopwords(path: Path | None) -> frozenset[str]:
    if path is None:
        return frozenset()
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip().lower()
            if word and not word.startswith("#"):
                words.add(word)
    return frozenset(words)


def open_store(settings: AppSettings) -> CorpusStore:
    """Open the embedded store, ingesting any configured corpus files the
    store has not seen yet (fresh store only)."""
    store = CorpusStore(settings.data_dir)
    if not store.perspectives and settings.perspectives_path:
        store.ingest_perspectives(settings.perspectives_path)
    if not store.evidence and settings.evidence_path:
        store.ingest_evidence(settings.evidence_path)
    if not store.claims and settings.claims_path:
        store.ingest_claims(settings.claims_path)
    if not store.gold and settings.gold_path:
        store.ingest_gold(settings.gold_path)
    return store


def build_scorer(settings: AppSettings, store: CorpusStore,
                 perspective_index) -> Scorer:
    cues = (CueLexicon.from_file(settings.cues_path) if settings.cues_path
            else CueLexicon.default())
    stopwords = load_stopwords(settings.stopwords_path)
    baseline = BaselineScorer(index=perspective_index, cues=cues, stopwords=stopwords)
    if settings.scorer_backend == "baseline":
        return baseline
    if settings.scorer_backend == "gold":
        return GoldScorer(store, fallback=baseline)
    return RemoteScorer(settings.remote_url, fallback=baseline,
                        timeout=settings.remote_timeout,
                        max_inflight=settings.remote_max_inflight)


def build_engine(pipeline_config: PipelineConfig, settings: AppSettings,
                 store: CorpusStore | None = None) -> PerspectiveEngine:
    store = store if store is not None else open_store(settings)
    stopwords = load_stopwords(settings.stopwords_path)
    perspective_index = build_index(
        ((p.id, p.text) for p in store.perspectives.values()), stopwords=stopwords)
    evidence_index = build_index(
        ((e.id, e.text) for e in store.evidence.values()), stopwords=stopwords)
    scorer = build_scorer(settings, store, perspective_index)
    source = (FileDocumentSource(settings.expansion_dir)
              if settings.expansion_dir else None)
    return PerspectiveEngine(
        store=store,
        scorer=scorer,
        perspective_index=perspective_index,
        evidence_index=evidence_index,
        config=pipeline_config,
        expansion_source=source,
        expansion_limit=settings.expansion_limit,
    )
