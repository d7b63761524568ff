"""Command line entry points: ingest, query, serve, eval."""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import tempfile
from pathlib import Path

from .config import (AppSettings, ConfigError, build_engine, open_store,
                     parse_config_file)
from .corpus import CorpusError, CorpusStore
from .feedback import FeedbackLog
from .pipeline import PipelineConfig, PipelineError, query_result_to_dict
from .retrieval import search, search_evidence
from .scorers import ScorerError


class CliError(Exception):
    pass


def _load_config(config_path: str | None) -> tuple[PipelineConfig, AppSettings]:
    if config_path:
        return parse_config_file(config_path)
    return PipelineConfig(), AppSettings()


def _feedback_log(settings: AppSettings) -> FeedbackLog:
    return FeedbackLog(Path(settings.data_dir) / "feedback")


# -- ingest -----------------------------------------------------------------

def cmd_ingest(args) -> int:
    _, settings = _load_config(args.config)
    if args.data_dir:
        settings.data_dir = Path(args.data_dir)
    store = CorpusStore(settings.data_dir)
    if args.claims:
        print(f"claims: {store.ingest_claims(args.claims)} ingested")
    if args.perspectives:
        print(f"perspectives: {store.ingest_perspectives(args.perspectives)} ingested")
    if args.evidence:
        print(f"evidence: {store.ingest_evidence(args.evidence)} ingested")
    if args.gold:
        print(f"gold: {store.ingest_gold(args.gold)} ingested")
    counts = store.counts()
    print("store now holds "
          f"{counts['perspectives']} perspectives, {counts['evidence']} evidence, "
          f"{counts['claims']} claims, {counts['gold']} gold annotations")
    return 0


# -- query ------------------------------------------------------------------

def _bar(value: float, width: int = 10) -> str:
    filled = round(abs(value) * width)
    return "#" * filled + "." * (width - filled)


def _print_cluster(cluster: dict, show_evidence: bool):
    rep = cluster["representative"]
    extra = ""
    if len(cluster["members"]) > 1:
        extra = f"  (+{len(cluster['members']) - 1} equivalent)"
    print(f"  [rel {_bar(rep['relevance'])} {rep['relevance']:.2f} | "
          f"stance {rep['stance']:+.2f}] {rep['text']}{extra}")
    if show_evidence:
        for ev in rep.get("evidence", []):
            text = ev["text"]
            if len(text) > 100:
                text = text[:97] + "..."
            print(f"      evidence ({ev['verification_score']:.2f}): {text}")


def cmd_query(args) -> int:
    cfg, settings = _load_config(args.config)
    if args.eager_evidence:
        cfg = cfg.replace(evidence_mode="eager")
    engine = build_engine(cfg, settings)
    feedback = _feedback_log(settings)
    query_id = feedback.log_query(args.claim, cfg.to_dict())
    state = engine.discover(args.claim, cfg, query_id=query_id)
    payload = query_result_to_dict(state.result)
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    show_evidence = cfg.evidence_mode == "eager"
    print(f"claim: {args.claim}")
    print(f"query_id: {query_id}")
    print(f"supporting ({len(payload['supporting'])} clusters):")
    for cluster in payload["supporting"]:
        _print_cluster(cluster, show_evidence)
    print(f"opposing ({len(payload['opposing'])} clusters):")
    for cluster in payload["opposing"]:
        _print_cluster(cluster, show_evidence)
    return 0


# -- serve ------------------------------------------------------------------

def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    cfg, settings = _load_config(args.config)
    engine = build_engine(cfg, settings)
    feedback = _feedback_log(settings)
    app = create_app(engine, feedback, static_dir=args.static)
    counts = engine.store.counts()
    print(f"serving {counts['perspectives']} perspectives / "
          f"{counts['evidence']} evidence on port {args.port} "
          f"(backend: {engine.scorer.name})")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


# -- eval ---------------------------------------------------------------------

def parse_sweep(spec: str) -> dict[str, list[float]]:
    """Grammar: ``t1=0.1..0.9:0.2,t2=0.0..0.3:0.1`` -> threshold grids."""
    grids: dict[str, list[float]] = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part or ".." not in part or ":" not in part:
            raise CliError(f"bad sweep term {part!r}; expected name=lo..hi:step")
        name, _, rng = part.partition("=")
        name = name.strip()
        if name not in ("t1", "t2", "t4"):
            raise CliError(f"sweep supports t1/t2/t4, not {name!r}")
        bounds, _, step_s = rng.partition(":")
        lo_s, _, hi_s = bounds.partition("..")
        try:
            lo, hi, step = float(lo_s), float(hi_s), float(step_s)
        except ValueError as exc:
            raise CliError(f"bad sweep numbers in {part!r}") from exc
        if step <= 0 or hi < lo:
            raise CliError(f"bad sweep range in {part!r}")
        values = []
        v = lo
        while v <= hi + 1e-9:
            values.append(round(v, 10))
            v += step
        grids[name] = values
    if not grids:
        raise CliError("empty sweep spec")
    return grids


def _safe_ratio(num: int, den: int) -> float:
    return num / den if den else 1.0


def cmd_eval(args) -> int:
    cfg, settings = _load_config(args.config)
    if not settings.perspectives_path or not settings.evidence_path:
        raise CliError("eval needs perspectives_path and evidence_path in the config")
    with tempfile.TemporaryDirectory(prefix="claimlens-eval-") as tmp:
        store = CorpusStore(tmp)
        store.ingest_perspectives(settings.perspectives_path)
        store.ingest_evidence(settings.evidence_path)
        store.ingest_claims(args.claims)
        store.ingest_gold(args.gold)
        engine = build_engine(cfg, settings, store=store)

        gold_pids: dict[str, set[str]] = {}
        gold_ev: dict[str, set[tuple[str, str]]] = {}
        for ann in store.gold:
            gold_pids.setdefault(ann.claim_id, set()).add(ann.perspective_id)
            for eid in ann.evidence_ids:
                gold_ev.setdefault(ann.claim_id, set()).add((ann.perspective_id, eid))

        # scores are threshold-independent: compute once, gate per sweep point
        per_claim = []
        for claim in store.claims.values():
            hits = search(engine.perspective_index, claim.text, cfg.k_perspectives,
                          k1=cfg.bm25_k1, b=cfg.bm25_b)
            scored = []
            for hit in hits:
                p = store.perspectives[hit.doc_id]
                relevance = engine.scorer.score_relevance(claim.text, p.text)
                stance = engine.scorer.score_stance(claim.text, p.text)
                ev_hits = search_evidence(engine.evidence_index, claim.text, p.text,
                                          cfg.k_evidence, k1=cfg.bm25_k1, b=cfg.bm25_b)
                ev_scores = [
                    (eh.doc_id, engine.scorer.score_evidence(
                        claim.text, p.text, store.evidence[eh.doc_id].text))
                    for eh in ev_hits
                ]
                scored.append((p.id, relevance, stance, ev_scores))
            per_claim.append((claim.id, scored))

        grids = parse_sweep(args.sweep) if args.sweep else {}
        names = sorted(grids)
        points = [dict(zip(names, combo))
                  for combo in itertools.product(*(grids[n] for n in names))] or [{}]

        rows = []
        for point in points:
            t1 = point.get("t1", cfg.t1)
            t2 = point.get("t2", cfg.t2)
            t4 = point.get("t4", cfg.t4)
            tp = fp = fn = etp = efp = efn = 0
            for claim_id, scored in per_claim:
                predicted = {pid for pid, r, s, _ in scored if r > t1 and abs(s) > t2}
                gold = gold_pids.get(claim_id, set())
                tp += len(predicted & gold)
                fp += len(predicted - gold)
                fn += len(gold - predicted)
                pred_ev = {(pid, eid) for pid, r, s, evs in scored
                           if pid in predicted for eid, c4 in evs if c4 > t4}
                gold_pairs = gold_ev.get(claim_id, set())
                etp += len(pred_ev & gold_pairs)
                efp += len(pred_ev - gold_pairs)
                efn += len(gold_pairs - pred_ev)
            row = {
                "t1": t1, "t2": t2, "t4": t4,
                "perspective_precision": _safe_ratio(tp, tp + fp),
                "perspective_recall": _safe_ratio(tp, tp + fn),
                "evidence_precision": _safe_ratio(etp, etp + efp),
                "evidence_recall": _safe_ratio(etp, etp + efn),
            }
            rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    header = (f"{'t1':>5} {'t2':>5} {'t4':>5} "
              f"{'p_prec':>7} {'p_rec':>7} {'e_prec':>7} {'e_rec':>7}")
    print(header)
    for row in rows:
        print(f"{row['t1']:>5.2f} {row['t2']:>5.2f} {row['t4']:>5.2f} "
              f"{row['perspective_precision']:>7.3f} {row['perspective_recall']:>7.3f} "
              f"{row['evidence_precision']:>7.3f} {row['evidence_recall']:>7.3f}")
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="claimlens",
        description="Discover stance-labeled, evidence-backed perspectives on a claim.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="load corpus files into the store")
    p_ingest.add_argument("--perspectives", help="perspectives JSONL file")
    p_ingest.add_argument("--evidence", help="evidence JSONL file")
    p_ingest.add_argument("--claims", help="claims JSONL file")
    p_ingest.add_argument("--gold", help="gold annotations JSONL file")
    p_ingest.add_argument("--config", help="config file (for data_dir)")
    p_ingest.add_argument("--data-dir", help="store directory (overrides config)")
    p_ingest.set_defaults(func=cmd_ingest)

    p_query = sub.add_parser("query", help="run one claim through the pipeline")
    p_query.add_argument("--claim", required=True)
    p_query.add_argument("--config", help="config file")
    p_query.add_argument("--eager-evidence", action="store_true",
                         help="resolve evidence inline for every perspective")
    p_query.add_argument("--json", action="store_true", help="print the raw result")
    p_query.set_defaults(func=cmd_query)

    p_serve = sub.add_parser("serve", help="start the HTTP API + UI server")
    p_serve.add_argument("--config", help="config file")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--static", help="directory of built UI assets to serve at /")
    p_serve.set_defaults(func=cmd_serve)

    p_eval = sub.add_parser("eval", help="gating precision/recall over a threshold sweep")
    p_eval.add_argument("--claims", required=True, help="claims JSONL file")
    p_eval.add_argument("--gold", required=True, help="gold annotations JSONL file")
    p_eval.add_argument("--config", help="config file (must name the corpus paths)")
    p_eval.add_argument("--sweep", help="e.g. t1=0.1..0.9:0.2,t2=0.0..0.3:0.1")
    p_eval.add_argument("--json", action="store_true")
    p_eval.set_defaults(func=cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ConfigError, CorpusError, PipelineError, ScorerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
