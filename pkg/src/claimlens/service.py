"""HTTP JSON API over the engine: query, lazy evidence, feedback, health.

Query results are retained in an LRU (default 1024 entries) so follow-up
evidence and feedback calls can reference perspectives by ref; once evicted,
evidence lookups answer 404 with code ``query_expired``. Corpora and indexes
are immutable after startup; the feedback log is the only serialized writer.
"""

from __future__ import annotations

import logging
import threading
import uuid
from collections import OrderedDict
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .feedback import POLARITIES, FeedbackLog
from .pipeline import (PerspectiveEngine, PipelineError, QueryState,
                       query_result_to_dict, scored_evidence_to_dict)
from .scorers import RemoteScorer

logger = logging.getLogger(__name__)


class ApiError(Exception):
    """Error contract: every non-2xx response body is {code, message}."""

    def __init__(self, status_code: int, code: str, message: str):
        super().__init__(message)
        self.status_code = status_code
        self.code = code
        self.message = message


class QueryLRU:
    def __init__(self, capacity: int = 1024):
        self.capacity = capacity
        self._lock = threading.Lock()
        self._entries: OrderedDict[str, QueryState] = OrderedDict()

    def put(self, key: str, state: QueryState):
        with self._lock:
            self._entries[key] = state
            self._entries.move_to_end(key)
            while len(self._entries) > self.capacity:
                self._entries.popitem(last=False)

    def get(self, key: str) -> QueryState | None:
        with self._lock:
            state = self._entries.get(key)
            if state is not None:
                self._entries.move_to_end(key)
            return state


class QueryBody(BaseModel):
    claim: str
    overrides: dict[str, Any] | None = None


class FeedbackBody(BaseModel):
    query_id: str
    perspective_ref: str
    polarity: str


def create_app(engine: PerspectiveEngine | None = None,
               feedback: FeedbackLog | None = None,
               static_dir: str | None = None,
               lru_capacity: int = 1024) -> FastAPI:
    """Assemble the application. With ``engine=None`` the API answers 503
    until ``app.state.engine`` is set (index build still pending)."""
    app = FastAPI(title="claimlens", docs_url=None, redoc_url=None)
    app.state.engine = engine
    app.state.feedback = feedback
    app.state.queries = QueryLRU(lru_capacity)

    def ready() -> PerspectiveEngine:
        if app.state.engine is None or app.state.feedback is None:
            raise ApiError(503, "not_ready", "index build has not completed")
        return app.state.engine

    @app.exception_handler(ApiError)
    async def api_error_handler(_request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status_code,
                            content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def validation_handler(_request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"code": "bad_request", "message": str(exc.errors())})

    @app.exception_handler(Exception)
    async def internal_handler(_request: Request, exc: Exception):
        return JSONResponse(status_code=500,
                            content={"code": "internal", "message": str(exc)})

    @app.post("/api/query")
    def query(body: QueryBody) -> JSONResponse:
        engine = ready()
        if not body.claim.strip():
            raise ApiError(400, "empty_claim", "claim must be non-empty")
        try:
            cfg = engine.config.replace(**(body.overrides or {}))
        except (ValueError, TypeError) as exc:
            raise ApiError(422, "invalid_override", str(exc)) from exc
        cfg = cfg.replace(evidence_mode="lazy")  # evidence is on-demand over HTTP
        try:
            query_id = app.state.feedback.log_query(body.claim, cfg.to_dict())
        except OSError as exc:
            # degraded: the query is still served, only the log write is lost
            logger.warning("query log write failed (%s); serving degraded", exc)
            query_id = uuid.uuid4().hex
        try:
            state = engine.discover(body.claim, cfg, query_id=query_id)
        except PipelineError as exc:
            raise ApiError(400, "bad_claim", str(exc)) from exc
        app.state.queries.put(query_id, state)
        return JSONResponse(query_result_to_dict(state.result))

    @app.get("/api/evidence")
    def evidence(query_id: str, perspective_ref: str) -> JSONResponse:
        engine = ready()
        state = app.state.queries.get(query_id)
        if state is None:
            if app.state.feedback.has_query(query_id):
                raise ApiError(404, "query_expired",
                               "query result evicted; re-run the claim")
            raise ApiError(404, "unknown_query", f"unknown query_id {query_id!r}")
        scored = state.perspectives_by_ref.get(perspective_ref)
        if scored is None:
            raise ApiError(404, "unknown_perspective",
                           f"perspective_ref {perspective_ref!r} not in this result")
        if scored.evidence is None:
            scored.evidence = engine.resolve_evidence(
                state.claim_text, scored.perspective, state.config,
                adhoc=state.adhoc_evidence)
        return JSONResponse([scored_evidence_to_dict(se) for se in scored.evidence])

    @app.post("/api/feedback", status_code=204)
    def record_feedback(body: FeedbackBody) -> Response:
        engine = ready()
        if body.polarity not in POLARITIES:
            raise ApiError(400, "bad_polarity",
                           f"polarity must be one of {list(POLARITIES)}")
        if not app.state.feedback.has_query(body.query_id):
            raise ApiError(404, "unknown_query", f"unknown query_id {body.query_id!r}")
        text = body.perspective_ref
        state = app.state.queries.get(body.query_id)
        if state is not None:
            scored = state.perspectives_by_ref.get(body.perspective_ref)
            if scored is not None:
                text = scored.perspective.text
        elif body.perspective_ref in engine.store.perspectives:
            text = engine.store.perspectives[body.perspective_ref].text
        app.state.feedback.record_feedback(body.query_id, body.perspective_ref,
                                           text, body.polarity)
        return Response(status_code=204)

    @app.get("/api/health")
    def health() -> JSONResponse:
        engine = ready()
        status = "ok"
        if isinstance(engine.scorer, RemoteScorer) and not engine.scorer.probe():
            status = "degraded"
        counts = engine.store.counts()
        return JSONResponse({
            "status": status,
            "corpus_counts": {
                "perspectives": counts["perspectives"],
                "evidence": counts["evidence"],
            },
            "backend": engine.scorer.name,
        })

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
