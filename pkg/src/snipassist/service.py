"""HTTP/JSON surface over the store, index and sessions (/v1)."""

from __future__ import annotations

import threading
import time

from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .completion import CompletionIndex, suggest
from .config import Config
from .corpus import CorpusStore
from .search import retrieve_snippets
from .session import (
    ORIGIN_QUESTION_MARKS,
    ORIGINS,
    AssistSession,
    EditConflictError,
    SessionStateError,
    TelemetryLog,
    apply_edit,
    begin_session,
    find_marker_query,
    next_snippet,
    rate,
    restore,
)


def collect_stats(store: CorpusStore, index: CompletionIndex | None) -> dict[str, int]:
    return {
        "question_count": store.question_count,
        "answer_count": store.answer_count,
        "snippet_count": store.snippet_count,
        "task_count": index.task_count if index is not None else 0,
    }


class RegionBody(BaseModel):
    start: int
    length: int


class SessionBody(BaseModel):
    query: str = ""
    origin: str
    document: str
    region: RegionBody | None = None


class RateBody(BaseModel):
    helpful: bool


class _LiveSession:
    def __init__(self, session: AssistSession, document: str):
        self.session = session
        self.document = document
        self.last_access = time.monotonic()


class SessionRegistry:
    """In-memory sessions with idle expiry; per-session mutation is locked."""

    def __init__(self, ttl_seconds: int):
        self.ttl = ttl_seconds
        self._lock = threading.Lock()
        self._sessions: dict[str, _LiveSession] = {}

    def put(self, live: _LiveSession) -> None:
        with self._lock:
            self._purge()
            self._sessions[live.session.id] = live

    def get(self, session_id: str) -> _LiveSession:
        with self._lock:
            self._purge()
            live = self._sessions.get(session_id)
            if live is None:
                raise KeyError(session_id)
            live.last_access = time.monotonic()
            return live

    def _purge(self) -> None:
        cutoff = time.monotonic() - self.ttl
        for sid in [s for s, l in self._sessions.items() if l.last_access < cutoff]:
            del self._sessions[sid]


def create_app(
    store: CorpusStore,
    index: CompletionIndex,
    config: Config | None = None,
    telemetry: TelemetryLog | None = None,
) -> FastAPI:
    config = config or Config()
    app = FastAPI(title="snipassist", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    registry = SessionRegistry(config.session_ttl_seconds)
    app.state.registry = registry

    def retriever(task: str):
        return retrieve_snippets(
            store, task,
            max_threads=config.max_threads,
            max_snippets_per_thread=config.max_snippets_per_thread,
        )

    @app.get("/v1/suggest")
    def get_suggest(q: str = "", limit: int = Query(default=config.suggest_limit_default, ge=1)):
        return [
            {"text": s.text, "source_count": s.source_count, "match_kind": s.match_kind}
            for s in suggest(index, q, limit)
        ]

    @app.get("/v1/snippets")
    def get_snippets(task: str = ""):
        if not task.strip():
            raise HTTPException(status_code=400, detail="task must be non-empty")
        return [
            {
                "code": r.code,
                "source_url": r.source_url,
                "thread_rank": r.thread_rank,
                "answer_score": r.answer_score,
                "position": r.position,
            }
            for r in retriever(task)
        ]

    @app.post("/v1/sessions")
    def post_session(body: SessionBody):
        if body.origin not in ORIGINS:
            raise HTTPException(status_code=400, detail=f"unknown origin {body.origin!r}")
        query, region = body.query, body.region
        if region is None:
            if body.origin != ORIGIN_QUESTION_MARKS:
                raise HTTPException(status_code=400, detail="region is required")
            found = find_marker_query(body.document)
            if found is None:
                raise HTTPException(status_code=400, detail="no ?query? marker in document")
            marker_query, (start, length) = found
            query = query or marker_query
            region_tuple = (start, length)
        else:
            region_tuple = (region.start, region.length)
        try:
            session, edit = begin_session(
                body.document, query, body.origin, region_tuple,
                retriever=retriever, comment_leader=config.comment_leader,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        document = body.document if edit is None else apply_edit(body.document, edit)
        registry.put(_LiveSession(session, document))
        return {
            "id": session.id,
            "document": document,
            "index": session.index,
            "count": len(session.snippets),
        }

    def _live(session_id: str) -> _LiveSession:
        try:
            return registry.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown or expired session") from None

    @app.post("/v1/sessions/{session_id}/next")
    def post_next(session_id: str):
        live = _live(session_id)
        try:
            edit = next_snippet(live.session, live.document)
        except SessionStateError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except EditConflictError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        live.document = apply_edit(live.document, edit)
        return {
            "document": live.document,
            "index": live.session.index,
            "count": len(live.session.snippets),
        }

    @app.post("/v1/sessions/{session_id}/restore")
    def post_restore(session_id: str):
        live = _live(session_id)
        try:
            edit = restore(live.session, live.document)
        except (SessionStateError, EditConflictError) as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        live.document = apply_edit(live.document, edit)
        return {"document": live.document}

    @app.post("/v1/sessions/{session_id}/rate", status_code=204)
    def post_rate(session_id: str, body: RateBody):
        live = _live(session_id)
        try:
            rate(live.session, body.helpful, telemetry)
        except SessionStateError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return Response(status_code=204)

    @app.get("/v1/stats")
    def get_stats():
        return collect_stats(store, index)

    return app
