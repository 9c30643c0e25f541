"""JSON service exposing datasets and interactive elicitation sessions.

In-memory only: datasets are immutable after upload, sessions accumulate
superior/inferior feedback and re-elicit on demand.  Mutations to one
session are serialized with a per-session lock; datasets are shared
read-only.  Run with `python -m pskyline.service` (honors the PORT
environment variable) or point uvicorn at `pskyline.service:app`.
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .constraints import ExistenceError, NegSystem, reduce_via_skyline, remove_redundant, system_to_json
from .dominance import PSkylineRelation, bet_in, find_dominator, skyline, sky_relation, winnow
from .elicitation import brute_force_opt_fdf, elicit
from .model import Dataset, ModelError, load_dataset_csv, load_schema
from .pgraph import graph_to_json

MAX_INFERIOR_WIDTH = 5


class FeedbackBody(BaseModel):
    add_superior: list[str] = []
    add_inferior: list[str] = []


class SessionBody(BaseModel):
    dataset: str


@dataclass
class _Session:
    id: str
    dataset_id: str
    data: Dataset
    superior: list[str] = field(default_factory=list)
    inferior: list[str] = field(default_factory=list)
    relation: PSkylineRelation | None = None
    winnow_ids: list[str] = field(default_factory=list)
    system: NegSystem | None = None
    pending: dict[str, list[str]] = field(
        default_factory=lambda: {"add_superior": [], "add_inferior": []}
    )
    history: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class _Store:
    def __init__(self) -> None:
        self.lock = threading.Lock()
        self.datasets: dict[str, Dataset] = {}
        self.skylines: dict[str, list[str]] = {}
        self.sessions: dict[str, _Session] = {}
        self._counters: dict[str, itertools.count] = {}

    def next_id(self, prefix: str) -> str:
        counter = self._counters.setdefault(prefix, itertools.count(1))
        return f"{prefix}{next(counter)}"


def _error(status: int, payload: dict) -> JSONResponse:
    return JSONResponse(status_code=status, content=payload)


def _snapshot(session: _Session) -> dict:
    rel = session.relation
    return {
        "id": session.id,
        "dataset": session.dataset_id,
        "superior": list(session.superior),
        "inferior": list(session.inferior),
        "expression": rel.expression() if rel else None,
        "pgraph": graph_to_json(rel.graph) if rel else None,
        "winnow": list(session.winnow_ids),
        "history": list(session.history),
        "constraints": (
            system_to_json(session.data.schema, session.system)
            if session.system is not None
            else []
        ),
    }


def _explanation(session: _Session) -> list[dict]:
    """Why each non-surviving tuple is out: its first dominator and the
    attributes each side wins."""
    rel = session.relation
    data = session.data
    assert rel is not None
    kept = set(session.winnow_ids)
    out = []
    for t in data.tuples:
        if t.id in kept:
            continue
        dom_id = find_dominator(data, t.id, rel)
        if dom_id is None:
            continue
        dom = data.by_id(dom_id)
        out.append(
            {
                "id": t.id,
                "dominated_by": dom_id,
                "better_in": sorted(bet_in(data.schema, dom, t).names(data.schema)),
                "worse_in": sorted(bet_in(data.schema, t, dom).names(data.schema)),
            }
        )
    return out


def create_app() -> FastAPI:
    app = FastAPI(title="p-skyline service", openapi_url="/spec")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = _Store()

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return _error(400, {"error": "bad_request", "detail": str(exc.errors())})

    @app.post("/datasets", status_code=201)
    def create_dataset(payload: dict[str, Any]) -> Any:
        if not isinstance(payload.get("schema"), dict) or not isinstance(
            payload.get("csv"), str
        ):
            return _error(400, {
                "error": "bad_request",
                "detail": "body must carry a 'schema' object and a 'csv' string",
            })
        try:
            schema = load_schema(json.dumps(payload["schema"]))
            data = load_dataset_csv(schema, payload["csv"])
        except ModelError as exc:
            return _error(400, {"error": "bad_dataset", "detail": str(exc)})
        with store.lock:
            dataset_id = store.next_id("d")
            store.datasets[dataset_id] = data
            store.skylines[dataset_id] = [t.id for t in skyline(data).tuples]
        return {
            "id": dataset_id,
            "rows": len(data),
            "attributes": list(data.schema.names()),
        }

    def _dataset_or_none(dataset_id: str) -> Dataset | None:
        with store.lock:
            return store.datasets.get(dataset_id)

    @app.get("/datasets/{dataset_id}/skyline")
    def dataset_skyline(dataset_id: str) -> Any:
        with store.lock:
            ids = store.skylines.get(dataset_id)
        if ids is None:
            return _error(404, {"error": "unknown_dataset", "id": dataset_id})
        return {"ids": ids}

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionBody) -> Any:
        data = _dataset_or_none(body.dataset)
        if data is None:
            return _error(404, {"error": "unknown_dataset", "id": body.dataset})
        with store.lock:
            session = _Session(store.next_id("s"), body.dataset, data)
            rel = sky_relation(data.schema)
            session.relation = rel
            session.winnow_ids = list(store.skylines[body.dataset])
            store.sessions[session.id] = session
        return _snapshot(session)

    def _session_or_none(session_id: str) -> _Session | None:
        with store.lock:
            return store.sessions.get(session_id)

    @app.post("/sessions/{session_id}/feedback")
    def add_feedback(session_id: str, body: FeedbackBody) -> Any:
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, {"error": "unknown_session", "id": session_id})
        with session.lock:
            data = session.data
            for t_id in body.add_superior + body.add_inferior:
                if t_id not in data:
                    return _error(400, {"error": "unknown_tuple", "id": t_id})
            new_sup = set(session.superior) | set(body.add_superior)
            new_inf = set(session.inferior) | set(body.add_inferior)
            clash = sorted(new_sup & new_inf)
            if clash:
                return _error(400, {
                    "error": "conflicting_feedback",
                    "detail": f"marked both superior and inferior: {clash}",
                    "ids": clash,
                })
            if new_inf and len(data.schema) > MAX_INFERIOR_WIDTH:
                return _error(422, {
                    "error": "inferior_unsupported",
                    "detail": (
                        "inferior examples need the exhaustive solver, which is "
                        f"capped at {MAX_INFERIOR_WIDTH} attributes; this dataset "
                        f"has {len(data.schema)}"
                    ),
                    "width": len(data.schema),
                    "max_width": MAX_INFERIOR_WIDTH,
                })
            for g in body.add_superior:
                dom = find_dominator(data, g)
                if dom is not None:
                    return _error(409, {
                        "error": "not_in_skyline",
                        "id": g,
                        "dominated_by": dom,
                        "detail": (
                            f"{g} cannot be kept: {dom} dominates it in every relation"
                        ),
                    })
            for g in body.add_superior:
                if g not in session.superior:
                    session.superior.append(g)
                    session.pending["add_superior"].append(g)
            for w in body.add_inferior:
                if w not in session.inferior:
                    session.inferior.append(w)
                    session.pending["add_inferior"].append(w)
            return _snapshot(session)

    @app.post("/sessions/{session_id}/elicit")
    def run_elicit(session_id: str) -> Any:
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, {"error": "unknown_session", "id": session_id})
        with session.lock:
            data = session.data
            schema = data.schema
            try:
                if session.inferior:
                    maximal = brute_force_opt_fdf(
                        data, session.superior, session.inferior,
                        limit=MAX_INFERIOR_WIDTH,
                    )
                    if not maximal:
                        return _error(409, {
                            "error": "no_relation",
                            "detail": (
                                "no relation favors all superior examples while "
                                "disfavoring all inferior ones"
                            ),
                        })
                    rel = maximal[0]
                    session.system = None
                elif session.superior:
                    rel = elicit(data, session.superior)
                    session.system = remove_redundant(
                        reduce_via_skyline(schema, data, session.superior)
                    )
                else:
                    rel = sky_relation(schema)
                    session.system = None
            except ExistenceError as exc:
                return _error(409, {
                    "error": "not_in_skyline",
                    "id": exc.superior_id,
                    "dominated_by": exc.dominated_by,
                    "detail": str(exc),
                })
            session.relation = rel
            session.winnow_ids = [t.id for t in winnow(rel, data).tuples]
            delta = {k: list(v) for k, v in session.pending.items()}
            session.pending = {"add_superior": [], "add_inferior": []}
            round_entry = {
                "feedback": delta,
                "expression": rel.expression(),
                "pgraph": graph_to_json(rel.graph),
                "winnow": list(session.winnow_ids),
            }
            session.history.append(round_entry)
            return {
                "expression": rel.expression(),
                "pgraph": graph_to_json(rel.graph),
                "winnow": list(session.winnow_ids),
                "explanation": _explanation(session),
            }

    @app.get("/sessions/{session_id}/state")
    def session_state(session_id: str) -> Any:
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, {"error": "unknown_session", "id": session_id})
        with session.lock:
            return _snapshot(session)

    return app


app = create_app()


if __name__ == "__main__":
    import os

    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=int(os.environ.get("PORT", "8000")))
