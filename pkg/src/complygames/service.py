"""JSON-over-HTTP service exposing the game engines to browser clients."""

from __future__ import annotations

import os
import threading
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .conditions import parse_mode
from .dsl import parse_condition
from .sessions import GAME_KINDS, GameSession, SessionError, make_engine


class CreateSession(BaseModel):
    kind: str
    bounds: Optional[list[int]] = None
    start: Optional[object] = None
    cond: Optional[str] = None
    mode: str = "max"
    human_role: str = "proposer"


class ProposeBody(BaseModel):
    proposal: list


class ChooseBody(BaseModel):
    index: int


class SaveBody(BaseModel):
    path: Optional[str] = None


def create_app(
    ui_dir: Optional[str] = None,
    save_dir: str = "sessions",
    preload: tuple[str, ...] = (),
) -> FastAPI:
    app = FastAPI(title="comply games")
    sessions: dict[str, GameSession] = {}
    locks: dict[str, threading.Lock] = {}
    store_lock = threading.Lock()
    eval_engines: dict[tuple, object] = {}

    for path in preload:
        with open(path) as fh:
            sess = GameSession.load_json(fh.read())
        sessions[sess.id] = sess
        locks[sess.id] = threading.Lock()

    def get_session(sid: str) -> tuple[GameSession, threading.Lock]:
        with store_lock:
            sess = sessions.get(sid)
            if sess is None:
                raise HTTPException(404, "unknown session")
            return sess, locks[sid]

    @app.get("/api/games")
    def games():
        return [
            {"kind": kind, **info} for kind, info in GAME_KINDS.items()
        ]

    @app.post("/api/session")
    def create(body: CreateSession):
        try:
            sess = GameSession.create(
                body.kind,
                bounds=body.bounds,
                start=body.start,
                cond_text=body.cond,
                mode=body.mode,
                human_role=body.human_role,
            )
        except SessionError as exc:
            raise HTTPException(exc.status, str(exc))
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        with store_lock:
            sessions[sess.id] = sess
            locks[sess.id] = threading.Lock()
        return {"id": sess.id, "state": sess.state()}

    @app.get("/api/session/{sid}")
    def state(sid: str):
        sess, lock = get_session(sid)
        with lock:
            return sess.state()

    @app.post("/api/session/{sid}/propose")
    def propose(sid: str, body: ProposeBody):
        sess, lock = get_session(sid)
        with lock:
            try:
                sess.propose(body.proposal)
            except SessionError as exc:
                raise HTTPException(exc.status, str(exc))
            return sess.state()

    @app.post("/api/session/{sid}/choose")
    def choose(sid: str, body: ChooseBody):
        sess, lock = get_session(sid)
        with lock:
            try:
                sess.choose(body.index)
            except SessionError as exc:
                raise HTTPException(exc.status, str(exc))
            return sess.state()

    @app.post("/api/session/{sid}/save")
    def save(sid: str, body: SaveBody):
        sess, lock = get_session(sid)
        with lock:
            os.makedirs(save_dir, exist_ok=True)
            path = body.path or os.path.join(save_dir, f"{sid}.json")
            with open(path, "w") as fh:
                fh.write(sess.save_json())
            return {"saved": path}

    @app.get("/api/eval")
    def eval_position(kind: str, x: int, y: Optional[int] = None,
                      cond: Optional[str] = None, mode: str = "max"):
        key = (kind, cond, mode)
        engine = eval_engines.get(key)
        try:
            if engine is None:
                info = GAME_KINDS.get(kind)
                if info is None:
                    raise SessionError(f"unknown game kind: {kind}")
                bounds = info["default_bounds"]
                if info["dims"] == 1:
                    bounds = [max(bounds[0], x)]
                else:
                    bounds = [max(bounds[0], x), max(bounds[1], y or 0)]
                engine = make_engine(kind, bounds, cond, mode)
                eval_engines[key] = engine
            if engine.dims == 1:
                if x > engine.bound:
                    engine = make_engine(kind, [x], cond, mode)
                    eval_engines[key] = engine
                return {"outcome": engine.outcome(x)}
            if y is None:
                raise SessionError("two-heap games need both x and y")
            if x > engine.X or y > engine.Y:
                engine = make_engine(kind, [max(x, engine.X), max(y, engine.Y)], cond, mode)
                eval_engines[key] = engine
            return {"outcome": engine.outcome((x, y))}
        except SessionError as exc:
            raise HTTPException(exc.status, str(exc))

    @app.post("/api/session/load")
    def load(body: SaveBody):
        if not body.path:
            raise HTTPException(400, "need a path")
        try:
            with open(body.path) as fh:
                sess = GameSession.load_json(fh.read())
        except FileNotFoundError:
            raise HTTPException(404, "no such saved session")
        with store_lock:
            sessions[sess.id] = sess
            locks[sess.id] = threading.Lock()
        return {"id": sess.id, "state": sess.state()}

    if ui_dir and os.path.isdir(ui_dir):
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
