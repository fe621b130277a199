"""Stateful session service: create a game session, fetch the state view
and legal moves, submit moves by index, request AI replies.

Moves are always submitted as an index into the server's legal-move
list, so clients never need rules knowledge and cannot submit anything
the engine did not offer. Board geometry travels once, in the create
response; every later response is a full state view. Field names are
fixed in docs/api.md; error bodies carry machine-readable codes
(unknown-game, unknown-session, illegal-move, wrong-turn).

Sessions live in memory, one lock per session (mutations are serialized),
and are evicted after an idle timeout.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import corpus
from .engine import flat_mc_choose
from .errors import LudicError
from .game import Game
from .rng import split
from .rules import Move, apply_start, describe_move, legal_moves, successor
from .state import GameState

DEFAULT_AI_BUDGET = 1000
SESSION_TIMEOUT = 3600.0


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _unknown_game(name: str) -> ServiceError:
    return ServiceError(404, "unknown-game", f"no game named {name!r}")


def _unknown_session(sid: str) -> ServiceError:
    return ServiceError(404, "unknown-session", f"no session {sid!r}")


@dataclass
class Controller:
    kind: str  # 'human' | 'flat-mc'
    budget: int = DEFAULT_AI_BUDGET


@dataclass
class Session:
    id: str
    game_name: str
    game: Game
    state: GameState
    controllers: dict[int, Controller]
    seed: int
    moves: list[Move] = field(default_factory=list)
    hashes: list[int] = field(default_factory=list)
    initial: GameState | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)


class SessionStore:
    def __init__(self, timeout: float = SESSION_TIMEOUT):
        self.timeout = timeout
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def add(self, session: Session) -> None:
        with self._lock:
            self._evict_locked()
            self._sessions[session.id] = session

    def get(self, sid: str) -> Session:
        with self._lock:
            self._evict_locked()
            session = self._sessions.get(sid)
            if session is None:
                raise _unknown_session(sid)
            session.last_access = time.monotonic()
            return session

    def _evict_locked(self) -> None:
        now = time.monotonic()
        stale = [sid for sid, s in self._sessions.items()
                 if now - s.last_access > self.timeout]
        for sid in stale:
            del self._sessions[sid]

    def __len__(self) -> int:
        return len(self._sessions)


def _parse_controllers(game: Game, raw: dict[str, Any] | None) -> dict[int, Controller]:
    controllers = {p: Controller("human") for p in range(1, game.players.count + 1)}
    for key, value in (raw or {}).items():
        try:
            p = int(key)
        except ValueError:
            raise ServiceError(400, "illegal-move", f"bad player key {key!r}")
        if p not in controllers:
            raise ServiceError(400, "illegal-move", f"no player {p} in this game")
        if value == "human":
            continue
        if isinstance(value, dict) and value.get("type") == "flat-mc":
            budget = int(value.get("budget", DEFAULT_AI_BUDGET))
            if budget < 1:
                raise ServiceError(400, "illegal-move", "budget must be >= 1")
            controllers[p] = Controller("flat-mc", budget)
        else:
            raise ServiceError(400, "illegal-move", f"bad controller spec {value!r}")
    return controllers


def geometry_view(game: Game) -> dict:
    c = game.container
    return {
        "tiling": c.tiling,
        "sites": [
            {"id": v,
             "centroid": [round(x, 4) for x in c.centroids[v]],
             "polygon": [[round(x, 4), round(y, 4)] for x, y in c.polygons[v]]}
            for v in range(c.num_vertices)
        ],
        "edges": sorted([a, b] for a, b in c.edges),
    }


def state_view(session: Session) -> dict:
    game, state = session.game, session.state
    moves: list[dict] = []
    if not state.terminal:
        for i, m in enumerate(legal_moves(game, state)):
            moves.append({
                "index": i,
                "description": describe_move(game, m),
                "from": m.from_site,
                "to": m.to_site,
                "isPass": m.is_pass,
            })
    return {
        "session": session.id,
        "game": session.game_name,
        "players": game.players.count,
        "mover": state.mover,
        "moverController": session.controllers[state.mover].kind
        if not state.terminal else None,
        "moveNumber": state.move_number,
        "consecutivePasses": state.consecutive_passes,
        "terminal": state.terminal,
        "scores": list(state.scores) if state.scores is not None else None,
        "what": [state.what(v) for v in range(game.num_sites)],
        "who": [state.who(v) for v in range(game.num_sites)],
        "legalMoves": moves,
        "history": [describe_move(game, m) for m in session.moves],
        "stateHash": format(state.state_hash(), "016x"),
    }


class CreateSessionRequest(BaseModel):
    game: str
    options: list[str] = []
    controllers: dict[str, Any] = {}
    seed: int = 1


class SubmitMoveRequest(BaseModel):
    index: int


def _default_static_dir() -> str | None:
    # source checkouts carry the built web client at <repo>/frontend/dist
    import os
    here = os.path.dirname(os.path.abspath(__file__))
    candidate = os.path.normpath(os.path.join(here, "..", "..", "frontend", "dist"))
    if os.path.exists(os.path.join(candidate, "index.html")):
        return candidate
    return None


def create_app(session_timeout: float = SESSION_TIMEOUT,
               static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="ludic play service", docs_url=None, redoc_url=None)
    store = SessionStore(session_timeout)
    app.state.store = store

    # the web client may be served from a dev server on another port
    from fastapi.middleware.cors import CORSMiddleware
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(ServiceError)
    async def service_error(_request: Request, exc: ServiceError):
        return JSONResponse(status_code=exc.status,
                            content={"error": {"code": exc.code,
                                               "message": exc.message}})

    @app.get("/health")
    def health():
        return {"status": "ok", "sessions": len(store)}

    @app.get("/games")
    def games():
        out = []
        for name in corpus.bundled_names():
            from .grammar import option_names, parse_game
            tree = parse_game(corpus.load_text(name))
            out.append({"name": name, "options": option_names(tree)})
        return {"games": out}

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        try:
            game = corpus.load_game(req.game, req.options)
        except KeyError:
            raise _unknown_game(req.game)
        except LudicError as exc:
            raise ServiceError(400, "unknown-game", str(exc))
        controllers = _parse_controllers(game, req.controllers)
        state = apply_start(game)
        session = Session(
            id=uuid.uuid4().hex[:12],
            game_name=req.game,
            game=game,
            state=state,
            controllers=controllers,
            seed=req.seed,
            initial=state.copy(),
        )
        store.add(session)
        view = state_view(session)
        view["geometry"] = geometry_view(game)
        view["controllers"] = {
            str(p): ({"type": "flat-mc", "budget": c.budget}
                     if c.kind == "flat-mc" else "human")
            for p, c in controllers.items()}
        return view

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        session = store.get(sid)
        with session.lock:
            return state_view(session)

    def _apply(session: Session, move: Move) -> None:
        session.state = successor(session.game, session.state, move)
        session.moves.append(move)
        session.hashes.append(session.state.state_hash())

    @app.post("/sessions/{sid}/moves")
    def submit_move(sid: str, req: SubmitMoveRequest):
        session = store.get(sid)
        with session.lock:
            state = session.state
            if state.terminal:
                raise ServiceError(400, "illegal-move", "the game is over")
            controller = session.controllers[state.mover]
            if controller.kind != "human":
                raise ServiceError(409, "wrong-turn",
                                   f"P{state.mover} is controlled by the AI")
            moves = legal_moves(session.game, state)
            if not 0 <= req.index < len(moves):
                raise ServiceError(400, "illegal-move",
                                   f"move index {req.index} out of range "
                                   f"(0..{len(moves) - 1})")
            _apply(session, moves[req.index])
            return state_view(session)

    @app.post("/sessions/{sid}/ai-move")
    def ai_move(sid: str):
        session = store.get(sid)
        with session.lock:
            state = session.state
            if state.terminal:
                raise ServiceError(400, "illegal-move", "the game is over")
            controller = session.controllers[state.mover]
            if controller.kind != "flat-mc":
                raise ServiceError(409, "wrong-turn",
                                   f"P{state.mover} is a human player")
            # per-move stream split from the session seed: deterministic
            # replay from an identical session state gives the same move
            move_seed = split(session.seed, state.move_number)
            move = flat_mc_choose(session.game, state, controller.budget,
                                  seed=move_seed)
            _apply(session, move)
            return state_view(session)

    static = static_dir or _default_static_dir()
    if static:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=static, html=True), name="client")

    return app
