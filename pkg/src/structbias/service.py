"""HTTP play service: a human plays either side against an engine strategy.

Sessions live in memory; per-session writes are serialized with a lock.
The engine replies synchronously inside the submit call.  Errors are
returned as {code, message, detail}.  Finished games can be appended as
single-line records to the file named by STRUCTBIAS_RECORDS.
"""

from __future__ import annotations

import os
import random
import threading
import uuid
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .arena import fallback_breaker_move, fallback_maker_edge
from .board import (
    BiasFamily,
    BiasSpec,
    EdgeClaimedError,
    GameState,
    IllegalMoveError,
    IllegalStructureError,
    Player,
    WinCondition,
    WrongTurnError,
    apply_breaker_move,
    apply_maker_move,
    encode_record,
    new_game,
)
from .graphs import EXACT_CAP_DEFAULT
from .registry import STRATEGIES, UnknownStrategyError, get_info, make_strategy
from .strategy import StrategySignal
from .wins import breaker_blocks, maker_wins, winning_structure

DEFAULT_PORT = 8642


@dataclass
class Session:
    id: str
    state: GameState
    human: Player
    engine: Player
    strategy_id: str
    strategy: object
    seed: int
    winner: Optional[Player] = None
    reason: Optional[str] = None
    fallback_rng: random.Random = field(default_factory=random.Random)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def finished(self) -> bool:
        return self.winner is not None

    @property
    def status(self) -> str:
        if self.finished:
            return "finished"
        if self.state.to_move is self.human:
            return "awaiting-human"
        return "awaiting-engine"


SESSIONS: dict[str, Session] = {}
_SESSIONS_LOCK = threading.Lock()

app = FastAPI(title="structbias play service")
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


def _error(status: int, code: str, message: str,
           detail: Optional[dict] = None) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"code": code, "message": message,
                                 "detail": detail or {}})


def _structure_hints(state: GameState) -> dict:
    bias = state.bias
    unclaimed = sum(1 for o in state.ownership if o == 0)
    hints = {
        "family": bias.family.value,
        "size": bias.size,
        "unclaimed": unclaimed,
        "empty_move_allowed": unclaimed == 0,
    }
    if bias.family is BiasFamily.CLIQUE:
        hints["max_edges"] = bias.size * (bias.size - 1) // 2
        hints["constraint"] = "edges span at most size vertices"
        hints["span_limit"] = bias.size
    elif bias.family is BiasFamily.MATCHING:
        hints["max_edges"] = bias.size
        hints["constraint"] = "edges pairwise vertex-disjoint"
    elif bias.family is BiasFamily.STAR:
        hints["max_edges"] = bias.size
        hints["constraint"] = "edges share one common endpoint"
    else:
        hints["max_edges"] = bias.size
        hints["constraint"] = "any set of at most size edges"
    return hints


def _session_view(session: Session) -> dict:
    state = session.state
    structure = None
    if session.finished and session.winner is Player.MAKER:
        edges = winning_structure(state)
        if edges:
            structure = [list(e) for e in edges]
    return {
        "id": session.id,
        "n": state.n,
        "bias": {"family": state.bias.family.value, "size": state.bias.size},
        "win": state.win.to_string(),
        "first": state.first.value,
        "to_move": state.to_move.value,
        "human_role": session.human.value,
        "engine_role": session.engine.value,
        "strategy": session.strategy_id,
        "seed": session.seed,
        "status": session.status,
        "winner": session.winner.value if session.winner else None,
        "reason": session.reason,
        "moves": [{"p": r.player.value, "e": [list(e) for e in r.edges]}
                  for r in state.history],
        "maker_edges": [list(e) for e in state.maker_edges()],
        "breaker_edges": [list(e) for e in state.breaker_edges()],
        "hints": _structure_hints(state),
        "winning_structure": structure,
        "record": encode_record(state).strip(),
    }


def _check_finished(session: Session) -> None:
    state = session.state
    if maker_wins(state, exact_cap=EXACT_CAP_DEFAULT):
        session.winner, session.reason = Player.MAKER, "goal"
    else:
        witness = breaker_blocks(state)
        if witness is not None:
            session.winner = Player.BREAKER
            session.reason = f"blocked:{witness.kind.value}"
        elif all(o != 0 for o in state.ownership):
            session.winner, session.reason = Player.BREAKER, "exhausted"
    if session.finished:
        _persist_record(session)


def _persist_record(session: Session) -> None:
    path = os.environ.get("STRUCTBIAS_RECORDS")
    if not path:
        return
    with open(path, "a") as handle:
        handle.write(encode_record(session.state))


def _engine_turn(session: Session) -> None:
    while not session.finished and session.state.to_move is session.engine:
        state = session.state
        if session.engine is Player.MAKER:
            try:
                edge = session.strategy.move(state)
            except StrategySignal:
                edge = fallback_maker_edge(state, session.fallback_rng)
            session.state = apply_maker_move(state, edge)
        else:
            try:
                edges = session.strategy.move(state)
            except StrategySignal:
                edges = fallback_breaker_move(state, session.fallback_rng)
            session.state = apply_breaker_move(state, edges)
        _check_finished(session)


@app.get("/strategies")
def list_strategies() -> dict:
    return {"strategies": [
        {
            "id": info.id,
            "role": info.role,
            "families": sorted(f.value for f in info.families),
            "wins": sorted(w.value for w in info.wins),
            "first": info.first.value if info.first else None,
            "summary": info.summary,
        }
        for info in sorted(STRATEGIES.values(), key=lambda i: i.id)
    ]}


@app.post("/sessions")
async def create_session(request: Request):
    try:
        payload = await request.json()
    except Exception:
        return _error(400, "parse-error", "request body is not valid JSON")
    if not isinstance(payload, dict):
        return _error(400, "parse-error", "request body must be an object")
    try:
        n = int(payload["n"])
        bias_raw = payload["bias"]
        bias = BiasSpec(BiasFamily(bias_raw["family"]), int(bias_raw["size"]))
        win = WinCondition.from_string(str(payload["win"]))
        human_role = str(payload["human_role"])
        strategy_id = str(payload["strategy"])
        seed = int(payload.get("seed", 0))
    except (KeyError, TypeError) as missing:
        return _error(400, "parse-error", f"missing or malformed field: {missing}")
    except ValueError as bad:
        return _error(400, "invalid-config", str(bad))
    if human_role not in ("M", "B"):
        return _error(400, "invalid-config", "human_role must be 'M' or 'B'")
    human = Player(human_role)
    engine = human.opponent
    try:
        info = get_info(strategy_id)
    except UnknownStrategyError:
        return _error(404, "unknown-strategy", f"no strategy {strategy_id!r}")
    expected_role = "maker" if engine is Player.MAKER else "breaker"
    if info.role != expected_role:
        return _error(409, "incompatible-config",
                      f"{strategy_id} plays {info.role}, session needs "
                      f"{expected_role}", {"engine_role": engine.value})
    if not info.compatible(bias, win):
        return _error(409, "incompatible-config",
                      f"{strategy_id} does not support "
                      f"{bias.family.value} bias with {win.to_string()}",
                      {"families": sorted(f.value for f in info.families),
                       "wins": sorted(w.value for w in info.wins)})
    first = info.first if info.first is not None else engine.opponent
    try:
        state = new_game(n, bias, win, first=first)
    except ValueError as bad:
        return _error(400, "invalid-config", str(bad))
    session = Session(
        id=uuid.uuid4().hex[:12],
        state=state,
        human=human,
        engine=engine,
        strategy_id=strategy_id,
        strategy=make_strategy(strategy_id, seed=seed),
        seed=seed,
        fallback_rng=random.Random(f"service-fallback:{seed}"),
    )
    with session.lock:
        _check_finished(session)
        _engine_turn(session)
    with _SESSIONS_LOCK:
        SESSIONS[session.id] = session
    return _session_view(session)


@app.get("/sessions/{session_id}")
def get_session(session_id: str):
    session = SESSIONS.get(session_id)
    if session is None:
        return _error(404, "unknown-session", f"no session {session_id!r}")
    return _session_view(session)


@app.post("/sessions/{session_id}/moves")
async def submit_move(session_id: str, request: Request):
    session = SESSIONS.get(session_id)
    if session is None:
        return _error(404, "unknown-session", f"no session {session_id!r}")
    try:
        payload = await request.json()
    except Exception:
        return _error(400, "parse-error", "request body is not valid JSON")
    edges_raw = payload.get("edges") if isinstance(payload, dict) else None
    if not isinstance(edges_raw, list):
        return _error(400, "parse-error", "body must contain an edges array")
    try:
        edges = [(int(e[0]), int(e[1])) for e in edges_raw]
    except (TypeError, ValueError, IndexError):
        return _error(400, "parse-error",
                      "edges must be [u, v] integer pairs")
    with session.lock:
        if session.finished:
            return _error(409, "session-finished",
                          "game already finished",
                          {"winner": session.winner.value})
        if session.state.to_move is not session.human:
            return _error(409, "illegal-move", "not the human's turn",
                          {"reason": "wrong-turn"})
        try:
            if session.human is Player.MAKER:
                if len(edges) != 1:
                    return _error(400, "illegal-move",
                                  "Maker claims exactly one edge per turn",
                                  {"reason": "wrong-structure"})
                session.state = apply_maker_move(session.state, edges[0])
            else:
                session.state = apply_breaker_move(session.state, edges)
        except EdgeClaimedError as bad:
            return _error(400, "illegal-move", str(bad),
                          {"reason": "claimed-edge"})
        except IllegalStructureError as bad:
            return _error(400, "illegal-move", str(bad),
                          {"reason": "wrong-structure"})
        except WrongTurnError as bad:
            return _error(409, "illegal-move", str(bad),
                          {"reason": "wrong-turn"})
        except IllegalMoveError as bad:
            return _error(400, "illegal-move", str(bad),
                          {"reason": "wrong-structure"})
        except ValueError as bad:
            return _error(400, "illegal-move", str(bad),
                          {"reason": "wrong-structure"})
        _check_finished(session)
        if not session.finished:
            _engine_turn(session)
        return _session_view(session)


def serve(host: str = "127.0.0.1", port: Optional[int] = None) -> None:
    import uvicorn

    if port is None:
        port = int(os.environ.get("PLAY_PORT", str(DEFAULT_PORT)))
    uvicorn.run(app, host=host, port=port)
