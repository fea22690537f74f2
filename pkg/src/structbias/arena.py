"""Game loop: runs one game between a Maker and a Breaker strategy.

Win checks run after every half-move: the Maker goal detector after each
Maker move, the blocking detector after each Breaker move.  A strategy
that forfeits (no playbook move) gets a random fallback move so the game
still finishes, and the forfeit is recorded on the outcome; acceptance
runs assert that no forfeits happened.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .board import (
    BiasFamily,
    BiasSpec,
    Edge,
    GameState,
    Player,
    WinCondition,
    apply_breaker_move,
    apply_maker_move,
    new_game,
)
from .graphs import EXACT_CAP_DEFAULT
from .strategy import BreakerStrategy, MakerStrategy, StrategySignal
from .wins import breaker_blocks, maker_wins


@dataclass
class GameOutcome:
    winner: Player
    reason: str
    state: GameState
    maker_moves: int
    breaker_moves: int
    forfeits: list[tuple[int, str, str]] = field(default_factory=list)

    @property
    def flags(self) -> str:
        return ";".join(f"{role}@{idx}:{reason}"
                        for idx, role, reason in self.forfeits)


def fallback_maker_edge(state: GameState, rng: random.Random) -> Edge:
    pool = []
    index = 0
    for u in range(state.n):
        for v in range(u + 1, state.n):
            if state.ownership[index] == 0:
                pool.append((u, v))
            index += 1
    return rng.choice(pool)


def fallback_breaker_move(state: GameState, rng: random.Random) -> list[Edge]:
    pool = []
    index = 0
    for u in range(state.n):
        for v in range(u + 1, state.n):
            if state.ownership[index] == 0:
                pool.append((u, v))
            index += 1
    if not pool:
        return []
    family = state.bias.family
    size = state.bias.size
    if family is BiasFamily.FREE:
        return sorted(rng.sample(pool, min(size, len(pool))))
    if family is BiasFamily.MATCHING:
        rng.shuffle(pool)
        chosen: list[Edge] = []
        used: set[int] = set()
        for a, b in pool:
            if len(chosen) == size:
                break
            if a not in used and b not in used:
                chosen.append((a, b))
                used.update((a, b))
        return sorted(chosen)
    if family is BiasFamily.STAR:
        centres = {}
        for a, b in pool:
            centres.setdefault(a, []).append((a, b))
            centres.setdefault(b, []).append((a, b))
        centre = rng.choice(sorted(centres))
        spokes = centres[centre]
        return sorted(rng.sample(spokes, min(size, len(spokes))))
    seed_edge = rng.choice(pool)
    span = set(seed_edge)
    others = [v for v in range(state.n) if v not in span]
    span.update(rng.sample(others, min(size - 2, len(others))))
    return [e for e in pool if e[0] in span and e[1] in span]


def play_game(n: int, bias: BiasSpec, win: WinCondition,
              maker: MakerStrategy, breaker: BreakerStrategy,
              first: Player = Player.BREAKER, seed: int = 0,
              exact_cap: int = EXACT_CAP_DEFAULT) -> GameOutcome:
    state = new_game(n, bias, win, first=first)
    fallback_rng = random.Random(f"fallback:{seed}")
    forfeits: list[tuple[int, str, str]] = []
    maker_moves = 0
    breaker_moves = 0
    while True:
        if all(o != 0 for o in state.ownership):
            return GameOutcome(Player.BREAKER, "exhausted", state,
                               maker_moves, breaker_moves, forfeits)
        if state.to_move is Player.MAKER:
            try:
                edge = maker.move(state)
            except StrategySignal as signal:
                forfeits.append((len(state.history), "maker", signal.reason))
                edge = fallback_maker_edge(state, fallback_rng)
            state = apply_maker_move(state, edge)
            maker_moves += 1
            if maker_wins(state, exact_cap=exact_cap):
                return GameOutcome(Player.MAKER, "goal", state,
                                   maker_moves, breaker_moves, forfeits)
        else:
            try:
                edges = breaker.move(state)
            except StrategySignal as signal:
                forfeits.append((len(state.history), "breaker", signal.reason))
                edges = fallback_breaker_move(state, fallback_rng)
            state = apply_breaker_move(state, edges)
            breaker_moves += 1
            witness = breaker_blocks(state)
            if witness is not None:
                return GameOutcome(Player.BREAKER, f"blocked:{witness.kind.value}",
                                   state, maker_moves, breaker_moves, forfeits)


def play_from(state: GameState, maker: Optional[MakerStrategy],
              breaker: Optional[BreakerStrategy], half_moves: int,
              seed: int = 0,
              exact_cap: int = EXACT_CAP_DEFAULT) -> GameState:
    """Advance a position by up to half_moves engine half-moves.

    Used by tests that need intermediate positions; missing strategies
    are replaced by random fallbacks.
    """
    rng = random.Random(f"fallback:{seed}")
    for _ in range(half_moves):
        if all(o != 0 for o in state.ownership):
            return state
        if maker_wins(state, exact_cap=exact_cap) or breaker_blocks(state):
            return state
        if state.to_move is Player.MAKER:
            try:
                edge = maker.move(state) if maker else fallback_maker_edge(state, rng)
            except StrategySignal:
                edge = fallback_maker_edge(state, rng)
            state = apply_maker_move(state, edge)
        else:
            try:
                edges = (breaker.move(state) if breaker
                         else fallback_breaker_move(state, rng))
            except StrategySignal:
                edges = fallback_breaker_move(state, rng)
            state = apply_breaker_move(state, edges)
    return state
