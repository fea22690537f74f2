"""Exact game solving for small boards.

Negamax over complete play: Maker wins iff some edge leads to a win,
Breaker wins iff some legal structure move leads to a Maker loss.
Positions are memoized on (ownership, side to move), which is sound
because n, bias, and goal are fixed per solve.  Breaker moves are
enumerated maximally (no legal superset inside the same structure) by
default; a full enumeration of every legal move exists for cross-checks
on tiny boards, and an unmemoized twin guards the memoization itself.

Entry discipline: the recursion assumes the position at hand is not
already decided; solve() checks the root and every recursive call checks
the child it descends into.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from .board import (
    BiasFamily,
    Edge,
    GameState,
    Player,
    apply_breaker_move,
    apply_maker_move,
    structure_violation,
)
from .graphs import EXACT_CAP_DEFAULT
from .wins import breaker_blocks, maker_wins


class SolverBudgetError(RuntimeError):
    pass


@dataclass
class SolveStats:
    nodes: int = 0
    budget: Optional[int] = None
    memo: Optional[dict] = None

    def tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise SolverBudgetError(f"node budget {self.budget} exceeded")


@dataclass
class SolveResult:
    winner: Player
    nodes: int
    pv: list[tuple[str, tuple[Edge, ...]]] = field(default_factory=list)


def _unclaimed(state: GameState) -> list[Edge]:
    out = []
    index = 0
    for u in range(state.n):
        for v in range(u + 1, state.n):
            if state.ownership[index] == 0:
                out.append((u, v))
            index += 1
    return out


def maker_move_candidates(state: GameState) -> list[Edge]:
    """Unclaimed edges, immediate threats first."""
    edges = _unclaimed(state)
    adj = state.maker_adj
    closers = [e for e in edges if adj[e[0]] & adj[e[1]]]
    rest = [e for e in edges if not (adj[e[0]] & adj[e[1]])]
    return closers + rest


def breaker_move_candidates(state: GameState,
                            full: bool = False) -> Iterator[tuple[Edge, ...]]:
    """Legal Breaker moves: maximal ones by default, all when full."""
    edges = _unclaimed(state)
    if not edges:
        yield ()
        return
    if full:
        yield from _all_legal_moves(state, edges)
        return
    family = state.bias.family
    size = state.bias.size
    seen: set[frozenset[Edge]] = set()
    if family is BiasFamily.FREE:
        k = min(size, len(edges))
        for combo in combinations(edges, k):
            yield combo
        return
    if family is BiasFamily.MATCHING:
        yield from _maximal_matchings(edges, size)
        return
    if family is BiasFamily.STAR:
        for centre in range(state.n):
            incident = [e for e in edges if centre in e]
            if not incident:
                continue
            k = min(size, len(incident))
            for combo in combinations(incident, k):
                key = frozenset(combo)
                if key not in seen:
                    seen.add(key)
                    yield combo
        return
    for span in combinations(range(state.n), min(size, state.n)):
        inside = tuple(e for e in edges if e[0] in span and e[1] in span)
        if inside:
            key = frozenset(inside)
            if key not in seen:
                seen.add(key)
                yield inside


def _maximal_matchings(edges: list[Edge], size: int) -> Iterator[tuple[Edge, ...]]:
    def disjoint(e: Edge, chosen: list[Edge]) -> bool:
        return all(e[0] not in c and e[1] not in c for c in chosen)

    def rec(chosen: list[Edge], start: int) -> Iterator[tuple[Edge, ...]]:
        if len(chosen) == size:
            yield tuple(chosen)
            return
        extendable = [i for i, e in enumerate(edges) if disjoint(e, chosen)]
        if not extendable:
            yield tuple(chosen)
            return
        for i in extendable:
            if i >= start:
                yield from rec(chosen + [edges[i]], i + 1)

    yield from rec([], 0)


def _all_legal_moves(state: GameState,
                     edges: list[Edge]) -> Iterator[tuple[Edge, ...]]:
    family = state.bias.family
    size = state.bias.size
    max_edges = size if family is not BiasFamily.CLIQUE else size * (size - 1) // 2
    max_edges = min(max_edges, len(edges))
    for k in range(1, max_edges + 1):
        for combo in combinations(edges, k):
            if structure_violation(state.bias, list(combo)) is None:
                yield combo


def _value(state: GameState, stats: SolveStats, full: bool,
           exact_cap: int) -> bool:
    """True iff Maker wins from this undecided position."""
    if all(o != 0 for o in state.ownership):
        return False
    stats.tick()
    key = None
    if stats.memo is not None:
        key = (state.ownership, state.to_move.value)
        cached = stats.memo.get(key)
        if cached is not None:
            return cached
    if state.to_move is Player.MAKER:
        result = False
        for edge in maker_move_candidates(state):
            child = apply_maker_move(state, edge)
            if maker_wins(child, exact_cap=exact_cap):
                result = True
                break
            if _value(child, stats, full, exact_cap):
                result = True
                break
    else:
        result = True
        closers = set(e for e in _unclaimed(state)
                      if state.maker_adj[e[0]] & state.maker_adj[e[1]])
        moves = list(breaker_move_candidates(state, full=full))
        moves.sort(key=lambda m: -len(closers & set(m)))
        for move in moves:
            child = apply_breaker_move(state, list(move))
            if breaker_blocks(child) is not None:
                result = False
                break
            if not _value(child, stats, full, exact_cap):
                result = False
                break
    if key is not None:
        stats.memo[key] = result
    return result


def solve(state: GameState, memoized: bool = True, full: bool = False,
          node_budget: Optional[int] = None,
          exact_cap: int = EXACT_CAP_DEFAULT,
          with_pv: bool = True) -> SolveResult:
    """Winner of the position under optimal play by both sides."""
    if maker_wins(state, exact_cap=exact_cap):
        return SolveResult(Player.MAKER, 0, [])
    if breaker_blocks(state) is not None:
        return SolveResult(Player.BREAKER, 0, [])
    stats = SolveStats(budget=node_budget, memo={} if memoized else None)
    value = _value(state, stats, full, exact_cap)
    winner = Player.MAKER if value else Player.BREAKER
    pv = []
    if memoized and with_pv:
        pv = _principal_variation(state, stats, full, exact_cap)
    return SolveResult(winner, stats.nodes, pv)


def _principal_variation(state: GameState, stats: SolveStats, full: bool,
                         exact_cap: int) -> list[tuple[str, tuple[Edge, ...]]]:
    pv: list[tuple[str, tuple[Edge, ...]]] = []
    current = state
    for _ in range(4 * current.num_edges + 4):
        if maker_wins(current, exact_cap=exact_cap):
            break
        if breaker_blocks(current) is not None:
            break
        if all(o != 0 for o in current.ownership):
            break
        if current.to_move is Player.MAKER:
            chosen = None
            fallback = None
            for edge in maker_move_candidates(current):
                child = apply_maker_move(current, edge)
                if fallback is None:
                    fallback = (edge, child)
                if maker_wins(child, exact_cap=exact_cap) or _value(
                        child, stats, full, exact_cap):
                    chosen = (edge, child)
                    break
            if chosen is None:
                chosen = fallback
            pv.append(("M", (chosen[0],)))
            current = chosen[1]
        else:
            chosen = None
            fallback = None
            for move in breaker_move_candidates(current, full=full):
                child = apply_breaker_move(current, list(move))
                if fallback is None:
                    fallback = (move, child)
                if breaker_blocks(child) is not None or not _value(
                        child, stats, full, exact_cap):
                    chosen = (move, child)
                    break
            if chosen is None:
                chosen = fallback
            pv.append(("B", tuple(chosen[0])))
            current = chosen[1]
    return pv
