"""Win detectors: has Maker reached the goal, has Breaker made it impossible.

Maker's goal is a property of Maker's graph alone.  Breaker has blocked
when the goal fails even in the most generous continuation, i.e. on the
graph of all non-Breaker edges (Maker-owned plus unclaimed).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .board import Edge, GameState, WinCondition, WinKind
from .graphs import (
    EXACT_CAP_DEFAULT,
    Graph,
    _bits,
    _extract_longest_path,
    connected_components,
    has_hamilton_cycle,
    has_hamilton_path,
)


@dataclass(frozen=True)
class BlockWitness:
    """Evidence that Maker's goal is no longer achievable.

    ``cut`` carries the two sides of a Breaker-owned vertex cut for the
    connectivity-flavored goals; ``vertex`` carries a starved vertex for
    degree-based arguments; triangle blocks need no payload.
    """

    kind: WinKind
    cut: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    vertex: Optional[int] = None


def maker_graph(state: GameState) -> Graph:
    return Graph(state.n, state.maker_adj)


def available_graph(state: GameState) -> Graph:
    """Graph of all edges Breaker does not own (Maker-owned plus unclaimed)."""
    n = state.n
    full = (1 << n) - 1
    adj = tuple((full & ~(1 << v)) & ~state.breaker_adj[v] for v in range(n))
    return Graph(n, adj)


def maker_wins(state: GameState, exact_cap: int = EXACT_CAP_DEFAULT) -> bool:
    win = state.win
    if win.kind is WinKind.TRIANGLE:
        return _maker_triangle(state) is not None
    if win.kind is WinKind.CONNECTIVITY:
        first = state.maker_comp[0]
        return all(label == first for label in state.maker_comp)
    if win.kind is WinKind.MIN_DEGREE:
        return all(state.maker_adj[v].bit_count() >= win.degree for v in range(state.n))
    if win.kind is WinKind.HAMILTON_PATH:
        return has_hamilton_path(maker_graph(state), exact_cap)
    return has_hamilton_cycle(maker_graph(state), exact_cap)


def _maker_triangle(state: GameState) -> Optional[tuple[int, int, int]]:
    adj = state.maker_adj
    for u in range(state.n):
        for v in _bits(adj[u]):
            if v <= u:
                continue
            common = adj[u] & adj[v]
            if common:
                w = next(_bits(common))
                return tuple(sorted((u, v, w)))  # type: ignore[return-value]
    return None


def winning_structure(state: GameState, exact_cap: int = EXACT_CAP_DEFAULT) -> Optional[list[Edge]]:
    """Edges of one witness structure for a satisfied goal (for display)."""
    win = state.win
    if not maker_wins(state, exact_cap):
        return None
    if win.kind is WinKind.TRIANGLE:
        tri = _maker_triangle(state)
        assert tri is not None
        a, b, c = tri
        return [(a, b), (a, c), (b, c)]
    if win.kind is WinKind.CONNECTIVITY:
        return _spanning_tree_edges(state)
    if win.kind is WinKind.MIN_DEGREE:
        return maker_graph(state).edges()
    g = maker_graph(state)
    if win.kind is WinKind.HAMILTON_PATH:
        path = _extract_longest_path(g, exact_cap)
        if len(path) != state.n:
            return g.edges()
        return sorted((min(a, b), max(a, b)) for a, b in zip(path, path[1:]))
    return _hamilton_cycle_edges(g, exact_cap)


def _spanning_tree_edges(state: GameState) -> list[Edge]:
    adj = state.maker_adj
    seen = {0}
    frontier = [0]
    tree: list[Edge] = []
    while frontier:
        u = frontier.pop()
        for v in _bits(adj[u]):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
                tree.append((min(u, v), max(u, v)))
    return sorted(tree)


def _hamilton_cycle_edges(g: Graph, exact_cap: int) -> Optional[list[Edge]]:
    n = g.n
    if n < 3 or n > exact_cap:
        return None
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    dp[1] = 1
    for mask in range(1, full + 1, 2):
        ends = dp[mask]
        if not ends:
            continue
        for v in _bits(ends):
            for w in _bits(g.adj[v] & ~mask):
                dp[mask | (1 << w)] |= 1 << w
    closers = dp[full] & g.adj[0] & ~1
    if not closers:
        return None
    path = [next(_bits(closers))]
    mask = full
    while mask.bit_count() > 1:
        v = path[-1]
        prev = mask ^ (1 << v)
        nxt = dp[prev] & g.adj[v]
        if not nxt:
            return None
        path.append(next(_bits(nxt)))
        mask = prev
    path.reverse()
    cycle = [(min(a, b), max(a, b)) for a, b in zip(path, path[1:])]
    cycle.append((min(path[-1], path[0]), max(path[-1], path[0])))
    return sorted(cycle)


def breaker_blocks(state: GameState) -> Optional[BlockWitness]:
    """Witness that the goal fails on every continuation, or None."""
    win = state.win
    avail = available_graph(state)
    if win.kind is WinKind.TRIANGLE:
        for u in range(state.n):
            for v in _bits(avail.adj[u]):
                if v <= u:
                    continue
                if avail.adj[u] & avail.adj[v]:
                    return None
        return BlockWitness(WinKind.TRIANGLE)
    if win.kind is WinKind.MIN_DEGREE:
        for v in range(state.n):
            if avail.degree(v) < win.degree:
                return BlockWitness(win.kind, vertex=v)
        return None
    comps = connected_components(avail)
    if len(comps) > 1:
        smallest = min(comps, key=len)
        rest = sorted(v for c in comps for v in c if c is not smallest)
        return BlockWitness(win.kind, cut=(tuple(smallest), tuple(rest)))
    if win.kind is WinKind.HAMILTON_CYCLE:
        for v in range(state.n):
            if avail.degree(v) <= 1:
                return BlockWitness(win.kind, vertex=v)
    return None
