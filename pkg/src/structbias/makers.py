"""Maker strategies.

Each strategy proposes one edge per Maker turn.  Strategies re-derive what
they need from the game state and history, so a fresh instance fed the
same sequence of positions proposes the same moves.  When the position
leaves a strategy's playbook it raises StrategyForfeit; when it can prove
its goal is dead by its own bookkeeping it raises StrategyBlocked.
"""

from __future__ import annotations

import random
from typing import Optional

from .board import Edge, GameState, Player, normalize_edge
from .danger import DangerLedger, DangerMode, DEGREE_TARGET_DEFAULT
from .graphs import (
    Graph,
    EXACT_CAP_DEFAULT,
    boosters,
    has_hamilton_cycle,
    has_hamilton_path,
    is_k_expander,
    rotation_extension_boosters,
)
from .strategy import (
    MakerStrategy,
    StrategyBlocked,
    StrategyForfeit,
    UnsupportedBoardError,
    maker_move_number,
)
from .wins import maker_graph


def lowest_closing_edge(state: GameState) -> Optional[Edge]:
    """Lowest canonical unclaimed edge that completes a Maker triangle."""
    n = state.n
    adj = state.maker_adj
    index = 0
    for u in range(n):
        for v in range(u + 1, n):
            if state.ownership[index] == 0 and adj[u] & adj[v]:
                return (u, v)
            index += 1
    return None


def _maker_edges_in_order(state: GameState) -> list[Edge]:
    return [r.edges[0] for r in state.history if r.player is Player.MAKER]


class TriangleVsCliqueMaker(MakerStrategy):
    """Fan strategy for the triangle game against clique-shaped moves.

    Grow a fan of Breaker-untouched vertices around a centre v; each new
    fan vertex creates pair threats among the fan that cliques of bounded
    span cannot all cover, and the first open pair closes a triangle.
    """

    id = "maker.triangle.clique"

    def move(self, state: GameState) -> Edge:
        closing = lowest_closing_edge(state)
        if closing is not None:
            return closing
        own = _maker_edges_in_order(state)
        if not own:
            centre = self._fresh_centre(state)
            if centre is None:
                raise StrategyForfeit("no breaker-untouched pair to start a fan")
            return centre
        v = self._derive_centre(own)
        fan = state.maker_adj[v]
        for u in range(state.n):
            if u == v or fan >> u & 1:
                continue
            if state.breaker_degree(u) == 0 and state.is_unclaimed((min(u, v), max(u, v))):
                return (min(u, v), max(u, v))
        raise StrategyForfeit("no breaker-untouched fan extension left")

    def _fresh_centre(self, state: GameState) -> Optional[Edge]:
        untouched = [u for u in range(state.n) if state.breaker_degree(u) == 0]
        for i, v in enumerate(untouched):
            for u in untouched[i + 1:]:
                if state.is_unclaimed((v, u)):
                    return (v, u)
        return None

    @staticmethod
    def _derive_centre(own: list[Edge]) -> int:
        if len(own) >= 2:
            shared = set(own[0]) & set(own[1])
            if shared:
                return min(shared)
        return min(own[0])


class TriangleVsMatchingMaker(MakerStrategy):
    """Four-move triangle plan against matching-shaped moves.

    Claim vu1 and vu2, then vu for a vertex u with u1u and u2u both open.
    A matching move touches u at most once, so at most one of the two
    closing edges dies and the other finishes the triangle.
    """

    id = "maker.triangle.matching"

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self._v: Optional[int] = None
        self._u1: Optional[int] = None
        self._u2: Optional[int] = None

    def move(self, state: GameState) -> Edge:
        if state.n < 10:
            raise UnsupportedBoardError("triangle-vs-matching plan needs n >= 10")
        closing = lowest_closing_edge(state)
        if closing is not None:
            return closing
        self._restore(state)
        number = maker_move_number(state)
        if number == 1:
            for v in range(state.n):
                partners = [u for u in range(state.n)
                            if u != v and state.is_unclaimed((min(u, v), max(u, v)))]
                if len(partners) >= 2:
                    self._v, self._u1 = v, partners[0]
                    return (min(v, partners[0]), max(v, partners[0]))
            raise StrategyForfeit("no vertex with two open edges")
        if self._v is None:
            raise StrategyForfeit("plan memory unavailable for this history")
        v = self._v
        if number == 2:
            for u in range(state.n):
                if u in (v, self._u1):
                    continue
                if state.is_unclaimed((min(u, v), max(u, v))):
                    self._u2 = u
                    return (min(u, v), max(u, v))
            raise StrategyForfeit("no second spoke available")
        if number == 3:
            u1, u2 = self._u1, self._u2
            if u1 is None or u2 is None:
                raise StrategyForfeit("plan memory unavailable for this history")
            for u in range(state.n):
                if u in (v, u1, u2):
                    continue
                if (state.is_unclaimed((min(u, v), max(u, v)))
                        and state.is_unclaimed((min(u, u1), max(u, u1)))
                        and state.is_unclaimed((min(u, u2), max(u, u2)))):
                    return (min(u, v), max(u, v))
            raise StrategyForfeit("no double-threat apex available")
        raise StrategyForfeit("no closing edge after the double threat")

    def _restore(self, state: GameState) -> None:
        if self._v is not None:
            return
        own = _maker_edges_in_order(state)
        if not own:
            return
        if len(own) >= 2:
            shared = set(own[0]) & set(own[1])
            self._v = min(shared) if shared else min(own[0])
        else:
            self._v = min(own[0])
        spokes = [u for e in own for u in e if u != self._v]
        if spokes:
            self._u1 = spokes[0]
        if len(spokes) >= 2:
            self._u2 = spokes[1]


class TriangleVsStarMaker(MakerStrategy):
    """Hub strategy for the triangle game against star-shaped moves.

    Open with an edge on two Breaker-untouched vertices, pick as hub the
    endpoint the reply star did not centre on, then extend the hub so a
    closing pair stays open; a star centres on one vertex per turn and
    cannot chase every pair.
    """

    id = "maker.triangle.star"

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self._pair: Optional[tuple[int, int]] = None
        self._hub: Optional[int] = None

    def move(self, state: GameState) -> Edge:
        closing = lowest_closing_edge(state)
        if closing is not None:
            return closing
        own = _maker_edges_in_order(state)
        if not own:
            for u in range(state.n):
                if state.breaker_degree(u) != 0:
                    continue
                for v in range(u + 1, state.n):
                    if state.breaker_degree(v) == 0 and state.is_unclaimed((u, v)):
                        self._pair = (u, v)
                        return (u, v)
            raise StrategyForfeit("no breaker-untouched pair to open with")
        if self._pair is None:
            self._pair = (min(own[0]), max(own[0]))
        if self._hub is None:
            self._hub = self._pick_hub(state)
        hub = self._hub
        fan = state.maker_adj[hub]
        if fan == 0:
            raise StrategyForfeit("hub lost its fan")
        for u in range(state.n):
            if u == hub or fan >> u & 1:
                continue
            if not state.is_unclaimed((min(u, hub), max(u, hub))):
                continue
            open_pair = any(state.is_unclaimed((min(u, x), max(u, x)))
                            for x in range(state.n) if fan >> x & 1)
            if open_pair:
                return (min(u, hub), max(u, hub))
        raise StrategyForfeit("no hub extension with an open closing pair")

    def _pick_hub(self, state: GameState) -> int:
        w1, w2 = self._pair
        centres: set[int] = set()
        seen_own_first = False
        for record in state.history:
            if record.player is Player.MAKER:
                seen_own_first = True
                continue
            if not seen_own_first:
                continue
            if len(record.edges) == 1:
                centres = set(record.edges[0])
            elif record.edges:
                common = set(record.edges[0])
                for e in record.edges[1:]:
                    common &= set(e)
                centres = common
            break
        if w1 in centres:
            return w2
        if w2 in centres:
            return w1
        return w1


class TreeGrowthMaker(MakerStrategy):
    """Connectivity by growing one spanning tree, one edge per turn.

    Moving first, always claim the lowest canonical unclaimed edge leaving
    the current tree.  After i moves the tree has i+1 vertices while
    Breaker has claimed at most i edges, too few to saturate any outside
    vertex's links into the tree.
    """

    id = "maker.connectivity.tree"

    def move(self, state: GameState) -> Edge:
        own = _maker_edges_in_order(state)
        if not own:
            for edge in _canonical_unclaimed(state):
                return edge
            raise StrategyForfeit("board exhausted")
        root = min(own[0])
        label = state.maker_comp[root]
        for a, b in _canonical_unclaimed(state):
            if (state.maker_comp[a] == label) != (state.maker_comp[b] == label):
                return (a, b)
        raise StrategyBlocked("tree cut off from the remaining vertices")


def _canonical_unclaimed(state: GameState):
    index = 0
    for u in range(state.n):
        for v in range(u + 1, state.n):
            if state.ownership[index] == 0:
                yield (u, v)
            index += 1


class ConnectivityDangerMaker(MakerStrategy):
    """Connectivity via the component danger ledger.

    Each turn, connect the highest-danger vertex's component to another
    component; the ledger then retires that vertex.  Joining components
    never raises anyone's danger on Maker's half-move.
    """

    id = "maker.connectivity.danger"

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self._ledger: Optional[DangerLedger] = None

    def ledger(self, state: GameState) -> DangerLedger:
        if self._ledger is None:
            self._ledger = DangerLedger(mode=DangerMode.COMPONENT, n=state.n,
                                        bias_size=state.bias.size)
        self._ledger.sync(state)
        return self._ledger

    def move(self, state: GameState) -> Edge:
        ledger = self.ledger(state)
        target = ledger.argmax_danger()
        label = state.maker_comp[target]
        best: Optional[Edge] = None
        for x in range(state.n):
            if x == target or state.maker_comp[x] == label:
                continue
            edge = (min(x, target), max(x, target))
            if state.is_unclaimed(edge):
                best = edge
                break
        if best is None:
            for a, b in _canonical_unclaimed(state):
                if (state.maker_comp[a] == label) != (state.maker_comp[b] == label):
                    best = (a, b)
                    break
        if best is None:
            raise StrategyBlocked("highest-danger component sealed off")
        return best


def _degree_danger_edge(ledger: DangerLedger, state: GameState,
                        rng: random.Random) -> Edge:
    target = ledger.argmax_danger()
    partners = [x for x in range(state.n)
                if x != target and state.is_unclaimed((min(x, target), max(x, target)))]
    if not partners:
        raise StrategyBlocked("most endangered vertex has no open edge")
    x = rng.choice(partners)
    return (min(x, target), max(x, target))


class MinDegreeDangerMaker(MakerStrategy):
    """Degree building via the degree danger ledger.

    Claim a uniformly random open edge at the vertex maximising
    breaker-degree minus 2b times maker-degree, among vertices still
    under the degree target.
    """

    id = "maker.mindegree.danger"

    def __init__(self, seed: int = 0, degree_target: int = DEGREE_TARGET_DEFAULT):
        super().__init__(seed)
        self.degree_target = degree_target
        self._ledger: Optional[DangerLedger] = None

    def ledger(self, state: GameState) -> DangerLedger:
        if self._ledger is None:
            self._ledger = DangerLedger(mode=DangerMode.DEGREE, n=state.n,
                                        bias_size=state.bias.size,
                                        degree_target=self.degree_target)
        self._ledger.sync(state)
        return self._ledger

    def move(self, state: GameState) -> Edge:
        return _degree_danger_edge(self.ledger(state), state, self._rng(state))


class HamiltonThreeStageMaker(MakerStrategy):
    """Hamiltonicity in three stages, each read off the current graph.

    Stage 1 builds degrees with the danger rule until the Maker graph is a
    k-expander (or hits the degree target).  Stage 2 joins components.
    Stage 3 claims boosters, non-edges that lengthen a longest path or
    finish the cycle, until the goal detector fires.

    The expansion parameter k defaults to floor(delta^5 * n), which is
    below 1 at playable sizes, so experiments pass an explicit k; both
    the configured and the effective value are kept for reporting.
    """

    id = "maker.ham.threestage"

    def __init__(self, seed: int = 0, k: Optional[int] = None,
                 delta: float = 0.1, c0: Optional[float] = None,
                 degree_target: int = DEGREE_TARGET_DEFAULT,
                 exact_cap: int = EXACT_CAP_DEFAULT,
                 stage1_cap_factor: int = 16):
        super().__init__(seed)
        if not 0 < delta < 1:
            raise ValueError("delta must be in (0, 1)")
        self.delta = delta
        self.c0 = c0 if c0 is not None else delta ** 10 / 36
        self.k_config = k
        self.k_effective: Optional[int] = k
        self.degree_target = degree_target
        self.exact_cap = exact_cap
        self.stage1_cap_factor = stage1_cap_factor
        self._ledger: Optional[DangerLedger] = None

    def _k(self, n: int) -> int:
        if self.k_effective is None:
            self.k_effective = max(1, int(self.delta ** 5 * n))
        return self.k_effective

    def ledger(self, state: GameState) -> DangerLedger:
        if self._ledger is None:
            self._ledger = DangerLedger(mode=DangerMode.DEGREE, n=state.n,
                                        bias_size=state.bias.size,
                                        degree_target=self.degree_target)
        self._ledger.sync(state)
        return self._ledger

    def stage(self, state: GameState) -> int:
        g = maker_graph(state)
        min_deg = min(g.degree(v) for v in range(g.n))
        if min_deg < self.degree_target and not is_k_expander(g, self._k(state.n)):
            return 1
        if len(set(state.maker_comp)) > 1:
            return 2
        return 3

    def move(self, state: GameState) -> Edge:
        stage = self.stage(state)
        if stage == 1:
            if maker_move_number(state) > self.stage1_cap_factor * state.n:
                raise StrategyBlocked("degree-building stage exceeded its budget")
            return _degree_danger_edge(self.ledger(state), state, self._rng(state))
        if stage == 2:
            for a, b in _canonical_unclaimed(state):
                if state.maker_comp[a] != state.maker_comp[b]:
                    return (a, b)
            raise StrategyBlocked("components can no longer be joined")
        g = maker_graph(state)
        if g.n <= self.exact_cap:
            targets = boosters(g, exact_cap=self.exact_cap)
        else:
            targets = rotation_extension_boosters(g, exact_cap=self.exact_cap)
        for a, b in sorted(targets):
            if state.is_unclaimed((a, b)):
                return (a, b)
        raise StrategyBlocked("no unclaimed booster remains")


class RandomMaker(MakerStrategy):
    """Uniformly random open edge, fixed by the seed."""

    id = "maker.baseline.random"

    def move(self, state: GameState) -> Edge:
        edges = list(_canonical_unclaimed(state))
        if not edges:
            raise StrategyForfeit("board exhausted")
        return self._rng(state).choice(edges)


class GreedyMaker(MakerStrategy):
    """Win now if possible, otherwise make the most threatening move.

    Takes an immediate winning edge when one exists, otherwise scores
    open edges by cheap goal progress (new triangle threats, component
    joins, degree repair) and picks the best, ties broken by seed.
    """

    id = "maker.baseline.greedy"

    def __init__(self, seed: int = 0, exact_cap: int = EXACT_CAP_DEFAULT):
        super().__init__(seed)
        self.exact_cap = exact_cap

    def move(self, state: GameState) -> Edge:
        edges = list(_canonical_unclaimed(state))
        if not edges:
            raise StrategyForfeit("board exhausted")
        rng = self._rng(state)
        winner = self._winning_edge(state, edges)
        if winner is not None:
            return winner
        scored = [(self._score(state, e), i, e) for i, e in enumerate(edges)]
        best = max(s for s, _, _ in scored)
        pool = [e for s, _, e in scored if s == best]
        return rng.choice(pool)

    def _winning_edge(self, state: GameState, edges: list[Edge]) -> Optional[Edge]:
        from .board import WinKind

        kind = state.win.kind
        if kind is WinKind.TRIANGLE:
            return lowest_closing_edge(state)
        if kind is WinKind.CONNECTIVITY:
            if len(set(state.maker_comp)) == 2:
                for a, b in edges:
                    if state.maker_comp[a] != state.maker_comp[b]:
                        return (a, b)
            return None
        if kind is WinKind.MIN_DEGREE:
            d = state.win.degree
            low = [v for v in range(state.n) if state.maker_degree(v) < d]
            if not low or len(low) > 2:
                return None
            if any(state.maker_degree(v) < d - 1 for v in low):
                return None
            if len(low) == 2:
                a, b = sorted(low)
                return (a, b) if state.is_unclaimed((a, b)) else None
            v = low[0]
            for a, b in edges:
                if v in (a, b):
                    return (a, b)
            return None
        if state.n > self.exact_cap or len(set(state.maker_comp)) > 1:
            return None
        g = maker_graph(state)
        check = (has_hamilton_path if kind is WinKind.HAMILTON_PATH
                 else has_hamilton_cycle)
        for a, b in edges:
            if check(g.with_edge(a, b), exact_cap=self.exact_cap):
                return (a, b)
        return None

    def _score(self, state: GameState, edge: Edge) -> int:
        from .board import WinKind

        a, b = edge
        kind = state.win.kind
        if kind is WinKind.TRIANGLE:
            score = 0
            for c in range(state.n):
                if c in (a, b):
                    continue
                ca = (min(a, c), max(a, c))
                cb = (min(b, c), max(b, c))
                if state.maker_adj[a] >> c & 1 and state.is_unclaimed(cb):
                    score += 1
                if state.maker_adj[b] >> c & 1 and state.is_unclaimed(ca):
                    score += 1
            return score
        if kind in (WinKind.CONNECTIVITY, WinKind.HAMILTON_PATH,
                    WinKind.HAMILTON_CYCLE):
            joins = state.maker_comp[a] != state.maker_comp[b]
            starve = -(state.maker_degree(a) + state.maker_degree(b))
            return (100 if joins else 0) + starve
        return -(min(state.maker_degree(a), state.maker_degree(b)))
