"""Breaker strategies.

Each strategy proposes one structure-shaped set of edges per Breaker
turn: a subgraph of a clique on at most m vertices, a matching of at
most b edges, a star of at most b edges, or up to b arbitrary edges.
Plan-based strategies keep instance memory that is reconstructed purely
by being called on the same sequence of positions.
"""

from __future__ import annotations

import random
from typing import Optional

from .board import BiasFamily, Edge, GameState, Player
from .graphs import EXACT_CAP_DEFAULT, one_factorization
from .strategy import (
    BreakerStrategy,
    StrategyForfeit,
    UnsupportedBoardError,
)
from .wins import maker_graph


def _unclaimed_edges(state: GameState) -> list[Edge]:
    out = []
    index = 0
    for u in range(state.n):
        for v in range(u + 1, state.n):
            if state.ownership[index] == 0:
                out.append((u, v))
            index += 1
    return out


def _unclaimed_at(state: GameState, v: int) -> list[Edge]:
    return [(min(v, x), max(v, x)) for x in range(state.n)
            if x != v and state.is_unclaimed((min(v, x), max(v, x)))]


def _triangle_closers(state: GameState) -> list[Edge]:
    adj = state.maker_adj
    return [e for e in _unclaimed_edges(state) if adj[e[0]] & adj[e[1]]]


class RandomBreaker(BreakerStrategy):
    """Random structure of the session's family, fixed by the seed.

    Free: a random set of b open edges.  Matching: a greedy random
    matching.  Star: a random centre with random open leaves.  Clique:
    a random span of m vertices, claiming every open edge inside it.
    """

    id = "breaker.baseline.random"

    def move(self, state: GameState) -> list[Edge]:
        unclaimed = _unclaimed_edges(state)
        if not unclaimed:
            return []
        rng = self._rng(state)
        family = state.bias.family
        size = state.bias.size
        if family is BiasFamily.FREE:
            return sorted(rng.sample(unclaimed, min(size, len(unclaimed))))
        if family is BiasFamily.MATCHING:
            pool = unclaimed[:]
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
            centres = [v for v in range(state.n) if _unclaimed_at(state, v)]
            centre = rng.choice(centres)
            spokes = _unclaimed_at(state, centre)
            return sorted(rng.sample(spokes, min(size, len(spokes))))
        span = set(rng.sample(range(state.n), min(size, state.n)))
        inside = [e for e in unclaimed if e[0] in span and e[1] in span]
        if inside:
            return inside
        seed_edge = rng.choice(unclaimed)
        span = set(seed_edge)
        others = [v for v in range(state.n) if v not in span]
        span.update(rng.sample(others, min(size - 2, len(others))))
        return [e for e in unclaimed if e[0] in span and e[1] in span]


class GreedyBreaker(BreakerStrategy):
    """Block the most immediate Maker threats the structure can cover.

    Collects Maker's winning edges for the session's goal (plus cheaper
    pressure targets when there are none), packs as many as the family
    shape allows, and fills the rest of the budget at random.
    """

    id = "breaker.baseline.greedy"

    def __init__(self, seed: int = 0, exact_cap: int = EXACT_CAP_DEFAULT):
        super().__init__(seed)
        self.exact_cap = exact_cap

    def move(self, state: GameState) -> list[Edge]:
        unclaimed = _unclaimed_edges(state)
        if not unclaimed:
            return []
        rng = self._rng(state)
        primary, secondary = self._targets(state, unclaimed, rng)
        family = state.bias.family
        size = state.bias.size
        if family is BiasFamily.FREE:
            return self._pack_free(unclaimed, primary, secondary, size, rng)
        if family is BiasFamily.MATCHING:
            return self._pack_matching(unclaimed, primary, secondary, size, rng)
        if family is BiasFamily.STAR:
            return self._pack_star(state, unclaimed, primary, secondary, size, rng)
        return self._pack_clique(state, unclaimed, primary, secondary, size, rng)

    def _targets(self, state: GameState, unclaimed: list[Edge],
                 rng: random.Random) -> tuple[list[Edge], list[Edge]]:
        from .board import WinKind

        kind = state.win.kind
        if kind is WinKind.TRIANGLE:
            primary = _triangle_closers(state)
            adj = state.maker_adj
            scored = []
            for a, b in unclaimed:
                score = 0
                for c in range(state.n):
                    if c in (a, b):
                        continue
                    if adj[a] >> c & 1 and state.is_unclaimed((min(b, c), max(b, c))):
                        score += 1
                    if adj[b] >> c & 1 and state.is_unclaimed((min(a, c), max(a, c))):
                        score += 1
                if score:
                    scored.append((score, (a, b)))
            scored.sort(key=lambda t: (-t[0], t[1]))
            secondary = [e for _, e in scored]
            return primary, secondary
        if kind is WinKind.MIN_DEGREE:
            d = state.win.degree
            low = [v for v in range(state.n) if state.maker_degree(v) < d]
            primary = []
            if low and len(low) <= 2 and all(state.maker_degree(v) == d - 1 for v in low):
                if len(low) == 2:
                    e = (min(low), max(low))
                    if state.is_unclaimed(e):
                        primary.append(e)
                primary.extend(e for e in unclaimed
                               if e[0] in low or e[1] in low)
            starving = sorted(low, key=lambda v: (len(_unclaimed_at(state, v)), v))
            secondary = []
            for v in starving:
                secondary.extend(_unclaimed_at(state, v))
            return sorted(set(primary)), secondary
        primary = []
        if len(set(state.maker_comp)) == 2:
            primary = [e for e in unclaimed
                       if state.maker_comp[e[0]] != state.maker_comp[e[1]]]
        candidates = [v for v in range(state.n) if state.maker_degree(v) == 0]
        secondary = []
        if candidates:
            target = min(candidates, key=lambda v: (len(_unclaimed_at(state, v)), v))
            secondary = _unclaimed_at(state, target)
        return primary, secondary

    @staticmethod
    def _pack_free(unclaimed, primary, secondary, size, rng):
        chosen: list[Edge] = []
        for pool in (primary, secondary, rng.sample(unclaimed, len(unclaimed))):
            for e in pool:
                if len(chosen) == size:
                    break
                if e not in chosen:
                    chosen.append(e)
        return sorted(chosen)

    @staticmethod
    def _pack_matching(unclaimed, primary, secondary, size, rng):
        chosen: list[Edge] = []
        used: set[int] = set()

        def add_from(pool):
            for a, b in pool:
                if len(chosen) == size:
                    return
                if a not in used and b not in used and (a, b) not in chosen:
                    chosen.append((a, b))
                    used.update((a, b))

        add_from(primary)
        add_from(secondary)
        add_from(rng.sample(unclaimed, len(unclaimed)))
        return sorted(chosen)

    @staticmethod
    def _pack_star(state, unclaimed, primary, secondary, size, rng):
        best_centre = None
        best_count = -1
        order = list(range(state.n))
        rng.shuffle(order)
        for v in order:
            count = sum(1 for e in primary if v in e)
            if count > best_count and _unclaimed_at(state, v):
                best_centre, best_count = v, count
        if best_centre is None:
            return []
        chosen: list[Edge] = []
        for pool in (primary, secondary, _unclaimed_at(state, best_centre)):
            for e in pool:
                if len(chosen) == size:
                    break
                if best_centre in e and e not in chosen:
                    chosen.append(e)
        return sorted(chosen)

    @staticmethod
    def _pack_clique(state, unclaimed, primary, secondary, size, rng):
        span: set[int] = set()
        pools = primary + secondary + rng.sample(unclaimed, len(unclaimed))
        for a, b in pools:
            if len(span | {a, b}) <= size:
                span.update((a, b))
        return [e for e in unclaimed if e[0] in span and e[1] in span]


class CliqueTriangleBreaker(BreakerStrategy):
    """Triangle blocking with a per-turn budget of floor(m/2) edges.

    Kill every open triangle-closing edge first, then spend the rest of
    the budget on a double star at the endpoints of Maker's last edge,
    claiming one edge per common completion vertex.  Any floor(m/2)
    edges span at most m vertices, so the move always fits the clique.
    """

    id = "breaker.clique.triangle"

    def move(self, state: GameState) -> list[Edge]:
        unclaimed = _unclaimed_edges(state)
        if not unclaimed:
            return []
        budget = max(1, state.bias.size // 2)
        chosen: list[Edge] = []
        for e in _triangle_closers(state):
            if len(chosen) == budget:
                break
            chosen.append(e)
        last = self._last_maker_edge(state)
        if last is not None and len(chosen) < budget:
            x, y = last
            for c in range(state.n):
                if len(chosen) == budget:
                    break
                if c in (x, y):
                    continue
                xc = (min(x, c), max(x, c))
                yc = (min(y, c), max(y, c))
                if state.is_unclaimed(xc) and state.is_unclaimed(yc):
                    if xc not in chosen:
                        chosen.append(xc)
                    elif yc not in chosen:
                        chosen.append(yc)
            for e in _unclaimed_at(state, x) + _unclaimed_at(state, y):
                if len(chosen) == budget:
                    break
                if e not in chosen:
                    chosen.append(e)
        for e in unclaimed:
            if len(chosen) == budget:
                break
            if e not in chosen:
                chosen.append(e)
        return sorted(chosen)

    @staticmethod
    def _last_maker_edge(state: GameState) -> Optional[Edge]:
        for record in reversed(state.history):
            if record.player is Player.MAKER:
                return record.edges[0]
        return None


class CliqueConnectivityBreaker(BreakerStrategy):
    """Isolate a Maker-untouched vertex using vertex groups, then a
    balancing endgame.

    Stage 1 walks a schedule of group pairs, claiming every open edge
    inside the union of each pair, so all edges among the grouped
    vertices get claimed.  Stage 2 repeatedly claims the rectangle
    between the most exposed surviving (still Maker-untouched) group
    vertices and the outside vertices, shrinking someone to isolation.
    """

    id = "breaker.clique.connectivity"

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self._groups: Optional[list[list[int]]] = None
        self._schedule: list[tuple[int, int]] = []
        self._cursor = 0

    def _ensure_plan(self, state: GameState) -> None:
        if self._groups is not None:
            return
        m = state.bias.size
        group_size = m // 2
        group_count = max(1, (m + 2) // 4)
        untouched = [v for v in range(state.n) if state.maker_degree(v) == 0]
        need = group_size * group_count
        if len(untouched) < need or group_size < 1:
            raise StrategyForfeit("not enough maker-untouched vertices to group")
        self._groups = [untouched[i * group_size:(i + 1) * group_size]
                        for i in range(group_count)]
        if group_count == 1:
            self._schedule = [(0, 0)]
        else:
            self._schedule = [(i, j) for i in range(group_count)
                              for j in range(i + 1, group_count)]
        self._cursor = 0

    def move(self, state: GameState) -> list[Edge]:
        unclaimed = _unclaimed_edges(state)
        if not unclaimed:
            return []
        self._ensure_plan(state)
        while self._cursor < len(self._schedule):
            i, j = self._schedule[self._cursor]
            self._cursor += 1
            span = set(self._groups[i]) | set(self._groups[j])
            inside = [e for e in unclaimed if e[0] in span and e[1] in span]
            if inside:
                return inside
        return self._endgame(state, unclaimed)

    def _endgame(self, state: GameState, unclaimed: list[Edge]) -> list[Edge]:
        m = state.bias.size
        half = max(1, m // 2)
        grouped = [v for g in self._groups for v in g]
        survivors = [v for v in grouped if state.maker_degree(v) == 0]
        survivors = [v for v in survivors if _unclaimed_at(state, v)]
        if not survivors:
            raise StrategyForfeit("every grouped vertex was answered or sealed")
        survivors.sort(key=lambda v: (-len(_unclaimed_at(state, v)), v))
        side_a = survivors[:half]
        outside = [w for w in range(state.n) if w not in grouped]

        def pull(w: int) -> int:
            return sum(1 for a in side_a
                       if state.is_unclaimed((min(a, w), max(a, w))))

        outside = [w for w in outside if pull(w) > 0]
        outside.sort(key=lambda w: (-pull(w), w))
        side_b = outside[:max(1, m - len(side_a))]
        move = [(min(a, w), max(a, w)) for a in side_a for w in side_b
                if state.is_unclaimed((min(a, w), max(a, w)))]
        if not move:
            a = side_a[0]
            move = _unclaimed_at(state, a)[:max(1, m - 1)]
        if not move:
            raise StrategyForfeit("survivors have no open edges to squeeze")
        return sorted(set(move))


class MatchingFactorizationBreaker(BreakerStrategy):
    """Claim the board factor by factor.

    A one-factorization splits the complete graph on an even number of
    vertices into n-1 perfect matchings; turn i claims whatever is still
    open in factor i.  After n-1 turns every edge is claimed, and Maker
    got at most n-2 edges in total, one short of any spanning structure.
    """

    id = "breaker.matching.factorization"

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self._factors: Optional[list[list[Edge]]] = None
        self._cursor = 0

    def move(self, state: GameState) -> list[Edge]:
        if state.n % 2 != 0:
            raise UnsupportedBoardError("factorization plan needs an even board")
        if self._factors is None:
            self._factors = one_factorization(state.n)
            self._cursor = 0
        unclaimed_total = any(b == 0 for b in state.ownership)
        if not unclaimed_total:
            return []
        size = state.bias.size
        while self._cursor < len(self._factors):
            factor = self._factors[self._cursor]
            self._cursor += 1
            open_edges = [e for e in factor if state.is_unclaimed(e)]
            if open_edges:
                return open_edges[:size]
        raise StrategyForfeit("all factors processed but edges remain")


class StarConnectivityBreaker(BreakerStrategy):
    """Isolate a vertex with stars when the budget is at least 3n/7.

    Two anchor sets A and B of size b are fixed.  Every outside vertex is
    probed with a star into A and a star into B; a probe Maker ignores is
    isolated outright.  The anchors Maker never touched (at least
    t = 8b - 3n of them, each already missing its n - 2b probe edges) are
    then starred one against the next, and the first anchor Maker leaves
    alone, or the last one standing, gets isolated within the budget.
    """

    id = "breaker.star.connectivity"

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self._plan_ready = False
        self._actions: list[tuple] = []
        self._watched: list[int] = []
        self.anchors: Optional[tuple[list[int], list[int]]] = None
        self.stage2_entry: Optional[dict] = None

    def _ensure_plan(self, state: GameState) -> None:
        if self._plan_ready:
            return
        n, b = state.n, state.bias.size
        t = 8 * b - 3 * n
        if n < 2 * b + 1 or t < 1 or 3 * n - 6 * b > b:
            raise UnsupportedBoardError(
                "star isolation plan needs 3n/7 <= b < (n-1)/2")
        a_side = list(range(b))
        b_side = list(range(b, 2 * b))
        self.anchors = (a_side, b_side)
        for v in range(2 * b, state.n):
            self._actions.append(("probe", v, tuple(a_side)))
            self._actions.append(("probe", v, tuple(b_side)))
        self._actions.append(("enter2",))
        self._plan_ready = True

    def move(self, state: GameState) -> list[Edge]:
        unclaimed_total = any(o == 0 for o in state.ownership)
        if not unclaimed_total:
            return []
        self._ensure_plan(state)
        isolation = self._isolation_due(state)
        if isolation is not None:
            return isolation
        while self._actions:
            action = self._actions.pop(0)
            if action[0] == "probe":
                _, v, targets = action
                edges = [(min(v, a), max(v, a)) for a in targets
                         if state.is_unclaimed((min(v, a), max(v, a)))]
                if targets[-1] == 2 * state.bias.size - 1:
                    self._watched.append(v)
                if edges:
                    return sorted(edges)
                continue
            if action[0] == "enter2":
                self._enter_stage2(state)
                continue
            if action[0] == "star2":
                _, centre, later = action
                b = state.bias.size
                edges = [(min(centre, u), max(centre, u)) for u in later
                         if state.is_unclaimed((min(centre, u), max(centre, u)))]
                edges = edges[:b]
                for e in _unclaimed_at(state, centre):
                    if len(edges) >= b:
                        break
                    if e not in edges:
                        edges.append(e)
                self._watched.append(centre)
                if edges:
                    return sorted(edges)
                continue
            if action[0] == "final":
                _, last = action
                if state.maker_degree(last) == 0:
                    edges = _unclaimed_at(state, last)
                    if 0 < len(edges) <= state.bias.size:
                        return sorted(edges)
                raise StrategyForfeit("final anchor was answered in time")
        raise StrategyForfeit("isolation plan ran out of moves")

    def _isolation_due(self, state: GameState) -> Optional[list[Edge]]:
        b = state.bias.size
        still_watched = []
        found: Optional[list[Edge]] = None
        for v in self._watched:
            if found is not None:
                still_watched.append(v)
                continue
            if state.maker_degree(v) != 0:
                continue
            edges = _unclaimed_at(state, v)
            if 0 < len(edges) <= b:
                found = sorted(edges)
            elif edges:
                still_watched.append(v)
        self._watched = still_watched
        return found

    def _enter_stage2(self, state: GameState) -> None:
        n, b = state.n, state.bias.size
        t = 8 * b - 3 * n
        a_side, b_side = self.anchors
        quiet = [u for u in a_side + b_side if state.maker_degree(u) == 0]
        if len(quiet) < t:
            raise StrategyForfeit("too few untouched anchors for the endgame")
        chain = quiet[:t]
        self.stage2_entry = {
            "chain": list(chain),
            "maker_degrees": [state.maker_degree(u) for u in chain],
            "breaker_degrees": [state.breaker_degree(u) for u in chain],
        }
        for i in range(t - 1):
            self._actions.append(("star2", chain[i], tuple(chain[i + 1:])))
        self._actions.append(("final", chain[-1]))
