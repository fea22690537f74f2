"""Exact graph algorithms used by detectors, strategies, and verification.

Everything works on adjacency bitmasks, so the exact searches (Hamilton
paths and cycles, longest paths, boosters, expander checks) stay usable
up to around 16 vertices.  Calls beyond the exact cap raise instead of
silently degrading; the rotation-extension search is the explicitly
heuristic escape hatch for larger boards.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .board import Edge, ExactCapError, normalize_edge

EXACT_CAP_DEFAULT = 16


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph as per-vertex adjacency bitmasks."""

    n: int
    adj: tuple[int, ...]

    @staticmethod
    def from_edges(n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = [0] * n
        for raw in edges:
            u, v = normalize_edge(raw)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n, tuple(adj))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if self.adj[u] >> v & 1]

    def non_edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if not self.adj[u] >> v & 1]

    def with_edge(self, u: int, v: int) -> "Graph":
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def connected_components(g: Graph) -> list[list[int]]:
    seen = 0
    out: list[list[int]] = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        frontier = 1 << start
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
        seen |= comp
        out.append(list(_bits(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def _check_cap(g: Graph, cap: int, what: str) -> None:
    if g.n > cap:
        raise ExactCapError(f"{what} is exact only up to {cap} vertices, got {g.n}")


def _has_cut_vertex(g: Graph) -> bool:
    # Tarjan lowpoints; assumes g is connected.
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    stack: list[tuple[int, int, Iterator[int]]] = [(0, -1, _bits(g.adj[0]))]
    disc[0] = low[0] = timer
    timer += 1
    root_children = 0
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                if v == 0:
                    root_children += 1
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, v, _bits(g.adj[w])))
                advanced = True
                break
            if w != parent:
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if stack:
            pv = stack[-1][0]
            low[pv] = min(low[pv], low[v])
            if pv != 0 and low[v] >= disc[pv]:
                return True
    return root_children > 1


def _posa_find_hamilton_cycle(g: Graph, tries: int = 40) -> Optional[list[int]]:
    """Deterministic rotation-extension search; returns a cycle or None."""
    n = g.n
    rng = random.Random(0xC0FFEE + n)
    for _ in range(tries):
        start = rng.randrange(n)
        path = [start]
        on_path = 1 << start
        steps = 0
        while len(path) < n and steps < 4 * n * n:
            steps += 1
            end = path[-1]
            free = g.adj[end] & ~on_path
            if free:
                choices = list(_bits(free))
                nxt = choices[rng.randrange(len(choices))]
                path.append(nxt)
                on_path |= 1 << nxt
                continue
            # rotate: an edge from the end into the path interior
            pivots = [i for i in range(len(path) - 2) if g.adj[end] >> path[i] & 1]
            if not pivots:
                break
            i = pivots[rng.randrange(len(pivots))]
            path[i + 1:] = reversed(path[i + 1:])
        if len(path) == n and g.adj[path[-1]] >> path[0] & 1:
            return path
    return None


def has_hamilton_path(g: Graph, exact_cap: int = EXACT_CAP_DEFAULT) -> bool:
    _check_cap(g, exact_cap, "hamilton path search")
    n = g.n
    if n == 0:
        return False
    if n == 1:
        return True
    if not is_connected(g):
        return False
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    for v in range(n):
        dp[1 << v] = 1 << v
    adj = g.adj
    for mask in range(1, full + 1):
        ends = dp[mask]
        if not ends:
            continue
        if mask == full:
            return True
        for v in _bits(ends):
            for w in _bits(adj[v] & ~mask):
                dp[mask | (1 << w)] |= 1 << w
    return bool(dp[full])


def has_hamilton_cycle(g: Graph, exact_cap: int = EXACT_CAP_DEFAULT) -> bool:
    _check_cap(g, exact_cap, "hamilton cycle search")
    n = g.n
    if n < 3:
        return False
    if any(g.degree(v) < 2 for v in range(n)):
        return False
    if not is_connected(g):
        return False
    if _has_cut_vertex(g):
        return False
    if all(2 * g.degree(v) >= n for v in range(n)):
        return True
    if _posa_find_hamilton_cycle(g) is not None:
        return True
    # exact check: paths anchored at vertex 0
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    dp[1] = 1
    adj = g.adj
    for mask in range(1, full + 1, 2):
        ends = dp[mask]
        if not ends:
            continue
        for v in _bits(ends):
            for w in _bits(adj[v] & ~mask):
                dp[mask | (1 << w)] |= 1 << w
    return bool(dp[full] & adj[0] & ~1)


def longest_path_length(g: Graph, exact_cap: int = EXACT_CAP_DEFAULT) -> int:
    """Number of vertices on a longest path (0 for the empty graph)."""
    _check_cap(g, exact_cap, "longest path search")
    n = g.n
    if n == 0:
        return 0
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    for v in range(n):
        dp[1 << v] = 1 << v
    adj = g.adj
    best = 1
    for mask in range(1, full + 1):
        ends = dp[mask]
        if not ends:
            continue
        count = mask.bit_count()
        if count > best:
            best = count
            if best == n:
                return n
        for v in _bits(ends):
            for w in _bits(adj[v] & ~mask):
                dp[mask | (1 << w)] |= 1 << w
    return best


def _path_exceeds(n: int, adj: Sequence[int], target: int) -> bool:
    """True if some simple path covers more than ``target`` vertices."""
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    for v in range(n):
        dp[1 << v] = 1 << v
    for mask in range(1, full + 1):
        ends = dp[mask]
        if not ends:
            continue
        if mask.bit_count() > target:
            return True
        for v in _bits(ends):
            for w in _bits(adj[v] & ~mask):
                dp[mask | (1 << w)] |= 1 << w
    return False


def hamilton_path_end_pairs(g: Graph, exact_cap: int = EXACT_CAP_DEFAULT) -> set[frozenset[int]]:
    """Endpoint pairs {u, v} of Hamilton paths of g."""
    _check_cap(g, exact_cap, "hamilton path endpoints")
    n = g.n
    pairs: set[frozenset[int]] = set()
    if n < 2 or not is_connected(g):
        return pairs
    full = (1 << n) - 1
    adj = g.adj
    for s in range(n):
        dp = [0] * (full + 1)
        dp[1 << s] = 1 << s
        for mask in range(1, full + 1):
            if not mask >> s & 1:
                continue
            ends = dp[mask]
            if not ends:
                continue
            for v in _bits(ends):
                for w in _bits(adj[v] & ~mask):
                    dp[mask | (1 << w)] |= 1 << w
        for v in _bits(dp[full]):
            if v != s:
                pairs.add(frozenset((s, v)))
    return pairs


def expander_violation(g: Graph, k: int) -> Optional[tuple[int, ...]]:
    """A set U with |U| <= k and |N(U) \\ U| < 2|U|, or None if g is a k-expander."""
    for size in range(1, k + 1):
        for combo in combinations(range(g.n), size):
            umask = 0
            nbhd = 0
            for v in combo:
                umask |= 1 << v
                nbhd |= g.adj[v]
            if (nbhd & ~umask).bit_count() < 2 * size:
                return combo
    return None


def is_k_expander(g: Graph, k: int) -> bool:
    return expander_violation(g, k) is None


def max_expansion_k(g: Graph, cap: int = 4) -> int:
    """Largest k <= cap for which g is a k-expander (0 if none)."""
    k = 0
    for size in range(1, cap + 1):
        for combo in combinations(range(g.n), size):
            umask = 0
            nbhd = 0
            for v in combo:
                umask |= 1 << v
                nbhd |= g.adj[v]
            if (nbhd & ~umask).bit_count() < 2 * size:
                return k
        k = size
    return k


def boosters(g: Graph, exact_cap: int = EXACT_CAP_DEFAULT) -> set[Edge]:
    """Non-edges whose addition lengthens a longest path or makes g Hamiltonian.

    A graph that is already Hamiltonian has no boosters by convention.
    """
    _check_cap(g, exact_cap, "booster search")
    n = g.n
    if n < 3 or has_hamilton_cycle(g, exact_cap):
        return set()
    length = longest_path_length(g, exact_cap)
    found: set[Edge] = set()
    if length == n:
        pairs = hamilton_path_end_pairs(g, exact_cap)
        for u, v in g.non_edges():
            if frozenset((u, v)) in pairs:
                found.add((u, v))
        return found
    for u, v in g.non_edges():
        adj = list(g.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        if _path_exceeds(n, adj, length):
            found.add((u, v))
    return found


def rotation_extension_boosters(g: Graph, base_path: Optional[Sequence[int]] = None,
                                exact_cap: int = EXACT_CAP_DEFAULT) -> set[Edge]:
    """Boosters derived from rotations of a longest path.

    Sound but not complete: every returned pair closes some rotation of a
    longest path into a cycle, which either spans g (Hamilton) or, since g
    is connected, unlocks a longer path.  ``base_path`` must be a longest
    path; by default one is extracted from the exact search.
    """
    n = g.n
    if n < 3 or not is_connected(g):
        return set()
    if base_path is None:
        base_path = _extract_longest_path(g, exact_cap)
    path = list(base_path)
    found: set[Edge] = set()
    seen_paths: set[tuple[int, ...]] = set()
    spanning = len(path) == n

    def consider(p: list[int]) -> None:
        a, b = p[0], p[-1]
        if not g.has_edge(a, b) and a != b:
            if spanning or len(p) == len(path):
                found.add((min(a, b), max(a, b)))

    queue = [tuple(path)]
    seen_paths.add(tuple(path))
    budget = 4 * n * n
    while queue and budget > 0:
        current = list(queue.pop())
        budget -= 1
        consider(current)
        for flip in (False, True):
            p = current[::-1] if flip else current[:]
            end = p[-1]
            for i in range(len(p) - 2):
                if g.has_edge(end, p[i]):
                    rotated = p[:i + 1] + p[i + 1:][::-1]
                    key = tuple(rotated)
                    if key not in seen_paths:
                        seen_paths.add(key)
                        queue.append(key)
    return found


def _extract_longest_path(g: Graph, exact_cap: int) -> list[int]:
    n = g.n
    if n > exact_cap:
        return _heuristic_longest_path(g)
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    for v in range(n):
        dp[1 << v] = 1 << v
    adj = g.adj
    best_mask, best_end = 1, 0
    best_count = 1
    for mask in range(1, full + 1):
        ends = dp[mask]
        if not ends:
            continue
        count = mask.bit_count()
        if count > best_count:
            best_count = count
            best_mask = mask
            best_end = next(_bits(ends))
        for v in _bits(ends):
            for w in _bits(adj[v] & ~mask):
                dp[mask | (1 << w)] |= 1 << w
    # walk the dp table backwards to materialize one longest path
    path = [best_end]
    mask = best_mask
    while mask.bit_count() > 1:
        v = path[-1]
        prev_mask = mask ^ (1 << v)
        for w in _bits(dp[prev_mask] & adj[v]):
            path.append(w)
            mask = prev_mask
            break
        else:  # pragma: no cover - dp invariant
            raise AssertionError("dp walk failed")
    path.reverse()
    return path


def _heuristic_longest_path(g: Graph) -> list[int]:
    n = g.n
    rng = random.Random(0xBADA55 + n)
    best: list[int] = [0] if n else []
    for _ in range(20):
        start = rng.randrange(n)
        path = [start]
        on_path = 1 << start
        for _ in range(4 * n * n):
            end = path[-1]
            free = g.adj[end] & ~on_path
            if free:
                nxt = next(_bits(free))
                path.append(nxt)
                on_path |= 1 << nxt
                continue
            pivots = [i for i in range(len(path) - 2) if g.adj[end] >> path[i] & 1]
            if not pivots:
                break
            i = pivots[rng.randrange(len(pivots))]
            path[i + 1:] = reversed(path[i + 1:])
        if len(path) > len(best):
            best = path[:]
        if len(best) == n:
            break
    return best


def one_factorization(n: int) -> list[list[Edge]]:
    """Partition of E(K_n) into n-1 perfect matchings (n even), circle method."""
    if n < 2 or n % 2:
        raise ValueError(f"one-factorization needs even n >= 2, got {n}")
    hub = n - 1
    factors: list[list[Edge]] = []
    for r in range(n - 1):
        factor = [(min(r, hub), max(r, hub))]
        for i in range(1, (n - 1) // 2 + 1):
            a = (r + i) % (n - 1)
            b = (r - i) % (n - 1)
            factor.append((min(a, b), max(a, b)))
        factor.sort()
        factors.append(factor)
    return factors
