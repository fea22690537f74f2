"""Graph utilities: exact DP oracles against brute force on small graphs."""

import random
from itertools import combinations, permutations

import pytest

from structbias.graphs import (
    Graph,
    boosters,
    connected_components,
    expander_violation,
    has_hamilton_cycle,
    has_hamilton_path,
    hamilton_path_end_pairs,
    is_connected,
    is_k_expander,
    longest_path_length,
    max_expansion_k,
    one_factorization,
    rotation_extension_boosters,
)


def brute_longest_path(g: Graph) -> int:
    """Vertex count of a longest simple path, by trying all permutations."""
    best = 1 if g.n else 0
    for size in range(2, g.n + 1):
        hit = False
        for verts in permutations(range(g.n), size):
            if all(g.has_edge(a, b) for a, b in zip(verts, verts[1:])):
                hit = True
                break
        if hit:
            best = size
        else:
            break
    return best


def brute_hamilton_cycle(g: Graph) -> bool:
    if g.n < 3:
        return False
    rest = range(1, g.n)
    for verts in permutations(rest):
        cycle = (0,) + verts
        if all(g.has_edge(a, b) for a, b in zip(cycle, cycle[1:])) and g.has_edge(cycle[-1], 0):
            return True
    return False


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(f"graphs-test:{seed}")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def test_one_factorization_k4_exact():
    factors = one_factorization(4)
    as_sets = [set(f) for f in factors]
    assert {frozenset(f) for f in map(tuple, as_sets)} == {
        frozenset({(0, 1), (2, 3)}),
        frozenset({(0, 2), (1, 3)}),
        frozenset({(0, 3), (1, 2)}),
    }


@pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
def test_one_factorization_partitions_all_edges(n):
    factors = one_factorization(n)
    assert len(factors) == n - 1
    seen = set()
    for factor in factors:
        assert len(factor) == n // 2
        used = set()
        for u, v in factor:
            assert u not in used and v not in used
            used.update((u, v))
        assert used == set(range(n))
        seen.update(factor)
    assert len(seen) == n * (n - 1) // 2


def test_one_factorization_rejects_odd():
    with pytest.raises(ValueError):
        one_factorization(5)


def test_connected_components():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4)])
    comps = sorted(sorted(c) for c in connected_components(g))
    assert comps == [[0, 1, 2], [3, 4], [5]]
    assert not is_connected(g)
    assert is_connected(Graph.from_edges(3, [(0, 1), (1, 2)]))


@pytest.mark.parametrize("seed", range(30))
def test_longest_path_matches_brute_force(seed):
    g = random_graph(7, 0.35, seed)
    assert longest_path_length(g) == brute_longest_path(g)


@pytest.mark.parametrize("seed", range(30))
def test_hamilton_cycle_matches_brute_force(seed):
    g = random_graph(7, 0.5, seed)
    assert has_hamilton_cycle(g) == brute_hamilton_cycle(g)


def test_hamilton_path_on_path_and_cycle():
    path = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert has_hamilton_path(path)
    assert not has_hamilton_cycle(path)
    cycle = path.with_edge(0, 4)
    assert has_hamilton_cycle(cycle)


def test_hamilton_path_end_pairs_on_path():
    path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert hamilton_path_end_pairs(path) == {frozenset((0, 3))}


def test_expander_violation_is_a_witness():
    # star K_{1,4}: the leaf set {1} has N({1}) = {0}, size 1 < 2
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    witness = expander_violation(star, 1)
    assert witness is not None
    (v,) = witness
    assert star.degree(v) < 2


def test_complete_graph_expands():
    k7 = Graph.from_edges(7, list(combinations(range(7), 2)))
    assert is_k_expander(k7, 2)
    # |N(U) \ U| = 7 - |U| must be >= 2|U|: fails at |U| = 3
    assert not is_k_expander(k7, 3)
    assert max_expansion_k(k7, cap=4) == 2


def test_max_expansion_consistent_with_violation():
    for seed in range(20):
        g = random_graph(8, 0.45, seed)
        k = max_expansion_k(g, cap=3)
        assert is_k_expander(g, k) if k else True
        if k < 3:
            assert expander_violation(g, k + 1) is not None


def brute_boosters(g: Graph) -> set:
    if has_hamilton_cycle(g):
        return set()
    base = brute_longest_path(g)
    out = set()
    for u, v in g.non_edges():
        g2 = g.with_edge(u, v)
        if brute_longest_path(g2) > base or brute_hamilton_cycle(g2):
            out.add((u, v))
    return out


@pytest.mark.parametrize("seed", range(20))
def test_boosters_match_brute_force(seed):
    g = random_graph(6, 0.4, seed)
    assert boosters(g) == brute_boosters(g)


def test_boosters_empty_on_hamiltonian():
    cycle = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    assert boosters(cycle) == set()


@pytest.mark.parametrize("seed", range(20))
def test_rotation_boosters_are_sound(seed):
    g = random_graph(8, 0.4, seed)
    if not is_connected(g) or has_hamilton_cycle(g):
        pytest.skip("needs a connected non-Hamiltonian sample")
    exact = boosters(g)
    approx = rotation_extension_boosters(g)
    assert approx <= exact
    assert approx, "rotation search found nothing on a connected non-Hamiltonian graph"
