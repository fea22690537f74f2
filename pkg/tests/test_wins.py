"""Win and block detection for every goal kind."""

import pytest

from structbias.board import (
    BiasFamily,
    BiasSpec,
    Player,
    WinCondition,
    WinKind,
    apply_breaker_move,
    apply_maker_move,
    min_degree,
    new_game,
)
from structbias.wins import (
    available_graph,
    breaker_blocks,
    maker_wins,
    winning_structure,
)


def build(n, win, maker_edges=(), breaker_edges=(), family=BiasFamily.FREE, size=20):
    """Interleave the given claims into a legal game ending on Maker's move."""
    state = new_game(n, BiasSpec(family, size), win, first=Player.MAKER)
    makers = [tuple(sorted(e)) for e in maker_edges]
    breakers = [tuple(sorted(e)) for e in breaker_edges]
    reserved = set(makers) | set(breakers)
    while makers or breakers:
        if state.to_move is Player.MAKER:
            if makers:
                state = apply_maker_move(state, makers.pop(0))
            else:
                state = apply_maker_move(state, _spare(state, reserved))
        else:
            if breakers:
                state = apply_breaker_move(state, [breakers.pop(0)])
            else:
                state = apply_breaker_move(state, [_spare(state, reserved)])
    return state


def _spare(state, reserved):
    """An unclaimed edge that no queued claim needs, scanned high-end first."""
    from structbias.board import unclaimed_edges

    for e in reversed(unclaimed_edges(state)):
        if e not in reserved:
            return e
    raise AssertionError("test fixture ran out of burnable edges")


def test_triangle_detection_and_witness():
    win = WinCondition(WinKind.TRIANGLE)
    state = build(6, win, maker_edges=[(0, 1), (0, 2)])
    assert not maker_wins(state)
    state = build(6, win, maker_edges=[(0, 1), (0, 2), (1, 2)])
    assert maker_wins(state)
    assert winning_structure(state) == [(0, 1), (0, 2), (1, 2)]


def test_connectivity_detection():
    win = WinCondition(WinKind.CONNECTIVITY)
    path = [(i, i + 1) for i in range(4)]
    state = build(5, win, maker_edges=path)
    assert maker_wins(state)
    tree = winning_structure(state)
    assert sorted(tree) == path
    partial = build(5, win, maker_edges=path[:-1])
    assert not maker_wins(partial)


def test_min_degree_detection():
    win = min_degree(2)
    cycle = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    state = build(5, win, maker_edges=cycle)
    assert maker_wins(state)
    assert not maker_wins(build(5, win, maker_edges=cycle[:-1]))


def test_hamilton_detection():
    edges = [(0, 1), (1, 2), (2, 3), (3, 4)]
    state = build(5, WinCondition(WinKind.HAMILTON_PATH), maker_edges=edges)
    assert maker_wins(state)
    assert winning_structure(state) == sorted(edges)
    state = build(5, WinCondition(WinKind.HAMILTON_CYCLE), maker_edges=edges)
    assert not maker_wins(state)
    state = build(5, WinCondition(WinKind.HAMILTON_CYCLE), maker_edges=edges + [(0, 4)])
    assert maker_wins(state)
    cyc = winning_structure(state)
    assert len(cyc) == 5
    from collections import Counter

    degs = Counter()
    for u, v in cyc:
        degs[u] += 1
        degs[v] += 1
    assert all(d == 2 for d in degs.values())


def test_available_graph_excludes_breaker_edges():
    win = WinCondition(WinKind.TRIANGLE)
    state = build(4, win, maker_edges=[(0, 1)], breaker_edges=[(2, 3)])
    g = available_graph(state)
    assert g.has_edge(0, 1)
    assert not g.has_edge(2, 3)
    assert g.has_edge(0, 2)


def test_triangle_block():
    win = WinCondition(WinKind.TRIANGLE)
    # Breaker owns a bipartition's worth of edges on K_4: kill all triangles
    state = build(4, win, breaker_edges=[(0, 1), (2, 3)],
                  maker_edges=[(0, 2), (1, 3)])
    # available graph is C_4 (0-2-1-3-0): triangle-free
    witness = breaker_blocks(state)
    assert witness is not None and witness.kind is WinKind.TRIANGLE


def test_connectivity_block_cut_witness():
    win = WinCondition(WinKind.CONNECTIVITY)
    isolating = [(0, 1), (0, 2), (0, 3)]
    state = build(4, win, breaker_edges=isolating, maker_edges=[(1, 2), (1, 3), (2, 3)])
    witness = breaker_blocks(state)
    assert witness is not None
    small, rest = witness.cut
    assert set(small) == {0}
    assert set(rest) == {1, 2, 3}


def test_min_degree_block_vertex_witness():
    win = min_degree(3)
    # n=4: starving vertex 0 below available degree 3 needs one Breaker edge
    state = build(4, win, breaker_edges=[(0, 1)], maker_edges=[(1, 2)])
    witness = breaker_blocks(state)
    assert witness is not None
    assert witness.vertex == 0


def test_hamilton_cycle_block_on_degree_one():
    win = WinCondition(WinKind.HAMILTON_CYCLE)
    state = build(4, win, breaker_edges=[(0, 1), (0, 2)], maker_edges=[(1, 2)])
    witness = breaker_blocks(state)
    assert witness is not None
    assert witness.vertex == 0


def test_no_block_on_open_board():
    for kind in (WinKind.TRIANGLE, WinKind.CONNECTIVITY, WinKind.HAMILTON_PATH,
                 WinKind.HAMILTON_CYCLE):
        state = new_game(6, BiasSpec(BiasFamily.FREE, 2), WinCondition(kind))
        assert breaker_blocks(state) is None
    state = new_game(6, BiasSpec(BiasFamily.FREE, 2), min_degree(2))
    assert breaker_blocks(state) is None


def test_winning_structure_none_before_win():
    state = new_game(6, BiasSpec(BiasFamily.FREE, 2), WinCondition(WinKind.TRIANGLE))
    assert winning_structure(state) is None
