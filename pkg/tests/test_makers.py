"""Maker strategies: scripted openings, invariants, and replay determinism."""

import random

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
    unclaimed_edges,
)
from structbias.makers import (
    ConnectivityDangerMaker,
    GreedyMaker,
    HamiltonThreeStageMaker,
    MinDegreeDangerMaker,
    RandomMaker,
    TreeGrowthMaker,
    TriangleVsCliqueMaker,
    TriangleVsMatchingMaker,
    TriangleVsStarMaker,
    lowest_closing_edge,
)
from structbias.registry import make_strategy
from structbias.strategy import StrategyBlocked, UnsupportedBoardError

TRIANGLE = WinCondition(WinKind.TRIANGLE)
CONNECT = WinCondition(WinKind.CONNECTIVITY)


def test_lowest_closing_edge():
    state = new_game(6, BiasSpec(BiasFamily.FREE, 1), TRIANGLE,
                     first=Player.MAKER)
    state = apply_maker_move(state, (0, 1))
    state = apply_breaker_move(state, [(5, 4)])
    state = apply_maker_move(state, (0, 2))
    state = apply_breaker_move(state, [(1, 2)])  # blocks the obvious closer
    state = apply_maker_move(state, (0, 3))
    state = apply_breaker_move(state, [(2, 3)])
    # open closers: (1,3) via centre 0
    assert lowest_closing_edge(state) == (1, 3)


def test_fan_opening_after_clique_block():
    # Breaker claims all of K_4 on {0,1,2,3}; the fan must start on fresh
    # vertices: lowest untouched pair is (4,5)
    state = new_game(10, BiasSpec(BiasFamily.CLIQUE, 4), TRIANGLE,
                     first=Player.BREAKER)
    state = apply_breaker_move(state, [(0, 1), (0, 2), (0, 3),
                                       (1, 2), (1, 3), (2, 3)])
    maker = TriangleVsCliqueMaker(seed=0)
    assert maker.move(state) == (4, 5)


def test_fan_extends_from_centre():
    state = new_game(10, BiasSpec(BiasFamily.CLIQUE, 4), TRIANGLE,
                     first=Player.MAKER)
    maker = TriangleVsCliqueMaker(seed=0)
    first = maker.move(state)
    assert first == (0, 1)
    state = apply_maker_move(state, first)
    state = apply_breaker_move(state, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    second = maker.move(state)
    # centre stays an endpoint of the first edge; new spoke on a clean vertex
    assert 0 in second or 1 in second
    a, b = second
    fresh = b if a in (0, 1) else a
    assert state.breaker_degree(fresh) == 0


def test_fan_closes_when_possible():
    state = new_game(10, BiasSpec(BiasFamily.CLIQUE, 4), TRIANGLE,
                     first=Player.MAKER)
    maker = TriangleVsCliqueMaker(seed=0)
    state = apply_maker_move(state, (0, 1))
    state = apply_breaker_move(state, [(4, 5), (4, 6), (5, 6)])
    state = apply_maker_move(state, (0, 2))
    state = apply_breaker_move(state, [(7, 8), (7, 9), (8, 9)])
    assert maker.move(state) == (1, 2)


def test_matching_maker_plan():
    state = new_game(10, BiasSpec(BiasFamily.MATCHING, 3), TRIANGLE,
                     first=Player.BREAKER)
    maker = TriangleVsMatchingMaker(seed=0)
    state = apply_breaker_move(state, [(0, 1), (2, 3), (4, 5)])
    m1 = maker.move(state)
    assert m1 == (0, 2)  # lowest vertex with two unclaimed incident edges
    state = apply_maker_move(state, m1)
    state = apply_breaker_move(state, [(1, 2), (3, 4), (5, 6)])
    m2 = maker.move(state)
    state = apply_maker_move(state, m2)
    assert m2 == (0, 3)  # second spoke from the same centre
    # the direct closer (2,3) is Breaker's, so no early close next turn
    state = apply_breaker_move(state, [(1, 3), (4, 6), (5, 7)])
    m3 = maker.move(state)
    state = apply_maker_move(state, m3)
    assert m3[0] == 0
    # the apex u leaves two distinct closers that share u: one matching
    # move cannot kill both
    centre = 0
    spokes = [e for e in state.maker_edges() if centre in e]
    tips = sorted(set(v for e in spokes for v in e) - {centre})
    open_pairs = [(a, b) for i, a in enumerate(tips) for b in tips[i + 1:]
                  if state.is_unclaimed((a, b))]
    assert len(open_pairs) >= 2


def test_matching_maker_needs_room():
    state = new_game(9, BiasSpec(BiasFamily.MATCHING, 3), TRIANGLE,
                     first=Player.BREAKER)
    maker = TriangleVsMatchingMaker(seed=0)
    state = apply_breaker_move(state, [(0, 1)])
    with pytest.raises(UnsupportedBoardError):
        maker.move(state)


def test_star_maker_avoids_hub_centres():
    state = new_game(10, BiasSpec(BiasFamily.STAR, 3), TRIANGLE,
                     first=Player.BREAKER)
    maker = TriangleVsStarMaker(seed=0)
    state = apply_breaker_move(state, [(9, 6), (9, 7), (9, 8)])
    m1 = maker.move(state)
    assert m1 == (0, 1)  # lowest untouched pair
    state = apply_maker_move(state, m1)
    state = apply_breaker_move(state, [(0, 2), (0, 3), (0, 4)])  # star at 0
    m2 = maker.move(state)
    state = apply_maker_move(state, m2)
    # hub must shift to the non-starred endpoint 1
    assert 1 in m2


def test_tree_growth_examples():
    # fresh board: first move is (0,1)
    state = new_game(8, BiasSpec(BiasFamily.MATCHING, 1), CONNECT,
                     first=Player.MAKER)
    maker = TreeGrowthMaker(seed=0)
    assert maker.move(state) == (0, 1)
    # the documented continuation: tree {0,1}, Breaker holds (0,2), (1,3):
    # lowest cross edge from the tree is (0,3)
    state = apply_maker_move(state, (0, 1))
    state = apply_breaker_move(state, [(0, 2)])
    state2 = apply_maker_move(state, (6, 7))  # park a second component
    state2 = apply_breaker_move(state2, [(1, 3)])
    fresh_maker = TreeGrowthMaker(seed=0)
    move = fresh_maker.move(state2)
    assert move == (0, 3)


def test_tree_growth_blocked_when_cut():
    state = new_game(4, BiasSpec(BiasFamily.FREE, 3), CONNECT,
                     first=Player.MAKER)
    state = apply_maker_move(state, (0, 1))
    state = apply_breaker_move(state, [(0, 2), (0, 3), (1, 2)])
    state = apply_maker_move(state, (2, 3))
    state = apply_breaker_move(state, [(1, 3)])
    maker = TreeGrowthMaker(seed=0)
    with pytest.raises(StrategyBlocked):
        maker.move(state)


def test_connectivity_danger_fresh_board():
    state = new_game(8, BiasSpec(BiasFamily.MATCHING, 2), CONNECT,
                     first=Player.MAKER)
    maker = ConnectivityDangerMaker(seed=0)
    # all dangers zero: argmax is vertex 0, joined to the lowest other vertex
    assert maker.move(state) == (0, 1)


def test_connectivity_danger_targets_threatened_vertex():
    state = new_game(8, BiasSpec(BiasFamily.STAR, 2), CONNECT,
                     first=Player.BREAKER)
    state = apply_breaker_move(state, [(5, 6), (5, 7)])
    maker = ConnectivityDangerMaker(seed=0)
    move = maker.move(state)
    assert 5 in move


def test_min_degree_danger_covers_exposed_vertex():
    state = new_game(8, BiasSpec(BiasFamily.FREE, 2), min_degree(2),
                     first=Player.BREAKER)
    state = apply_breaker_move(state, [(3, 5), (3, 6)])
    maker = MinDegreeDangerMaker(seed=0)
    move = maker.move(state)
    assert 3 in move


def test_hamilton_three_stage_progression():
    maker = HamiltonThreeStageMaker(seed=0, delta=0.5)
    state = new_game(8, BiasSpec(BiasFamily.FREE, 1),
                     WinCondition(WinKind.HAMILTON_CYCLE), first=Player.MAKER)
    assert maker.stage(state) == 1
    breaker_rng = random.Random(1)
    guard = 0
    while not maker_stage3_reached(maker, state):
        if state.to_move is Player.MAKER:
            state = apply_maker_move(state, maker.move(state))
        else:
            free = unclaimed_edges(state)
            state = apply_breaker_move(state, [breaker_rng.choice(free)])
        guard += 1
        assert guard < 60, "three-stage plan failed to progress"
    assert maker.stage(state) == 3


def maker_stage3_reached(maker, state):
    from structbias.wins import maker_wins

    if maker_wins(state):
        return True
    return state.to_move is Player.MAKER and maker.stage(state) == 3


def test_hamilton_maker_validates_delta():
    with pytest.raises(ValueError):
        HamiltonThreeStageMaker(seed=0, delta=1.5)


def test_random_maker_uses_per_move_rng():
    state = new_game(8, BiasSpec(BiasFamily.FREE, 1), TRIANGLE,
                     first=Player.MAKER)
    a = RandomMaker(seed=9).move(state)
    b = RandomMaker(seed=9).move(state)
    assert a == b  # same seed, same position: same proposal


def test_greedy_maker_takes_immediate_win():
    state = new_game(6, BiasSpec(BiasFamily.FREE, 1), TRIANGLE,
                     first=Player.MAKER)
    state = apply_maker_move(state, (0, 1))
    state = apply_breaker_move(state, [(3, 4)])
    state = apply_maker_move(state, (0, 2))
    state = apply_breaker_move(state, [(3, 5)])
    maker = GreedyMaker(seed=0)
    assert maker.move(state) == (1, 2)


STATEFUL_MAKERS = [
    ("maker.triangle.matching", BiasFamily.MATCHING, 3, TRIANGLE, 10),
    ("maker.triangle.star", BiasFamily.STAR, 3, TRIANGLE, 10),
    ("maker.triangle.clique", BiasFamily.CLIQUE, 4, TRIANGLE, 10),
    ("maker.connectivity.danger", BiasFamily.MATCHING, 2, CONNECT, 9),
    ("maker.ham.threestage", BiasFamily.FREE, 1,
     WinCondition(WinKind.HAMILTON_CYCLE), 8),
]


@pytest.mark.parametrize("strategy_id,family,size,win,n", STATEFUL_MAKERS)
def test_fresh_instance_reproduces_proposals(strategy_id, family, size, win, n):
    """Memory must be a function of the observed state sequence."""
    rng = random.Random(f"replay:{strategy_id}")
    live = make_strategy(strategy_id, seed=4)
    state = new_game(n, BiasSpec(family, size), win, first=Player.BREAKER)
    seen_states = []
    proposals = []
    for _ in range(6):
        free = unclaimed_edges(state)
        if not free:
            break
        if state.to_move is Player.BREAKER:
            if family is BiasFamily.MATCHING:
                move, used = [], set()
                for e in rng.sample(free, len(free)):
                    if e[0] not in used and e[1] not in used:
                        move.append(e)
                        used.update(e)
                    if len(move) == size:
                        break
            elif family is BiasFamily.STAR:
                centre = rng.randrange(n)
                incident = [e for e in free if centre in e]
                move = incident[:size] if incident else [free[0]]
            elif family is BiasFamily.CLIQUE:
                verts = rng.sample(range(n), size)
                move = [e for e in free if e[0] in verts and e[1] in verts]
                if not move:
                    move = [free[0]]
            else:
                move = rng.sample(free, min(size, len(free)))
            state = apply_breaker_move(state, move)
            continue
        seen_states.append(state)
        try:
            edge = live.move(state)
        except StrategyBlocked:
            break
        proposals.append(edge)
        state = apply_maker_move(state, edge)
    assert proposals, "no maker moves were exercised"
    replayed = make_strategy(strategy_id, seed=4)
    for observed, expected in zip(seen_states, proposals):
        assert replayed.move(observed) == expected
