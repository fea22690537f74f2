"""Exact solver: frozen outcomes, memo soundness, move enumeration."""

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
    legal_breaker_move,
    min_degree,
    new_game,
    unclaimed_edges,
)
from structbias.solver import (
    SolverBudgetError,
    breaker_move_candidates,
    maker_move_candidates,
    solve,
)

TRIANGLE = WinCondition(WinKind.TRIANGLE)
CONNECT = WinCondition(WinKind.CONNECTIVITY)


def test_k4_triangle_single_bias_is_breaker_win():
    state = new_game(4, BiasSpec(BiasFamily.FREE, 1), TRIANGLE,
                     first=Player.BREAKER)
    assert solve(state).winner is Player.BREAKER


def test_k5_triangle_single_bias_is_maker_win():
    state = new_game(5, BiasSpec(BiasFamily.FREE, 1), TRIANGLE,
                     first=Player.BREAKER)
    result = solve(state)
    assert result.winner is Player.MAKER
    assert result.nodes > 0


def test_maker_first_k4_triangle():
    # moving first on K_4 is still not enough against a b=1 Breaker
    state = new_game(4, BiasSpec(BiasFamily.FREE, 1), TRIANGLE,
                     first=Player.MAKER)
    assert solve(state).winner is Player.BREAKER


def test_principal_variation_replays_to_the_winner():
    state = new_game(5, BiasSpec(BiasFamily.FREE, 1), TRIANGLE,
                     first=Player.BREAKER)
    result = solve(state)
    assert result.pv, "expected a principal variation"
    from structbias.wins import maker_wins

    cur = state
    for role, edges in result.pv:
        if role == "M":
            cur = apply_maker_move(cur, edges[0])
        else:
            cur = apply_breaker_move(cur, list(edges))
    assert maker_wins(cur) == (result.winner is Player.MAKER)


TINY_CONFIGS = [
    (4, BiasFamily.FREE, 1, TRIANGLE),
    (4, BiasFamily.FREE, 2, TRIANGLE),
    (4, BiasFamily.MATCHING, 2, TRIANGLE),
    (4, BiasFamily.STAR, 2, TRIANGLE),
    (4, BiasFamily.CLIQUE, 2, TRIANGLE),
    (4, BiasFamily.MATCHING, 1, CONNECT),
    (4, BiasFamily.STAR, 2, CONNECT),
    (4, BiasFamily.FREE, 1, min_degree(1)),
]


@pytest.mark.parametrize("n,family,size,win", TINY_CONFIGS)
@pytest.mark.parametrize("first", [Player.MAKER, Player.BREAKER])
def test_memoized_matches_unmemoized(n, family, size, win, first):
    state = new_game(n, BiasSpec(family, size), win, first=first)
    memo = solve(state, memoized=True, with_pv=False)
    plain = solve(state, memoized=False, with_pv=False)
    assert memo.winner is plain.winner
    assert memo.nodes <= plain.nodes


def test_maximal_matches_full_enumeration_outcomes():
    # the maximal-move solver must agree with the every-legal-move solver
    for n, family, size, win in TINY_CONFIGS[:5]:
        state = new_game(n, BiasSpec(family, size), win, first=Player.BREAKER)
        fast = solve(state, full=False, with_pv=False)
        slow = solve(state, full=True, with_pv=False)
        assert fast.winner is slow.winner, (family, size)


def test_breaker_candidates_are_legal_and_maximal():
    rng = random.Random(5)
    for family, size in [(BiasFamily.FREE, 2), (BiasFamily.MATCHING, 2),
                         (BiasFamily.STAR, 2), (BiasFamily.CLIQUE, 3)]:
        state = new_game(5, BiasSpec(family, size), TRIANGLE,
                         first=Player.MAKER)
        state = apply_maker_move(state, rng.choice(unclaimed_edges(state)))
        moves = list(breaker_move_candidates(state))
        assert moves
        for move in moves:
            assert legal_breaker_move(state, list(move)), (family, move)
        # maximality: no enumerated move is a strict subset of another
        sets = [frozenset(m) for m in moves]
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                if i != j:
                    assert not (a < b), (family, a, b)


def test_full_enumeration_is_superset_of_maximal():
    state = new_game(4, BiasSpec(BiasFamily.MATCHING, 2), TRIANGLE,
                     first=Player.MAKER)
    state = apply_maker_move(state, (0, 1))
    maximal = {frozenset(m) for m in breaker_move_candidates(state)}
    everything = {frozenset(m) for m in breaker_move_candidates(state, full=True)}
    assert maximal <= everything
    assert len(everything) > len(maximal)


def test_maker_candidates_put_closers_first():
    state = new_game(5, BiasSpec(BiasFamily.FREE, 1), TRIANGLE,
                     first=Player.MAKER)
    state = apply_maker_move(state, (0, 1))
    state = apply_breaker_move(state, [(3, 4)])
    state = apply_maker_move(state, (0, 2))
    state = apply_breaker_move(state, [(2, 4)])
    candidates = maker_move_candidates(state)
    assert candidates[0] == (1, 2)


def test_node_budget_aborts():
    state = new_game(6, BiasSpec(BiasFamily.FREE, 1), TRIANGLE,
                     first=Player.BREAKER)
    with pytest.raises(SolverBudgetError):
        solve(state, node_budget=10, with_pv=False)


def test_solved_terminal_positions_short_circuit():
    state = new_game(4, BiasSpec(BiasFamily.FREE, 2), TRIANGLE,
                     first=Player.MAKER)
    state = apply_maker_move(state, (0, 1))
    state = apply_breaker_move(state, [(2, 3), (0, 3)])
    state = apply_maker_move(state, (0, 2))
    state = apply_breaker_move(state, [(1, 3), (1, 2)])
    # triangle is impossible: every completion edge is Breaker's
    result = solve(state)
    assert result.winner is Player.BREAKER
    assert result.nodes == 0
