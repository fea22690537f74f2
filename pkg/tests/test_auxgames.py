"""Counting processes behind the Breaker analyses, with frozen oracles."""

from fractions import Fraction

import pytest

from structbias.auxgames import (
    BoxGameState,
    PairedEntry,
    SurvivorEntry,
    apply_boxbreaker_delete,
    apply_boxmaker_balancing,
    balancing_targets,
    boxbreaker_adversarial,
    boxbreaker_closest,
    boxbreaker_random,
    boxgame_playout,
    boxmaker_beats_exhaustive,
    boxmaker_condition,
    new_box_game,
    paired_bound_coarse,
    paired_bound_fine,
    paired_max_excess,
    paired_step,
    survivor_bound,
    survivor_max_excess,
    survivor_step,
    survivor_trace,
)


# -- box game ---------------------------------------------------------------


def test_box_condition_frozen_samples():
    # hand-evaluated: p=1, q=4, m=4: (1/2)^(1/2) = 0.7071 > 1/8 + 1/4
    assert boxmaker_condition(1, 4, 4)
    # p=6, q=2, m=4: (1/2)^3 = 0.125 vs 6/8 + 1/2 = 1.25: false
    assert not boxmaker_condition(6, 2, 4)
    # large q rescues the same p, m
    assert boxmaker_condition(6, 60, 4)
    assert not boxmaker_condition(3, 3, 2)  # perimeter below 3 never wins


def test_balancing_hits_fullest_boxes():
    state = BoxGameState(boxes=(3, 5, 1, 5, None), perimeter=4)
    assert balancing_targets(state) == [1, 3]
    after = apply_boxmaker_balancing(state)
    assert after.boxes == (3, 3, 1, 3, None)


def test_box_delete_and_terminal_flags():
    state = new_box_game(2, 2, 4)
    state = apply_boxmaker_balancing(state)
    assert state.boxes == (0, 0)
    assert state.zeroed()
    state = apply_boxbreaker_delete(state, 0)
    with pytest.raises(ValueError):
        apply_boxbreaker_delete(state, 0)


def test_exhaustive_box_solver_matches_playouts():
    for p, q, m in [(1, 2, 4), (2, 3, 4), (2, 2, 6), (4, 3, 6), (3, 2, 4)]:
        expected = "boxmaker" if boxmaker_beats_exhaustive(p, q, m) else "boxbreaker"
        assert boxgame_playout(p, q, m, boxbreaker_adversarial) == expected
        if expected == "boxmaker":
            # weaker deleters cannot rescue BoxBreaker
            assert boxgame_playout(p, q, m, boxbreaker_closest) == "boxmaker"
            assert boxgame_playout(p, q, m, boxbreaker_random(5)) == "boxmaker"


def test_condition_implies_boxmaker_win_small_grid():
    for p in range(1, 5):
        for q in range(1, 6):
            for m in (4, 6):
                if boxmaker_condition(p, q, m):
                    assert boxmaker_beats_exhaustive(p, q, m), (p, q, m)


# -- survivor process ---------------------------------------------------------


def test_survivor_step_bumps_and_deletes_max():
    entries = [SurvivorEntry(0, 0), SurvivorEntry(1, 0), SurvivorEntry(2, 4)]
    survivors, victim = survivor_step(entries, target_ident=0, c=3)
    assert victim.ident == 2 and victim.value == 5
    assert [(e.ident, e.value) for e in survivors] == [(0, 3), (1, 1)]


def test_survivor_step_tie_deletes_lowest_ident():
    entries = [SurvivorEntry(0, 2), SurvivorEntry(1, 2)]
    survivors, victim = survivor_step(entries, target_ident=1, c=1)
    # both reach 3: the tie goes to the lower ident
    assert victim.ident == 0
    assert survivors[0].ident == 1


def test_survivor_trace_records_line():
    out = survivor_trace([0, 0, 0], targets=[0, 1], c=2)
    assert len(out["deleted"]) == 2
    assert len(out["final"]) == 1


def test_survivor_oracle_k2_c2():
    # frozen: start (0, 1), c=2 achieves excess exactly 3/2 = bound
    assert survivor_max_excess([0, 1], 2) == Fraction(3, 2)
    assert survivor_bound(2, 2) == Fraction(3, 2)


def test_survivor_zero_start_below_bound():
    for k in range(2, 6):
        for c in range(2, 6):
            excess = survivor_max_excess([0] * k, c)
            assert excess <= survivor_bound(k, c), (k, c)


def test_survivor_tight_start_meets_bound():
    for k in range(2, 5):
        for c in range(2, 5):
            start = [0] * (k - 1) + [c - 1]
            assert survivor_max_excess(start, c) == survivor_bound(k, c), (k, c)


def test_survivor_single_entry():
    assert survivor_max_excess([7], 3) == 0


# -- paired process -----------------------------------------------------------


def test_paired_step_charges_leader():
    entries = [PairedEntry(0, 0, 0), PairedEntry(1, 5, 0)]
    out, deleted = paired_step(entries, target_ident=0, c=3)
    assert deleted is None
    # leader (ident 1, value 6) pays 2c = 6 and bumps its counter
    lead = next(e for e in out if e.ident == 1)
    assert lead.value == 0 and lead.counter == 1


def test_paired_step_retires_at_counter_limit():
    entries = [PairedEntry(0, 0, 15), PairedEntry(1, -10, 0)]
    out, deleted = paired_step(entries, target_ident=0, c=3)
    assert deleted is not None and deleted.ident == 0
    assert [e.ident for e in out] == [1]


def test_paired_oracle_within_bounds():
    for k in (2, 3):
        for c in range(k, 7):
            excess = paired_max_excess([(0, 0)] * k, c)
            assert excess <= paired_bound_fine(k, c), (k, c)
            assert excess <= paired_bound_coarse(k, c), (k, c)
    assert paired_bound_fine(2, 2) == Fraction(22) - Fraction(0)
    assert paired_bound_coarse(2, 2) == 36


def test_paired_counter_validation():
    with pytest.raises(ValueError):
        paired_max_excess([(0, 16)], 2)
