"""Auxiliary games behind the Breaker analyses: the box game and two
adversarial deletion processes over survivor values.

The deletion bounds are checked in exact arithmetic (integer dynamics,
Fraction averages); the box-game winning condition is the one float
formula, compared with an explicit relative tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from random import Random
from typing import Callable, Iterable, Optional, Sequence

BOX_CONDITION_REL_TOL = 1e-12
COUNTER_LIMIT = 16


# ---------------------------------------------------------------------------
# box game


def boxmaker_condition(p: int, q: int, m: int) -> bool:
    """Winning test for the balancing BoxMaker on q boxes of p elements.

    Float evaluation; values within 1e-12 relative of equality count as
    failing the strict inequality.
    """
    if p < 1 or q < 1 or m < 3:
        return False
    lhs = (1.0 - 2.0 / m) ** (2.0 * p / m)
    rhs = 2.0 * p / (m * q) + 1.0 / q
    return lhs - rhs > BOX_CONDITION_REL_TOL * max(1.0, abs(lhs), abs(rhs))


@dataclass(frozen=True)
class BoxGameState:
    """Boxes hold remaining element counts; deleted boxes become None."""

    boxes: tuple[Optional[int], ...]
    perimeter: int

    def live_indices(self) -> list[int]:
        return [i for i, b in enumerate(self.boxes) if b is not None]

    def zeroed(self) -> bool:
        return any(b == 0 for b in self.boxes)

    def exhausted(self) -> bool:
        return all(b is None for b in self.boxes)


def new_box_game(p: int, q: int, m: int) -> BoxGameState:
    if p < 1 or q < 1:
        raise ValueError(f"box game needs p, q >= 1, got p={p}, q={q}")
    if m < 3:
        raise ValueError(f"box game perimeter must be >= 3, got m={m}")
    return BoxGameState(boxes=(p,) * q, perimeter=m)


def balancing_targets(state: BoxGameState) -> list[int]:
    """Indices the balancing BoxMaker claims from: the fullest floor(m/2)
    live boxes, ties to the lowest index."""
    width = state.perimeter // 2
    live = state.live_indices()
    live.sort(key=lambda i: (-state.boxes[i], i))  # type: ignore[operator]
    return sorted(live[:width])


def apply_boxmaker_balancing(state: BoxGameState) -> BoxGameState:
    depth = state.perimeter // 2
    boxes = list(state.boxes)
    for i in balancing_targets(state):
        boxes[i] = max(0, boxes[i] - depth)  # type: ignore[operator]
    return replace(state, boxes=tuple(boxes))


def apply_boxbreaker_delete(state: BoxGameState, index: int) -> BoxGameState:
    if state.boxes[index] is None:
        raise ValueError(f"box {index} is already deleted")
    boxes = list(state.boxes)
    boxes[index] = None
    return replace(state, boxes=tuple(boxes))


def _balanced_multiset(counts: tuple[int, ...], m: int) -> tuple[int, ...]:
    depth = m // 2
    ordered = sorted(counts, reverse=True)
    hit = [max(0, value - depth) for value in ordered[:depth]]
    return tuple(sorted(hit + ordered[depth:]))


@lru_cache(maxsize=None)
def _boxmaker_wins_all(counts: tuple[int, ...], m: int) -> bool:
    """True if the balancing BoxMaker (to move) beats every deletion line."""
    if not counts:
        return False
    after = _balanced_multiset(counts, m)
    if after[0] == 0:
        return True
    for value in sorted(set(after)):
        child = list(after)
        child.remove(value)
        if not _boxmaker_wins_all(tuple(child), m):
            return False
    return True


def boxmaker_beats_exhaustive(p: int, q: int, m: int) -> bool:
    state = new_box_game(p, q, m)
    return _boxmaker_wins_all(tuple(sorted(b for b in state.boxes if b is not None)), m)


BoxBreakerChoice = Callable[[BoxGameState], int]


def boxbreaker_closest(state: BoxGameState) -> int:
    """Delete the box nearest completion (lowest remaining, ties low index)."""
    return min(state.live_indices(), key=lambda i: (state.boxes[i], i))  # type: ignore[return-value]


def boxbreaker_random(seed: int) -> BoxBreakerChoice:
    rng = Random(seed)

    def choose(state: BoxGameState) -> int:
        return rng.choice(state.live_indices())

    return choose


def boxbreaker_adversarial(state: BoxGameState) -> int:
    """Exhaustive deletion choice: keeps a BoxBreaker win whenever one exists."""
    live = state.live_indices()
    for i in live:
        child = apply_boxbreaker_delete(state, i)
        counts = tuple(sorted(b for b in child.boxes if b is not None))
        if not _boxmaker_wins_all(counts, state.perimeter):
            return i
    return live[0]


def boxgame_playout(p: int, q: int, m: int,
                    breaker: BoxBreakerChoice = boxbreaker_adversarial) -> str:
    """Play balancing BoxMaker vs. a BoxBreaker policy; returns the winner."""
    state = new_box_game(p, q, m)
    while True:
        state = apply_boxmaker_balancing(state)
        if state.zeroed():
            return "boxmaker"
        state = apply_boxbreaker_delete(state, breaker(state))
        if state.exhausted():
            return "boxbreaker"


# ---------------------------------------------------------------------------
# survivor deletion process: add c to one, +1 to the rest, delete the largest


@dataclass(frozen=True)
class SurvivorEntry:
    ident: int
    value: int


def survivor_step(entries: Sequence[SurvivorEntry], target_ident: int,
                  c: int) -> tuple[list[SurvivorEntry], SurvivorEntry]:
    """One adversary turn; returns (survivors, deleted entry)."""
    if len(entries) < 2:
        raise ValueError("step needs at least two survivors")
    if all(e.ident != target_ident for e in entries):
        raise ValueError(f"unknown target {target_ident}")
    bumped = [SurvivorEntry(e.ident, e.value + (c if e.ident == target_ident else 1))
              for e in entries]
    victim = max(bumped, key=lambda e: (e.value, -e.ident))
    return [e for e in bumped if e.ident != victim.ident], victim


def survivor_trace(start_values: Sequence[int], targets: Sequence[int],
                   c: int) -> dict[str, list[int]]:
    """Run a full deletion line, recording per-turn maxima and deleted values."""
    entries = [SurvivorEntry(i, v) for i, v in enumerate(start_values)]
    maxima: list[int] = []
    deleted: list[int] = []
    for target in targets:
        entries, victim = survivor_step(entries, target, c)
        deleted.append(victim.value)
        maxima.append(max(e.value for e in entries) if entries else victim.value)
    return {
        "maxima": maxima,
        "deleted": deleted,
        "final": [e.value for e in entries],
    }


@lru_cache(maxsize=None)
def _survivor_max_final(values: tuple[int, ...], c: int) -> int:
    if len(values) == 1:
        return values[0]
    best: Optional[int] = None
    for value in sorted(set(values)):
        bumped = sorted(v + 1 for v in values)
        bumped.remove(value + 1)
        bumped.append(value + c)
        bumped.sort()
        child = tuple(bumped[:-1])  # delete one instance of the maximum
        result = _survivor_max_final(child, c)
        if best is None or result > best:
            best = result
    assert best is not None
    return best


def survivor_max_excess(start_values: Sequence[int], c: int) -> Fraction:
    """Adversary-maximal final value minus the starting average, exact."""
    values = tuple(sorted(int(v) for v in start_values))
    if not values:
        raise ValueError("need at least one survivor")
    final = _survivor_max_final(values, c) if len(values) > 1 else values[0]
    return Fraction(final) - Fraction(sum(values), len(values))


def survivor_bound(k: int, c: int) -> Fraction:
    return Fraction(c + k - 2) - Fraction(c - 1, k)


# ---------------------------------------------------------------------------
# paired deletion process: values carry counters that retire at 16


@dataclass(frozen=True)
class PairedEntry:
    ident: int
    value: int
    counter: int


def paired_step(entries: Sequence[PairedEntry], target_ident: int,
                c: int) -> tuple[list[PairedEntry], Optional[PairedEntry]]:
    """One adversary turn of the countered process.

    The adversary adds c to the target and 1 to everyone else; the entry
    with the largest value (ties: larger counter, then lower id) has its
    counter bumped and is deleted at 16, otherwise pays 2c back.
    """
    if len(entries) < 2:
        raise ValueError("step needs at least two survivors")
    if all(e.ident != target_ident for e in entries):
        raise ValueError(f"unknown target {target_ident}")
    bumped = [PairedEntry(e.ident, e.value + (c if e.ident == target_ident else 1), e.counter)
              for e in entries]
    leader = max(bumped, key=lambda e: (e.value, e.counter, -e.ident))
    if leader.counter + 1 == COUNTER_LIMIT:
        return [e for e in bumped if e.ident != leader.ident], leader
    out = [PairedEntry(e.ident, e.value - 2 * c, e.counter + 1) if e.ident == leader.ident else e
           for e in bumped]
    return out, None


@lru_cache(maxsize=None)
def _paired_max_final_rel(state: tuple[tuple[int, int], ...], c: int) -> int:
    """Max final value relative to the current maximum value in ``state``.

    ``state`` is a sorted tuple of (value - max_value, counter) pairs, so
    entries are translation-normalized for memoization.
    """
    if len(state) == 1:
        return state[0][0]
    best: Optional[int] = None
    for value, counter in sorted(set(state)):
        bumped = [(v + 1, t) for v, t in state]
        bumped.remove((value + 1, counter))
        bumped.append((value + c, counter))
        leader = max(bumped, key=lambda vt: (vt[0], vt[1]))
        bumped.remove(leader)
        if leader[1] + 1 < COUNTER_LIMIT:
            bumped.append((leader[0] - 2 * c, leader[1] + 1))
        if not bumped:
            result = leader[0]
        else:
            top = max(v for v, _ in bumped)
            child = tuple(sorted((v - top, t) for v, t in bumped))
            result = top + _paired_max_final_rel(child, c)
        if best is None or result > best:
            best = result
    assert best is not None
    return best


def paired_max_excess(start: Sequence[tuple[int, int]], c: int) -> Fraction:
    """Adversary-maximal final value minus the starting value average."""
    entries = [(int(v), int(t)) for v, t in start]
    if not entries:
        raise ValueError("need at least one survivor")
    for _, t in entries:
        if not 0 <= t < COUNTER_LIMIT:
            raise ValueError(f"counters must lie in [0, {COUNTER_LIMIT})")
    mean = Fraction(sum(v for v, _ in entries), len(entries))
    if len(entries) == 1:
        return Fraction(entries[0][0]) - mean
    top = max(v for v, _ in entries)
    state = tuple(sorted((v - top, t) for v, t in entries))
    return Fraction(top + _paired_max_final_rel(state, c)) - mean


def paired_bound_coarse(k: int, c: int) -> Fraction:
    return Fraction(c + 17 * k)


def paired_bound_fine(k: int, c: int) -> Fraction:
    return Fraction(c + 17 * k - 19) + Fraction(19 - 2 * c, k + 1)
