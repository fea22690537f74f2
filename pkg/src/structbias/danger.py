"""Danger bookkeeping for the degree-building and connectivity strategies.

A ledger tracks, per vertex, how threatened it is.  Two modes exist:

* COMPONENT: danger is Breaker's degree while the vertex sits in a small
  Maker component (size below n - 2b) and has not been dealt with yet.
  On every Maker half-move the current maximum-danger vertex is marked
  dealt with (deactivated) before the edge is applied.
* DEGREE: danger is Breaker's degree minus 2b times Maker's degree,
  while Maker's degree is still below the target; no deactivation.

The ledger is maintained incrementally from the game history and must
always agree with a from-scratch recomputation; tests enforce that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .board import GameState, Player

DEGREE_TARGET_DEFAULT = 16


class DangerMode(Enum):
    COMPONENT = "component"
    DEGREE = "degree"


@dataclass
class DangerLedger:
    mode: DangerMode
    n: int
    bias_size: int
    degree_target: int = DEGREE_TARGET_DEFAULT
    maker_deg: list[int] = field(default_factory=list)
    breaker_deg: list[int] = field(default_factory=list)
    comp: list[int] = field(default_factory=list)
    comp_size: list[int] = field(default_factory=list)
    deactivated: set[int] = field(default_factory=set)
    deactivation_order: list[int] = field(default_factory=list)
    synced: int = 0

    def __post_init__(self) -> None:
        if not self.maker_deg:
            self.maker_deg = [0] * self.n
            self.breaker_deg = [0] * self.n
            self.comp = list(range(self.n))
            self.comp_size = [1] * self.n

    @property
    def component_threshold(self) -> int:
        return self.n - 2 * self.bias_size

    def active(self, v: int) -> bool:
        if self.mode is DangerMode.DEGREE:
            return self.maker_deg[v] < self.degree_target
        if v in self.deactivated:
            return False
        return self.comp_size[self.comp[v]] < self.component_threshold

    def danger(self, v: int) -> int:
        if not self.active(v):
            return 0
        if self.mode is DangerMode.DEGREE:
            return self.breaker_deg[v] - 2 * self.bias_size * self.maker_deg[v]
        return self.breaker_deg[v]

    def dangers(self) -> list[int]:
        return [self.danger(v) for v in range(self.n)]

    def argmax_danger(self) -> int:
        best = 0
        best_value = self.danger(0)
        for v in range(1, self.n):
            value = self.danger(v)
            if value > best_value:
                best, best_value = v, value
        return best

    def sync(self, state: GameState) -> None:
        """Apply history records not yet folded into the ledger."""
        history = state.history
        while self.synced < len(history):
            record = history[self.synced]
            if record.player is Player.BREAKER:
                for u, v in record.edges:
                    self.breaker_deg[u] += 1
                    self.breaker_deg[v] += 1
            else:
                if self.mode is DangerMode.COMPONENT:
                    target = self.argmax_danger()
                    self.deactivated.add(target)
                    self.deactivation_order.append(target)
                for u, v in record.edges:
                    self.maker_deg[u] += 1
                    self.maker_deg[v] += 1
                    self._merge(u, v)
            self.synced += 1

    def _merge(self, u: int, v: int) -> None:
        a, b = self.comp[u], self.comp[v]
        if a == b:
            return
        keep, drop = (a, b) if a < b else (b, a)
        merged = self.comp_size[a] + self.comp_size[b]
        for i in range(self.n):
            if self.comp[i] == drop:
                self.comp[i] = keep
        self.comp_size[keep] = merged
        self.comp_size[drop] = 0

    def snapshot(self) -> tuple[int, ...]:
        return tuple(self.dangers())

    @staticmethod
    def from_state(state: GameState, mode: DangerMode,
                   degree_target: int = DEGREE_TARGET_DEFAULT) -> "DangerLedger":
        """From-scratch recomputation: replay the full history."""
        ledger = DangerLedger(mode=mode, n=state.n, bias_size=state.bias.size,
                              degree_target=degree_target)
        ledger.sync(state)
        return ledger


def consistent_with_scratch(ledger: DangerLedger, state: GameState) -> Optional[str]:
    """Mismatch description between an incrementally kept ledger and a fresh
    replay of the same position, or None when they agree."""
    fresh = DangerLedger.from_state(state, ledger.mode, ledger.degree_target)
    if ledger.snapshot() != fresh.snapshot():
        return f"danger values differ: {ledger.snapshot()} vs {fresh.snapshot()}"
    if ledger.deactivated != fresh.deactivated:
        return f"deactivated sets differ: {ledger.deactivated} vs {fresh.deactivated}"
    actives = [ledger.active(v) for v in range(ledger.n)]
    fresh_actives = [fresh.active(v) for v in range(fresh.n)]
    if actives != fresh_actives:
        return f"activity flags differ: {actives} vs {fresh_actives}"
    return None
