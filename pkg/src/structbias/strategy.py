"""Strategy interfaces and control-flow signals.

A strategy is asked for a move on every one of its turns via move(state).
Strategies may keep instance memory, but that memory must be a function of
the call sequence: feeding the same sequence of states to a fresh instance
reproduces the same proposals.  When a strategy cannot act within its own
playbook it raises a signal instead of guessing:

* StrategyForfeit: the playbook has no move here (precondition drifted,
  opponent left the analysed line).  The caller may substitute a fallback.
* StrategyBlocked: the strategy detects its goal is already unreachable
  by its own bookkeeping (for example, the tree to grow got cut off).
"""

from __future__ import annotations

import random

from .board import Edge, GameError, GameState


class StrategySignal(GameError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class StrategyForfeit(StrategySignal):
    """No playbook move available in this position."""


class StrategyBlocked(StrategySignal):
    """The strategy's goal is unreachable per its own bookkeeping."""


class UnsupportedBoardError(GameError):
    """The board parameters violate a strategy's preconditions."""


class MakerStrategy:
    """Base class: proposes a single edge per turn."""

    id = "maker.base"

    def __init__(self, seed: int = 0):
        self.seed = seed

    def move(self, state: GameState) -> Edge:
        raise NotImplementedError

    def _rng(self, state: GameState) -> random.Random:
        return random.Random(f"{self.seed}:{len(state.history)}")


class BreakerStrategy:
    """Base class: proposes a set of edges forming one legal structure."""

    id = "breaker.base"

    def __init__(self, seed: int = 0):
        self.seed = seed

    def move(self, state: GameState) -> list[Edge]:
        raise NotImplementedError

    def _rng(self, state: GameState) -> random.Random:
        return random.Random(f"{self.seed}:{len(state.history)}")


def maker_move_number(state: GameState) -> int:
    """1-based index of the Maker move about to be played."""
    from .board import Player

    return sum(1 for r in state.history if r.player is Player.MAKER) + 1


def breaker_move_number(state: GameState) -> int:
    """1-based index of the Breaker move about to be played."""
    from .board import Player

    return sum(1 for r in state.history if r.player is Player.BREAKER) + 1
