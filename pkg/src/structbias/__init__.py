"""Maker-Breaker games where Breaker's moves must fit a structure.

The package provides the board and rule engine, win detection, strategy
implementations for both sides, an exhaustive solver for small boards,
batch experiment drivers, verification suites for the supporting counting
processes, a command line interface, and an HTTP play service.
"""

from .board import (
    BiasFamily,
    BiasSpec,
    GameError,
    GameState,
    MoveRecord,
    Player,
    WinCondition,
    WinKind,
    apply_breaker_move,
    apply_maker_move,
    decode_record,
    encode_record,
    legal_breaker_move,
    new_game,
    structure_violation,
    unclaimed_edges,
)
from .arena import GameOutcome, play_game
from .registry import STRATEGIES, get_info, make_strategy, required_first
from .solver import SolveResult, solve
from .wins import breaker_blocks, maker_wins, winning_structure

__version__ = "0.1.0"

__all__ = [
    "BiasFamily",
    "BiasSpec",
    "GameError",
    "GameOutcome",
    "GameState",
    "MoveRecord",
    "Player",
    "STRATEGIES",
    "SolveResult",
    "WinCondition",
    "WinKind",
    "apply_breaker_move",
    "apply_maker_move",
    "breaker_blocks",
    "decode_record",
    "encode_record",
    "get_info",
    "legal_breaker_move",
    "maker_wins",
    "make_strategy",
    "new_game",
    "play_game",
    "required_first",
    "solve",
    "structure_violation",
    "unclaimed_edges",
    "winning_structure",
    "__version__",
]
