"""Strategy registry: string ids, factories, and compatibility metadata."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .board import BiasFamily, BiasSpec, Player, WinCondition, WinKind
from . import breakers, makers

ALL_FAMILIES = frozenset(BiasFamily)
ALL_WINS = frozenset(WinKind)
SPANNING_WINS = frozenset({WinKind.CONNECTIVITY, WinKind.HAMILTON_PATH,
                           WinKind.HAMILTON_CYCLE})


@dataclass(frozen=True)
class StrategyInfo:
    id: str
    role: str
    factory: Callable
    families: frozenset
    wins: frozenset
    first: Optional[Player]
    summary: str

    def compatible(self, bias: BiasSpec, win: WinCondition) -> bool:
        return bias.family in self.families and win.kind in self.wins


def _info(cls, role: str, families, wins, first: Optional[Player],
          summary: str) -> StrategyInfo:
    return StrategyInfo(id=cls.id, role=role, factory=cls,
                        families=frozenset(families), wins=frozenset(wins),
                        first=first, summary=summary)


STRATEGIES: dict[str, StrategyInfo] = {
    info.id: info for info in [
        _info(makers.TriangleVsCliqueMaker, "maker",
              {BiasFamily.CLIQUE}, {WinKind.TRIANGLE}, Player.BREAKER,
              "fan of untouched vertices, close the first open pair"),
        _info(makers.TriangleVsMatchingMaker, "maker",
              {BiasFamily.MATCHING}, {WinKind.TRIANGLE}, Player.BREAKER,
              "double threat in four moves"),
        _info(makers.TriangleVsStarMaker, "maker",
              {BiasFamily.STAR}, {WinKind.TRIANGLE}, Player.BREAKER,
              "hub away from the reply star, keep a closing pair open"),
        _info(makers.TreeGrowthMaker, "maker",
              {BiasFamily.MATCHING}, {WinKind.CONNECTIVITY}, Player.MAKER,
              "grow one spanning tree, lowest leaving edge first"),
        _info(makers.ConnectivityDangerMaker, "maker",
              {BiasFamily.MATCHING, BiasFamily.STAR, BiasFamily.FREE},
              {WinKind.CONNECTIVITY}, Player.BREAKER,
              "join the highest-danger component each turn"),
        _info(makers.MinDegreeDangerMaker, "maker",
              {BiasFamily.MATCHING, BiasFamily.STAR, BiasFamily.FREE},
              {WinKind.MIN_DEGREE}, Player.BREAKER,
              "random open edge at the most endangered vertex"),
        _info(makers.HamiltonThreeStageMaker, "maker",
              {BiasFamily.MATCHING, BiasFamily.STAR, BiasFamily.FREE},
              {WinKind.HAMILTON_CYCLE, WinKind.HAMILTON_PATH}, Player.BREAKER,
              "build degrees, join components, then claim boosters"),
        _info(makers.RandomMaker, "maker", ALL_FAMILIES, ALL_WINS, None,
              "uniform random open edge"),
        _info(makers.GreedyMaker, "maker", ALL_FAMILIES, ALL_WINS, None,
              "win now or make the most threatening move"),
        _info(breakers.RandomBreaker, "breaker", ALL_FAMILIES, ALL_WINS, None,
              "random structure of the session family"),
        _info(breakers.GreedyBreaker, "breaker", ALL_FAMILIES, ALL_WINS, None,
              "cover the most immediate threats the shape allows"),
        _info(breakers.CliqueTriangleBreaker, "breaker",
              {BiasFamily.CLIQUE}, {WinKind.TRIANGLE}, Player.BREAKER,
              "kill closers, then double-star the last Maker edge"),
        _info(breakers.CliqueConnectivityBreaker, "breaker",
              {BiasFamily.CLIQUE}, SPANNING_WINS, Player.MAKER,
              "group untouched vertices, then squeeze survivors"),
        _info(breakers.MatchingFactorizationBreaker, "breaker",
              {BiasFamily.MATCHING}, SPANNING_WINS, Player.BREAKER,
              "claim the board factor by factor"),
        _info(breakers.StarConnectivityBreaker, "breaker",
              {BiasFamily.STAR}, SPANNING_WINS, Player.BREAKER,
              "probe every vertex with anchor stars, isolate the quiet one"),
    ]
}


class UnknownStrategyError(KeyError):
    pass


def get_info(strategy_id: str) -> StrategyInfo:
    try:
        return STRATEGIES[strategy_id]
    except KeyError:
        raise UnknownStrategyError(strategy_id) from None


def make_strategy(strategy_id: str, seed: int = 0, **config):
    return get_info(strategy_id).factory(seed=seed, **config)


def required_first(maker_id: str, breaker_id: str) -> Player:
    """First mover implied by the strategies' requirements.

    A strategy analysed under a particular move order pins that order;
    if both pin conflicting orders the pairing is rejected.  Unpinned
    pairings default to Breaker moving first.
    """
    m_first = get_info(maker_id).first
    b_first = get_info(breaker_id).first
    if m_first is not None and b_first is not None and m_first != b_first:
        raise ValueError(
            f"{maker_id} and {breaker_id} require different first movers")
    if m_first is not None:
        return m_first
    if b_first is not None:
        return b_first
    return Player.BREAKER
