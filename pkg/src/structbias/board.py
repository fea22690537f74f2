"""Board model for structure-biased Maker-Breaker games on complete graphs.

The board is the edge set of K_n.  Maker claims one edge per turn; Breaker
claims a whole edge set per turn, constrained to fit a per-turn structure
(a clique span, a matching, a star, or a free edge budget).  States are
immutable values: applying a move returns a fresh state, so histories can
be replayed, diffed, and hashed safely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence

Edge = tuple[int, int]

RECORD_VERSION = 1


class GameError(Exception):
    """Base class for board and rule violations."""


class InvalidBoardError(GameError):
    """Board parameters are unusable (e.g. n < 3, bad bias size)."""


class WrongTurnError(GameError):
    """A move was submitted for the player not on turn."""


class IllegalMoveError(GameError):
    """A move violates claiming rules."""


class EdgeClaimedError(IllegalMoveError):
    """An edge in the move is already owned."""


class IllegalStructureError(IllegalMoveError):
    """A Breaker move does not fit the bias structure."""


class RecordParseError(GameError):
    """A serialized game record is malformed."""


class IllegalReplayError(GameError):
    """A serialized game record contains an illegal move."""

    def __init__(self, index: int, message: str) -> None:
        super().__init__(f"move {index}: {message}")
        self.index = index


class ExactCapError(GameError):
    """An exact computation was requested beyond its configured size cap."""


class Player(Enum):
    MAKER = "M"
    BREAKER = "B"

    @property
    def opponent(self) -> "Player":
        return Player.BREAKER if self is Player.MAKER else Player.MAKER


class BiasFamily(Enum):
    CLIQUE = "clique"
    MATCHING = "matching"
    STAR = "star"
    FREE = "free"


@dataclass(frozen=True)
class BiasSpec:
    """Per-turn structure constraint for Breaker.

    For CLIQUE the size is the clique order m (edges must span at most m
    vertices); for the other families it is the per-turn edge budget.
    """

    family: BiasFamily
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise InvalidBoardError(f"bias size must be >= 1, got {self.size}")
        if self.family is BiasFamily.CLIQUE and self.size < 2:
            raise InvalidBoardError("clique bias needs size >= 2")


class WinKind(Enum):
    TRIANGLE = "triangle"
    CONNECTIVITY = "connectivity"
    HAMILTON_PATH = "hamilton-path"
    HAMILTON_CYCLE = "hamilton-cycle"
    MIN_DEGREE = "min-degree"


@dataclass(frozen=True)
class WinCondition:
    """Maker's goal: a target property of Maker's graph."""

    kind: WinKind
    degree: int = 0

    def __post_init__(self) -> None:
        if self.kind is WinKind.MIN_DEGREE and self.degree < 1:
            raise InvalidBoardError("min-degree goal needs degree >= 1")

    def to_string(self) -> str:
        if self.kind is WinKind.MIN_DEGREE:
            return f"min-degree-{self.degree}"
        return self.kind.value

    @staticmethod
    def from_string(text: str) -> "WinCondition":
        if text.startswith("min-degree-"):
            try:
                return WinCondition(WinKind.MIN_DEGREE, int(text[len("min-degree-"):]))
            except ValueError as exc:
                raise RecordParseError(f"bad win condition {text!r}") from exc
        for kind in WinKind:
            if kind is not WinKind.MIN_DEGREE and kind.value == text:
                return WinCondition(kind)
        raise RecordParseError(f"unknown win condition {text!r}")


TRIANGLE = WinCondition(WinKind.TRIANGLE)
CONNECTIVITY = WinCondition(WinKind.CONNECTIVITY)
HAMILTON_PATH = WinCondition(WinKind.HAMILTON_PATH)
HAMILTON_CYCLE = WinCondition(WinKind.HAMILTON_CYCLE)


def min_degree(d: int) -> WinCondition:
    return WinCondition(WinKind.MIN_DEGREE, d)


def normalize_edge(edge: Sequence[int]) -> Edge:
    if len(edge) != 2:
        raise IllegalMoveError(f"edge must have two endpoints, got {edge!r}")
    u, v = int(edge[0]), int(edge[1])
    if u == v:
        raise IllegalMoveError(f"loop edge ({u},{v}) is not on the board")
    return (u, v) if u < v else (v, u)


def edge_index(n: int, edge: Edge) -> int:
    """Position of a canonical edge in the lexicographic edge order of K_n."""
    u, v = edge
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def all_edges(n: int) -> Iterator[Edge]:
    for u in range(n):
        for v in range(u + 1, n):
            yield (u, v)


@dataclass(frozen=True)
class MoveRecord:
    player: Player
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class GameState:
    """Immutable game position plus derived adjacency caches.

    ``ownership`` holds one byte per edge in lexicographic order: 0 free,
    1 Maker, 2 Breaker.  The cached adjacency bitmasks, degrees, and Maker
    component labels are pure functions of the core fields and are excluded
    from equality.
    """

    n: int
    bias: BiasSpec
    win: WinCondition
    first: Player
    to_move: Player
    ownership: bytes
    history: tuple[MoveRecord, ...]
    maker_adj: tuple[int, ...] = field(compare=False, repr=False)
    breaker_adj: tuple[int, ...] = field(compare=False, repr=False)
    maker_comp: tuple[int, ...] = field(compare=False, repr=False)

    @property
    def num_edges(self) -> int:
        return self.n * (self.n - 1) // 2

    def owner(self, edge: Sequence[int]) -> Optional[Player]:
        code = self.ownership[edge_index(self.n, normalize_edge(edge))]
        if code == 0:
            return None
        return Player.MAKER if code == 1 else Player.BREAKER

    def is_unclaimed(self, edge: Sequence[int]) -> bool:
        return self.ownership[edge_index(self.n, normalize_edge(edge))] == 0

    def maker_degree(self, v: int) -> int:
        return bin(self.maker_adj[v]).count("1")

    def breaker_degree(self, v: int) -> int:
        return bin(self.breaker_adj[v]).count("1")

    def maker_edges(self) -> list[Edge]:
        return [e for e in all_edges(self.n) if self.ownership[edge_index(self.n, e)] == 1]

    def breaker_edges(self) -> list[Edge]:
        return [e for e in all_edges(self.n) if self.ownership[edge_index(self.n, e)] == 2]

    def maker_component_sizes(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for label in self.maker_comp:
            sizes[label] = sizes.get(label, 0) + 1
        return sizes


def new_game(
    n: int,
    bias: BiasSpec,
    win: WinCondition,
    first: Player = Player.BREAKER,
) -> GameState:
    if n < 3:
        raise InvalidBoardError(f"board needs n >= 3, got n={n}")
    num_edges = n * (n - 1) // 2
    return GameState(
        n=n,
        bias=bias,
        win=win,
        first=first,
        to_move=first,
        ownership=bytes(num_edges),
        history=(),
        maker_adj=(0,) * n,
        breaker_adj=(0,) * n,
        maker_comp=tuple(range(n)),
    )


def unclaimed_edges(state: GameState) -> list[Edge]:
    own = state.ownership
    n = state.n
    return [e for e in all_edges(n) if own[edge_index(n, e)] == 0]


def _validate_on_board(state: GameState, edge: Edge) -> None:
    if not (0 <= edge[0] < state.n and 0 <= edge[1] < state.n):
        raise IllegalMoveError(f"edge {edge} is off the board (n={state.n})")


def _normalize_move(state: GameState, edges: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    out: list[Edge] = []
    for raw in edges:
        e = normalize_edge(raw)
        _validate_on_board(state, e)
        out.append(e)
    out.sort()
    for a, b in zip(out, out[1:]):
        if a == b:
            raise IllegalMoveError(f"duplicate edge {a} in move")
    return tuple(out)


def structure_violation(bias: BiasSpec, edges: Sequence[Edge]) -> Optional[str]:
    """Reason the edge set does not fit the bias structure, or None if it fits."""
    if bias.family is BiasFamily.CLIQUE:
        span = {v for e in edges for v in e}
        if len(span) > bias.size:
            return f"edges span {len(span)} vertices, clique allows {bias.size}"
        return None
    if len(edges) > bias.size:
        return f"{len(edges)} edges exceed budget {bias.size}"
    if bias.family is BiasFamily.MATCHING:
        seen: set[int] = set()
        for e in edges:
            if e[0] in seen or e[1] in seen:
                return f"edges are not vertex-disjoint at {e}"
            seen.update(e)
    elif bias.family is BiasFamily.STAR and len(edges) > 1:
        common = set(edges[0])
        for e in edges[1:]:
            common &= set(e)
        if not common:
            return "edges share no common center"
    return None


def breaker_move_violation(state: GameState, edges: Iterable[Sequence[int]]) -> Optional[str]:
    """Reason a Breaker move is illegal in this position, or None if legal."""
    try:
        move = _normalize_move(state, edges)
    except IllegalMoveError as exc:
        return str(exc)
    has_free = any(code == 0 for code in state.ownership)
    if not move:
        return "empty move while unclaimed edges remain" if has_free else None
    for e in move:
        if state.ownership[edge_index(state.n, e)] != 0:
            return f"edge {e} is already claimed"
    return structure_violation(state.bias, move)


def legal_breaker_move(state: GameState, edges: Iterable[Sequence[int]]) -> bool:
    return breaker_move_violation(state, edges) is None


def _merge_components(comp: list[int], u: int, v: int) -> None:
    a, b = comp[u], comp[v]
    if a == b:
        return
    keep, drop = (a, b) if a < b else (b, a)
    for i, label in enumerate(comp):
        if label == drop:
            comp[i] = keep


def apply_maker_move(state: GameState, edge: Sequence[int]) -> GameState:
    if state.to_move is not Player.MAKER:
        raise WrongTurnError("it is Breaker's turn")
    e = normalize_edge(edge)
    _validate_on_board(state, e)
    idx = edge_index(state.n, e)
    if state.ownership[idx] != 0:
        raise EdgeClaimedError(f"edge {e} is already claimed")

    ownership = bytearray(state.ownership)
    ownership[idx] = 1
    maker_adj = list(state.maker_adj)
    u, v = e
    maker_adj[u] |= 1 << v
    maker_adj[v] |= 1 << u
    comp = list(state.maker_comp)
    _merge_components(comp, u, v)
    record = MoveRecord(Player.MAKER, (e,))
    return replace(
        state,
        to_move=Player.BREAKER,
        ownership=bytes(ownership),
        history=state.history + (record,),
        maker_adj=tuple(maker_adj),
        maker_comp=tuple(comp),
    )


def apply_breaker_move(state: GameState, edges: Iterable[Sequence[int]]) -> GameState:
    if state.to_move is not Player.BREAKER:
        raise WrongTurnError("it is Maker's turn")
    move = _normalize_move(state, edges)
    has_free = any(code == 0 for code in state.ownership)
    if not move and has_free:
        raise IllegalStructureError("empty move while unclaimed edges remain")
    ownership = bytearray(state.ownership)
    for e in move:
        idx = edge_index(state.n, e)
        if ownership[idx] != 0:
            raise EdgeClaimedError(f"edge {e} is already claimed")
        ownership[idx] = 2
    reason = structure_violation(state.bias, move)
    if reason is not None:
        raise IllegalStructureError(reason)
    breaker_adj = list(state.breaker_adj)
    for u, v in move:
        breaker_adj[u] |= 1 << v
        breaker_adj[v] |= 1 << u
    record = MoveRecord(Player.BREAKER, move)
    return replace(
        state,
        to_move=Player.MAKER,
        ownership=bytes(ownership),
        history=state.history + (record,),
        breaker_adj=tuple(breaker_adj),
    )


def apply_move(state: GameState, record: MoveRecord) -> GameState:
    if record.player is Player.MAKER:
        if len(record.edges) != 1:
            raise IllegalMoveError("Maker claims exactly one edge per turn")
        return apply_maker_move(state, record.edges[0])
    return apply_breaker_move(state, record.edges)


def encode_record(state: GameState) -> str:
    """Serialize a game as one line of JSON (bit-exact round trip)."""
    payload = {
        "version": RECORD_VERSION,
        "n": state.n,
        "bias": {"family": state.bias.family.value, "size": state.bias.size},
        "win": state.win.to_string(),
        "first": state.first.value,
        "moves": [
            {"p": rec.player.value, "e": [[u, v] for u, v in rec.edges]}
            for rec in state.history
        ],
    }
    return json.dumps(payload, separators=(",", ":")) + "\n"


def decode_record(text: str) -> GameState:
    """Parse a serialized game and replay it, validating every move."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RecordParseError(f"bad JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise RecordParseError("record must be a JSON object")
    try:
        version = payload["version"]
        n = payload["n"]
        bias_raw = payload["bias"]
        win_raw = payload["win"]
        first_raw = payload["first"]
        moves_raw = payload["moves"]
    except (KeyError, TypeError) as exc:
        raise RecordParseError(f"missing field: {exc}") from exc
    if version != RECORD_VERSION:
        raise RecordParseError(f"unsupported record version {version!r}")
    try:
        family = BiasFamily(bias_raw["family"])
        bias = BiasSpec(family, int(bias_raw["size"]))
        win = WinCondition.from_string(win_raw)
        first = Player(first_raw)
    except (ValueError, KeyError, TypeError, InvalidBoardError) as exc:
        raise RecordParseError(f"bad header: {exc}") from exc
    if not isinstance(moves_raw, list):
        raise RecordParseError("moves must be a list")

    try:
        state = new_game(int(n), bias, win, first)
    except InvalidBoardError as exc:
        raise RecordParseError(str(exc)) from exc
    for i, item in enumerate(moves_raw):
        try:
            player = Player(item["p"])
            edges = [normalize_edge(e) for e in item["e"]]
        except (ValueError, KeyError, TypeError, IllegalMoveError) as exc:
            raise RecordParseError(f"move {i}: {exc}") from exc
        if player is not state.to_move:
            raise IllegalReplayError(i, f"{player.value} moved out of turn")
        try:
            if player is Player.MAKER:
                if len(edges) != 1:
                    raise IllegalMoveError("Maker claims exactly one edge per turn")
                state = apply_maker_move(state, edges[0])
            else:
                state = apply_breaker_move(state, edges)
        except GameError as exc:
            raise IllegalReplayError(i, str(exc)) from exc
    return state
