"""Batch harness: matches, threshold scans, and verification suites.

Configs are declarative TOML.  Bias sizes may be given as a tiny
expression over n (literals, + - * /, floor, ceil, sqrt, parentheses,
and implicit multiplication as in "2n"); nothing else is evaluated.
Output rows are plain dicts written as CSV behind a versioned header
comment; identical config and seeds produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool
from typing import Iterable, Optional

try:
    import tomllib
except ImportError:
    import tomli as tomllib

from .arena import play_game
from .auxgames import (
    boxmaker_beats_exhaustive,
    boxmaker_condition,
    paired_bound_coarse,
    paired_bound_fine,
    paired_max_excess,
    survivor_bound,
    survivor_max_excess,
)
from .board import BiasFamily, BiasSpec, Player, WinCondition, encode_record
from .graphs import (
    Graph,
    boosters,
    connected_components,
    has_hamilton_cycle,
    is_connected,
    max_expansion_k,
)
from .registry import get_info, required_first
from .wins import maker_graph

CSV_VERSION_LINE = "# structbias-rows v1"
CSV_FIELDS = ["config_index", "n", "family", "size", "win", "maker",
              "breaker", "first", "seed", "winner", "reason",
              "maker_moves", "breaker_moves", "flags", "record"]


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Bias-size expression grammar


def _tokenize(text: str) -> list[str]:
    text = (text.replace("−", "-").replace("·", "*")
            .replace("×", "*"))
    tokens: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/()":
            tokens.append(ch)
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            while j < len(text) and (text[j].isdigit() or text[j] == "."):
                j += 1
            tokens.append(text[i:j])
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            tokens.append(text[i:j])
            i = j
            continue
        raise ConfigError(f"unexpected character {ch!r} in size rule")
    return tokens


_FUNCS = {"floor": math.floor, "ceil": math.ceil, "sqrt": math.sqrt}


class _Parser:
    def __init__(self, tokens: list[str], n: int):
        self.tokens = tokens
        self.pos = 0
        self.n = n

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        token = self.peek()
        if token is None:
            raise ConfigError("size rule ended unexpectedly")
        self.pos += 1
        return token

    def parse(self) -> float:
        value = self.expr()
        if self.peek() is not None:
            raise ConfigError(f"trailing tokens in size rule: {self.peek()!r}")
        return value

    def expr(self) -> float:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> float:
        value = self.factor()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                op = self.take()
                rhs = self.factor()
                if op == "/":
                    if rhs == 0:
                        raise ConfigError("division by zero in size rule")
                    value = value / rhs
                else:
                    value = value * rhs
            elif nxt == "n" or (nxt is not None and nxt[0].isalpha()) or nxt == "(":
                value = value * self.factor()
            else:
                return value

    def factor(self) -> float:
        token = self.take()
        if token == "-":
            return -self.factor()
        if token == "(":
            value = self.expr()
            if self.take() != ")":
                raise ConfigError("unbalanced parentheses in size rule")
            return value
        if token == "n":
            return float(self.n)
        if token in _FUNCS:
            if self.take() != "(":
                raise ConfigError(f"{token} must be called with parentheses")
            value = self.expr()
            if self.take() != ")":
                raise ConfigError("unbalanced parentheses in size rule")
            return float(_FUNCS[token](value))
        try:
            return float(token)
        except ValueError:
            raise ConfigError(f"unknown token {token!r} in size rule") from None


def eval_size_rule(rule, n: int) -> int:
    """Evaluate a bias-size rule at board size n, requiring an integer."""
    if isinstance(rule, int):
        return rule
    if isinstance(rule, float):
        value = rule
    else:
        value = _Parser(_tokenize(str(rule)), n).parse()
    rounded = round(value)
    if abs(value - rounded) > 1e-9:
        raise ConfigError(f"size rule {rule!r} is not integral at n={n}: {value}")
    if rounded < 1:
        raise ConfigError(f"size rule {rule!r} gives {rounded} < 1 at n={n}")
    return int(rounded)


# ---------------------------------------------------------------------------
# Match configuration


@dataclass
class MatchConfig:
    n_values: list[int]
    family: BiasFamily
    size_rule: object
    win: WinCondition
    maker: str
    breaker: str
    seeds: list[int]
    first: Optional[Player] = None
    exact_cap: int = 16
    maker_config: dict = field(default_factory=dict)
    breaker_config: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not self.n_values:
            raise ConfigError("empty n range")
        if not self.seeds:
            raise ConfigError("no seeds configured")
        maker_info = get_info(self.maker)
        breaker_info = get_info(self.breaker)
        if maker_info.role != "maker":
            raise ConfigError(f"{self.maker} is not a maker strategy")
        if breaker_info.role != "breaker":
            raise ConfigError(f"{self.breaker} is not a breaker strategy")
        for n in self.n_values:
            size = eval_size_rule(self.size_rule, n)
            BiasSpec(self.family, size)


def _parse_n(raw) -> list[int]:
    if isinstance(raw, int):
        return [raw]
    if isinstance(raw, list):
        return [int(x) for x in raw]
    if isinstance(raw, dict) and "start" in raw and "stop" in raw:
        return list(range(int(raw["start"]), int(raw["stop"]) + 1))
    raise ConfigError(f"cannot read n specification: {raw!r}")


def _parse_seeds(raw) -> list[int]:
    if isinstance(raw, int):
        return list(range(raw))
    if isinstance(raw, list):
        return [int(x) for x in raw]
    raise ConfigError(f"cannot read seeds specification: {raw!r}")


def _parse_first(raw) -> Optional[Player]:
    if raw in (None, "auto"):
        return None
    if raw in ("M", "maker", "Maker"):
        return Player.MAKER
    if raw in ("B", "breaker", "Breaker"):
        return Player.BREAKER
    raise ConfigError(f"cannot read first mover: {raw!r}")


def _parse_match_table(table: dict) -> MatchConfig:
    try:
        family = BiasFamily(table["family"])
        win = WinCondition.from_string(table["win"])
        config = MatchConfig(
            n_values=_parse_n(table["n"]),
            family=family,
            size_rule=table["size"],
            win=win,
            maker=str(table["maker"]),
            breaker=str(table["breaker"]),
            seeds=_parse_seeds(table.get("seeds", 100)),
            first=_parse_first(table.get("first")),
            exact_cap=int(table.get("exact_cap", 16)),
            maker_config=dict(table.get("maker_config", {})),
            breaker_config=dict(table.get("breaker_config", {})),
        )
    except KeyError as missing:
        raise ConfigError(f"missing config key: {missing}") from None
    except ValueError as bad:
        raise ConfigError(str(bad)) from None
    config.validate()
    return config


def load_config(text: str) -> dict:
    """Parse a TOML config into match and scan configurations."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as bad:
        raise ConfigError(f"config parse error: {bad}") from None
    matches = [_parse_match_table(t) for t in data.get("match", [])]
    scan = data.get("scan")
    if scan is not None:
        scan = _parse_scan_table(scan)
    return {"matches": matches, "scan": scan}


# ---------------------------------------------------------------------------
# Match runner


def _game_task(config_index: int, config: MatchConfig, n: int,
               seed: int) -> dict:
    size = eval_size_rule(config.size_rule, n)
    first = config.first
    if first is None:
        first = required_first(config.maker, config.breaker)
    return {
        "config_index": config_index,
        "n": n,
        "family": config.family.value,
        "size": size,
        "win": config.win.to_string(),
        "maker": config.maker,
        "breaker": config.breaker,
        "first": first.value,
        "seed": seed,
        "exact_cap": config.exact_cap,
        "maker_config": config.maker_config,
        "breaker_config": config.breaker_config,
    }


def _play_task(task: dict) -> dict:
    from .registry import make_strategy

    bias = BiasSpec(BiasFamily(task["family"]), task["size"])
    win = WinCondition.from_string(task["win"])
    maker = make_strategy(task["maker"], seed=task["seed"],
                          **task["maker_config"])
    breaker = make_strategy(task["breaker"], seed=task["seed"],
                            **task["breaker_config"])
    outcome = play_game(task["n"], bias, win, maker, breaker,
                        first=Player(task["first"]), seed=task["seed"],
                        exact_cap=task["exact_cap"])
    return {
        "config_index": task["config_index"],
        "n": task["n"],
        "family": task["family"],
        "size": task["size"],
        "win": task["win"],
        "maker": task["maker"],
        "breaker": task["breaker"],
        "first": task["first"],
        "seed": task["seed"],
        "winner": outcome.winner.value,
        "reason": outcome.reason,
        "maker_moves": outcome.maker_moves,
        "breaker_moves": outcome.breaker_moves,
        "flags": outcome.flags,
        "record": encode_record(outcome.state).strip(),
    }


def run_match(configs: Iterable[MatchConfig], jobs: int = 1) -> list[dict]:
    """Play every configured game; rows ordered by (config index, n, seed)."""
    tasks = []
    for index, config in enumerate(configs):
        config.validate()
        for n in config.n_values:
            for seed in config.seeds:
                tasks.append(_game_task(index, config, n, seed))
    if jobs > 1 and len(tasks) > 1:
        with Pool(jobs) as pool:
            rows = pool.map(_play_task, tasks)
    else:
        rows = [_play_task(t) for t in tasks]
    return rows


def write_rows(rows: list[dict], path: str) -> None:
    with open(path, "w", newline="") as handle:
        handle.write(CSV_VERSION_LINE + "\n")
        writer = csv.DictWriter(handle, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row[k] for k in CSV_FIELDS})


def rows_to_csv(rows: list[dict]) -> str:
    buffer = io.StringIO()
    buffer.write(CSV_VERSION_LINE + "\n")
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS)
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row[k] for k in CSV_FIELDS})
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# Threshold scans


@dataclass
class ScanConfig:
    n_values: list[int]
    family: BiasFamily
    sizes: list[int]
    win: WinCondition
    maker: str
    breakers: list[str]
    seeds: list[int]
    first: Optional[Player] = None
    exact_cap: int = 16
    maker_config: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not self.n_values:
            raise ConfigError("empty n range")
        if not self.sizes:
            raise ConfigError("empty size sweep")
        get_info(self.maker)
        for breaker in self.breakers:
            get_info(breaker)


def _parse_scan_table(table: dict) -> ScanConfig:
    try:
        breakers = table.get("breakers")
        if breakers is None:
            breakers = [table["breaker"]]
        config = ScanConfig(
            n_values=_parse_n(table["n"]),
            family=BiasFamily(table["family"]),
            sizes=[int(s) for s in table["sizes"]],
            win=WinCondition.from_string(table["win"]),
            maker=str(table["maker"]),
            breakers=[str(b) for b in breakers],
            seeds=_parse_seeds(table.get("seeds", 50)),
            first=_parse_first(table.get("first")),
            exact_cap=int(table.get("exact_cap", 16)),
            maker_config=dict(table.get("maker_config", {})),
        )
    except KeyError as missing:
        raise ConfigError(f"missing scan key: {missing}") from None
    except ValueError as bad:
        raise ConfigError(str(bad)) from None
    config.validate()
    return config


def run_threshold_scan(scan: ScanConfig, jobs: int = 1) -> list[dict]:
    """Win-rate table over (n, bias size) cells against each adversary."""
    scan.validate()
    cells = []
    for n in scan.n_values:
        for size in scan.sizes:
            for breaker in scan.breakers:
                config = MatchConfig(
                    n_values=[n], family=scan.family, size_rule=size,
                    win=scan.win, maker=scan.maker, breaker=breaker,
                    seeds=scan.seeds, first=scan.first,
                    exact_cap=scan.exact_cap,
                    maker_config=scan.maker_config)
                rows = run_match([config], jobs=jobs)
                wins = sum(1 for r in rows if r["winner"] == "M")
                cells.append({
                    "n": n,
                    "family": scan.family.value,
                    "size": size,
                    "win": scan.win.to_string(),
                    "maker": scan.maker,
                    "breaker": breaker,
                    "games": len(rows),
                    "maker_wins": wins,
                    "maker_win_rate": wins / len(rows),
                })
    return cells


SCAN_FIELDS = ["n", "family", "size", "win", "maker", "breaker", "games",
               "maker_wins", "maker_win_rate"]


def write_scan(cells: list[dict], path: str) -> None:
    with open(path, "w", newline="") as handle:
        handle.write(CSV_VERSION_LINE + "\n")
        writer = csv.DictWriter(handle, fieldnames=SCAN_FIELDS)
        writer.writeheader()
        for cell in cells:
            writer.writerow({k: cell[k] for k in SCAN_FIELDS})


# ---------------------------------------------------------------------------
# Verification suites


@dataclass
class SuiteReport:
    suite: str
    cells: list[dict]
    violations: list[dict]

    @property
    def ok(self) -> bool:
        return not self.violations


def box_suite(p_max: int = 6, q_max: int = 8,
              perimeters: tuple[int, ...] = (4, 6)) -> SuiteReport:
    """Wherever the winning condition holds, balancing play must win."""
    cells = []
    violations = []
    for m in perimeters:
        for p in range(1, p_max + 1):
            for q in range(1, q_max + 1):
                condition = boxmaker_condition(p, q, m)
                if not condition:
                    cells.append({"p": p, "q": q, "m": m,
                                  "condition": False, "boxmaker_wins": None})
                    continue
                wins = boxmaker_beats_exhaustive(p, q, m)
                cell = {"p": p, "q": q, "m": m, "condition": True,
                        "boxmaker_wins": wins}
                cells.append(cell)
                if not wins:
                    violations.append(cell)
    return SuiteReport("box", cells, violations)


def survivor_suite(k_range: tuple[int, ...] = (2, 3, 4, 5, 6),
                   c_range: tuple[int, ...] = (2, 3, 4, 5, 6),
                   grid_values: tuple[int, ...] = (0, 1, 2)) -> SuiteReport:
    """Adversary maximum of final-minus-mean stays under the closed bound,
    with equality on the known tight start."""
    from itertools import product

    cells = []
    violations = []
    for k in k_range:
        for c in c_range:
            bound = survivor_bound(k, c)
            worst = Fraction(-10 ** 9)
            worst_start = None
            for start in product(grid_values, repeat=k):
                excess = survivor_max_excess(list(start), c)
                if excess > worst:
                    worst, worst_start = excess, start
                if excess > bound:
                    violations.append({"k": k, "c": c, "start": start,
                                       "excess": str(excess),
                                       "bound": str(bound)})
            tight_start = [0] * (k - 1) + [c - 1]
            tight = survivor_max_excess(tight_start, c)
            cell = {"k": k, "c": c, "bound": str(bound),
                    "grid_max": str(worst), "grid_argmax": worst_start,
                    "tight_start": tuple(tight_start),
                    "tight_excess": str(tight), "tight": tight == bound}
            cells.append(cell)
            if tight != bound:
                violations.append({"k": k, "c": c,
                                   "reason": "tight start missed the bound",
                                   "excess": str(tight), "bound": str(bound)})
    return SuiteReport("survivor", cells, violations)


def paired_suite(k_range: tuple[int, ...] = (2, 3),
                 c_range: tuple[int, ...] = (2, 3, 4, 5, 6)) -> SuiteReport:
    """Adversary maximum of the counter process stays under both bounds."""
    cells = []
    violations = []
    for k in k_range:
        for c in c_range:
            if c < k:
                continue
            start = [(0, 0)] * k
            excess = paired_max_excess(start, c)
            fine = paired_bound_fine(k, c)
            coarse = paired_bound_coarse(k, c)
            cell = {"k": k, "c": c, "excess": str(excess),
                    "fine_bound": str(fine), "coarse_bound": str(coarse)}
            cells.append(cell)
            if excess > fine or excess > coarse:
                violations.append(cell)
    return SuiteReport("paired", cells, violations)


def _random_graph(n: int, p: float, rng) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return Graph.from_edges(n, edges)


def expander_suite(samples: int = 10000, n_max: int = 14,
                   extra_graphs: Optional[list[Graph]] = None,
                   seed: int = 0) -> SuiteReport:
    """Component-size and booster-count facts on expanders, exact counts."""
    import random as random_module

    rng = random_module.Random(f"expander-suite:{seed}")
    cells = []
    violations = []
    graphs: list[Graph] = []
    for _ in range(samples):
        n = rng.randint(4, n_max)
        p = rng.choice([0.15, 0.25, 0.35, 0.5, 0.7])
        graphs.append(_random_graph(n, p, rng))
    if extra_graphs:
        graphs.extend(extra_graphs)
    checked = 0
    expanders = 0
    for g in graphs:
        k = max_expansion_k(g, cap=4)
        checked += 1
        if k < 1:
            continue
        expanders += 1
        smallest = min(len(c) for c in connected_components(g))
        if smallest < 3 * k:
            violations.append({"fact": "component-size", "n": g.n, "k": k,
                               "smallest_component": smallest})
        if is_connected(g) and not has_hamilton_cycle(g, exact_cap=16):
            count = len(boosters(g, exact_cap=16))
            needed = (k + 1) ** 2 / 2
            if count < needed:
                violations.append({"fact": "booster-count", "n": g.n,
                                   "k": k, "boosters": count,
                                   "needed": needed})
    cells.append({"graphs": checked, "expanders": expanders})
    return SuiteReport("expander", cells, violations)


SUITES = {
    "box": box_suite,
    "survivor": survivor_suite,
    "paired": paired_suite,
    "expander": expander_suite,
}


def run_lemma_suite(which: str, **kwargs) -> SuiteReport:
    try:
        runner = SUITES[which]
    except KeyError:
        raise ConfigError(
            f"unknown suite {which!r}; choose from {sorted(SUITES)}") from None
    return runner(**kwargs)


def maker_end_graphs(rows: list[dict]) -> list[Graph]:
    """Final Maker graphs from match rows, for corpus checks."""
    from .board import decode_record

    graphs = []
    for row in rows:
        state = decode_record(row["record"] + "\n")
        graphs.append(maker_graph(state))
    return graphs
