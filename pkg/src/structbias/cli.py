"""Command-line interface.

Subcommands: play (match batches), scan (threshold sweeps), lemmas
(verification suites), solve (exact small-board solving), record
(replay and validate game records), serve (HTTP play service).
Exit codes: 0 ok, 1 invariant violation, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .board import (
    BiasFamily,
    BiasSpec,
    Player,
    RecordParseError,
    IllegalReplayError,
    WinCondition,
    decode_record,
    new_game,
)
from .experiments import (
    ConfigError,
    SUITES,
    load_config,
    run_lemma_suite,
    run_match,
    run_threshold_scan,
    rows_to_csv,
    write_rows,
    write_scan,
)
from .registry import UnknownStrategyError
from .strategy import UnsupportedBoardError

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="structbias",
        description="Structure-biased Maker-Breaker games: batch runs, "
                    "verification suites, exact solving, and a play service.")
    sub = parser.add_subparsers(dest="command", required=True)

    play = sub.add_parser("play", help="run configured strategy matches")
    play.add_argument("--config", required=True, help="TOML config file")
    play.add_argument("--out", help="CSV output path")
    play.add_argument("--jobs", type=int, default=1)
    play.add_argument("--seed", type=int, default=0,
                      help="offset added to every configured seed")
    play.add_argument("--exact-cap", type=int, default=None,
                      help="override the exact-search vertex cap")

    scan = sub.add_parser("scan", help="run a threshold scan")
    scan.add_argument("--config", required=True)
    scan.add_argument("--out", help="CSV output path")
    scan.add_argument("--jobs", type=int, default=1)
    scan.add_argument("--seed", type=int, default=0)
    scan.add_argument("--exact-cap", type=int, default=None)

    lemmas = sub.add_parser("lemmas", help="run a verification suite")
    lemmas.add_argument("--suite", required=True, choices=sorted(SUITES))
    lemmas.add_argument("--out", help="JSON report path")
    lemmas.add_argument("--samples", type=int, default=None,
                        help="sample count for the expander suite")
    lemmas.add_argument("--seed", type=int, default=0)

    solve = sub.add_parser("solve", help="solve a small board exactly")
    solve.add_argument("--n", type=int, required=True)
    solve.add_argument("--family", required=True,
                       choices=[f.value for f in BiasFamily])
    solve.add_argument("--size", type=int, required=True)
    solve.add_argument("--win", required=True)
    solve.add_argument("--first", choices=["M", "B"], default="B")
    solve.add_argument("--full", action="store_true",
                       help="enumerate every legal move, not just maximal")
    solve.add_argument("--no-memo", action="store_true")
    solve.add_argument("--budget", type=int, default=None)
    solve.add_argument("--exact-cap", type=int, default=16)

    record = sub.add_parser("record", help="validate and summarize records")
    record.add_argument("--in", dest="path", required=True,
                        help="file with one game record per line")

    serve = sub.add_parser("serve", help="run the HTTP play service")
    serve.add_argument("--port", type=int, default=None)
    serve.add_argument("--host", default="127.0.0.1")
    return parser


def _cmd_play(args) -> int:
    with open(args.config) as handle:
        config = load_config(handle.read())
    matches = config["matches"]
    if not matches:
        print("config has no [[match]] tables", file=sys.stderr)
        return EXIT_CONFIG
    for match in matches:
        if args.seed:
            match.seeds = [s + args.seed for s in match.seeds]
        if args.exact_cap is not None:
            match.exact_cap = args.exact_cap
    rows = run_match(matches, jobs=args.jobs)
    if args.out:
        write_rows(rows, args.out)
    else:
        sys.stdout.write(rows_to_csv(rows))
    maker_wins = sum(1 for r in rows if r["winner"] == "M")
    print(f"games={len(rows)} maker_wins={maker_wins} "
          f"maker_rate={maker_wins / len(rows):.3f}", file=sys.stderr)
    return EXIT_OK


def _cmd_scan(args) -> int:
    with open(args.config) as handle:
        config = load_config(handle.read())
    scan = config["scan"]
    if scan is None:
        print("config has no [scan] table", file=sys.stderr)
        return EXIT_CONFIG
    if args.seed:
        scan.seeds = [s + args.seed for s in scan.seeds]
    if args.exact_cap is not None:
        scan.exact_cap = args.exact_cap
    cells = run_threshold_scan(scan, jobs=args.jobs)
    if args.out:
        write_scan(cells, args.out)
    for cell in cells:
        print(f"n={cell['n']} size={cell['size']} breaker={cell['breaker']} "
              f"rate={cell['maker_win_rate']:.3f}")
    return EXIT_OK


def _cmd_lemmas(args) -> int:
    kwargs = {}
    if args.suite == "expander":
        if args.samples is not None:
            kwargs["samples"] = args.samples
        kwargs["seed"] = args.seed
    report = run_lemma_suite(args.suite, **kwargs)
    payload = {"suite": report.suite, "ok": report.ok,
               "cells": report.cells, "violations": report.violations}
    text = json.dumps(payload, indent=2, default=str)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    if not report.ok:
        print(f"suite {report.suite}: {len(report.violations)} violation(s)",
              file=sys.stderr)
        return EXIT_VIOLATION
    print(f"suite {report.suite}: ok ({len(report.cells)} cells)",
          file=sys.stderr)
    return EXIT_OK


def _cmd_solve(args) -> int:
    from .solver import solve

    try:
        win = WinCondition.from_string(args.win)
        bias = BiasSpec(BiasFamily(args.family), args.size)
        state = new_game(args.n, bias, win, first=Player(args.first))
    except ValueError as bad:
        print(f"bad game configuration: {bad}", file=sys.stderr)
        return EXIT_CONFIG
    result = solve(state, memoized=not args.no_memo, full=args.full,
                   node_budget=args.budget, exact_cap=args.exact_cap)
    print(f"winner={result.winner.value} nodes={result.nodes}")
    for side, edges in result.pv:
        print(f"  {side} {list(edges)}")
    return EXIT_OK


def _cmd_record(args) -> int:
    failures = 0
    total = 0
    with open(args.path) as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            total += 1
            try:
                state = decode_record(line)
            except (RecordParseError, IllegalReplayError) as bad:
                failures += 1
                print(f"line {lineno}: INVALID ({bad})")
                continue
            print(f"line {lineno}: ok n={state.n} "
                  f"bias={state.bias.family.value}({state.bias.size}) "
                  f"win={state.win.to_string()} "
                  f"half_moves={len(state.history)}")
    print(f"checked={total} invalid={failures}", file=sys.stderr)
    return EXIT_VIOLATION if failures else EXIT_OK


def _cmd_serve(args) -> int:
    import os

    import uvicorn

    from .service import app

    port = args.port
    if port is None:
        port = int(os.environ.get("PLAY_PORT", "8642"))
    uvicorn.run(app, host=args.host, port=port)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "play": _cmd_play,
        "scan": _cmd_scan,
        "lemmas": _cmd_lemmas,
        "solve": _cmd_solve,
        "record": _cmd_record,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, UnknownStrategyError, UnsupportedBoardError) as bad:
        print(f"config error: {bad}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as missing:
        print(f"file not found: {missing.filename}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
