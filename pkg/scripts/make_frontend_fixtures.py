"""Regenerate the frozen service fixtures used by the web client's tests.

Drives the play service in-process and records, for thousands of fuzzed
move submissions, the exact position context and the server's verdict.
The web client replays these offline to prove its legality mirror never
accepts a set the service rejects.  Also records one scripted session
(human Breaker under a star bias against the triangle maker) end to end.

Usage: python3 scripts/make_frontend_fixtures.py [--cases N] [--out DIR]
"""

from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

from fastapi.testclient import TestClient

from structbias.board import all_edges, edge_index
from structbias.service import SESSIONS, app

FAMILIES = ("free", "matching", "star", "clique")


def board_string(view: dict) -> str:
    """One char per K_n edge in lexicographic order: '.', 'M', or 'B'."""
    n = view["n"]
    chars = ["."] * (n * (n - 1) // 2)
    for u, v in view["maker_edges"]:
        chars[edge_index(n, (u, v))] = "M"
    for u, v in view["breaker_edges"]:
        chars[edge_index(n, (u, v))] = "B"
    return "".join(chars)


def unclaimed(view: dict) -> list[tuple[int, int]]:
    board = board_string(view)
    n = view["n"]
    return [e for e in all_edges(n) if board[edge_index(n, e)] == "."]


def claimed(view: dict) -> list[list[int]]:
    return list(view["maker_edges"]) + list(view["breaker_edges"])


def sample_legal_breaker(rng: random.Random, view: dict) -> list[list[int]]:
    free = unclaimed(view)
    if not free:
        return []
    family = view["bias"]["family"]
    size = view["bias"]["size"]
    if family == "free":
        k = rng.randint(1, size)
        return [list(e) for e in rng.sample(free, min(k, len(free)))]
    if family == "matching":
        rng.shuffle(free)
        picked: list[list[int]] = []
        seen: set[int] = set()
        for u, v in free:
            if u not in seen and v not in seen:
                picked.append([u, v])
                seen.update((u, v))
            if len(picked) == size:
                break
        return picked[: rng.randint(1, len(picked))] if picked else []
    if family == "star":
        centers = sorted({v for e in free for v in e})
        center = rng.choice(centers)
        spokes = [e for e in free if center in e]
        rng.shuffle(spokes)
        k = rng.randint(1, min(size, len(spokes)))
        return [list(e) for e in spokes[:k]]
    # clique: pick a small vertex set, take unclaimed edges inside it
    verts = rng.sample(range(view["n"]), min(size, view["n"]))
    inside = [e for e in free if e[0] in verts and e[1] in verts]
    if not inside:
        return [list(rng.choice(free))] if rng.random() < 0.5 else []
    rng.shuffle(inside)
    return [list(e) for e in inside[: rng.randint(1, len(inside))]]


def mutate_bad(rng: random.Random, view: dict, move: list[list[int]]) -> list[list[int]]:
    """Turn a plausible move into a usually-illegal one."""
    n = view["n"]
    kind = rng.randrange(6)
    out = [list(e) for e in move]
    if kind == 0:
        out.append([n + rng.randint(0, 2), rng.randrange(n)])
    elif kind == 1:
        v = rng.randrange(n)
        out.append([v, v])
    elif kind == 2 and out:
        out.append(list(out[0]))
    elif kind == 3 and claimed(view):
        out.append(list(rng.choice(claimed(view))))
    elif kind == 4:
        free = unclaimed(view)
        extra = min(len(free), view["bias"]["size"] + 2)
        out = [list(e) for e in rng.sample(free, extra)] if free else out
    else:
        out.append([rng.randrange(n), -1 - rng.randrange(3)])
    return out


def draw_config(rng: random.Random) -> dict:
    family = rng.choice(FAMILIES)
    size = rng.randint(2, 3) if family == "clique" else rng.randint(1, 4)
    human = rng.choice(("M", "B"))
    strategy = ("breaker.baseline.random" if human == "M"
                else "maker.baseline.random")
    return {
        "n": rng.randint(5, 10),
        "bias": {"family": family, "size": size},
        "win": rng.choice(("triangle", "connectivity")),
        "human_role": human,
        "strategy": strategy,
        "seed": rng.randrange(10**6),
    }


def snapshot(view: dict) -> dict:
    return {
        "n": view["n"],
        "bias": dict(view["bias"]),
        "human_role": view["human_role"],
        "to_move": view["to_move"],
        "status": view["status"],
        "board": board_string(view),
    }


def propose(rng: random.Random, view: dict) -> list[list[int]]:
    """Draw one submission: a mix of legal, near-legal, and junk moves."""
    n = view["n"]
    if view["human_role"] == "M":
        roll = rng.random()
        free = unclaimed(view)
        if roll < 0.55 and free:
            return [list(rng.choice(free))]
        if roll < 0.70 and len(free) >= 2:
            return [list(e) for e in rng.sample(free, 2)]
        if roll < 0.80 and claimed(view):
            return [list(rng.choice(claimed(view)))]
        if roll < 0.90:
            v = rng.randrange(n)
            return [[v, v]] if roll < 0.85 else [[n + 1, 0]]
        return []
    roll = rng.random()
    legal = sample_legal_breaker(rng, view)
    if roll < 0.50:
        return legal
    if roll < 0.85:
        return mutate_bad(rng, view, legal)
    if roll < 0.93:
        return []
    free = unclaimed(view)
    k = rng.randint(1, 4)
    return [list(rng.choice(free)) for _ in range(k)] if free else []


def run_parity(client: TestClient, total: int, rng: random.Random) -> dict:
    cases: list[dict] = []
    accepted = rejected = 0
    view: dict | None = None
    session_moves = 0
    while len(cases) < total:
        if view is None or session_moves >= 40:
            config = draw_config(rng)
            resp = client.post("/sessions", json=config)
            assert resp.status_code == 200, resp.text
            view = resp.json()
            session_moves = 0
        edges = propose(rng, view)
        case = snapshot(view)
        case["edges"] = edges
        resp = client.post(f"/sessions/{view['id']}/moves", json={"edges": edges})
        session_moves += 1
        if resp.status_code == 200:
            case["server"] = {"ok": True}
            accepted += 1
            view = resp.json()
            if view["status"] == "finished":
                # one probe against the finished session, then rotate
                if len(cases) + 1 < total and rng.random() < 0.5:
                    cases.append(case)
                    probe = snapshot(view)
                    free = unclaimed(view)
                    probe["edges"] = [list(free[0])] if free else []
                    resp2 = client.post(f"/sessions/{view['id']}/moves",
                                        json={"edges": probe["edges"]})
                    assert resp2.status_code != 200
                    body2 = resp2.json()
                    probe["server"] = {"ok": False, "code": body2["code"],
                                       "reason": body2.get("detail", {}).get("reason"),
                                       "status_code": resp2.status_code}
                    cases.append(probe)
                    rejected += 1
                    view = None
                    continue
                view = None
        else:
            body = resp.json()
            case["server"] = {"ok": False, "code": body["code"],
                              "reason": body.get("detail", {}).get("reason"),
                              "status_code": resp.status_code}
            rejected += 1
        cases.append(case)
    return {
        "meta": {"cases": len(cases), "accepted": accepted, "rejected": rejected},
        "cases": cases,
    }


def run_scripted_session(client: TestClient) -> dict:
    """Human Breaker holds stars of size 3 while the triangle maker plays."""
    config = {
        "n": 10,
        "bias": {"family": "star", "size": 3},
        "win": "triangle",
        "strategy": "maker.triangle.star",
        "human_role": "B",
        "seed": 7,
    }
    resp = client.post("/sessions", json=config)
    assert resp.status_code == 200, resp.text
    view = resp.json()
    views = [view]
    submissions: list[list[list[int]]] = []
    while view["status"] == "awaiting-human":
        free = unclaimed(view)
        move: list[list[int]] = []
        for center in range(view["n"]):
            spokes = [e for e in free if center in e]
            if spokes:
                move = [list(e) for e in spokes[:3]]
                break
        resp = client.post(f"/sessions/{view['id']}/moves", json={"edges": move})
        assert resp.status_code == 200, resp.text
        view = resp.json()
        submissions.append(move)
        views.append(view)
    assert view["winner"] == "M" and view["reason"] == "goal", view
    assert view["winning_structure"] is not None
    assert len(view["winning_structure"]) == 3
    strategies = client.get("/strategies").json()
    return {"config": config, "submissions": submissions, "views": views,
            "strategies": strategies}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cases", type=int, default=10000)
    parser.add_argument("--out", default="frontend/fixtures")
    parser.add_argument("--seed", type=int, default=20240817)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    client = TestClient(app)
    SESSIONS.clear()

    rng = random.Random(args.seed)
    parity = run_parity(client, args.cases, rng)
    (out / "parity.json").write_text(json.dumps(parity, separators=(",", ":")))
    print(f"parity: {parity['meta']}")

    session = run_scripted_session(client)
    (out / "session.json").write_text(json.dumps(session, separators=(",", ":")))
    print(f"session: {len(session['views'])} views, "
          f"winner {session['views'][-1]['winner']}")


if __name__ == "__main__":
    main()
