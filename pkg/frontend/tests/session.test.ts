import { describe, expect, it } from "vitest";

import { boardFromView } from "../src/board.js";
import { classifyStructure, bannerText, highlightSet } from "../src/highlight.js";
import { checkMove } from "../src/legality.js";
import { replayMatchesView, replayPrefix, scrubTimeline } from "../src/replay.js";
import { parseSessionView, parseStrategyList, type SessionView } from "../src/types.js";
import { loadSessionFixture } from "./helpers.js";

describe("scripted star-bias session transcript", () => {
  const fixture = loadSessionFixture();
  const views: SessionView[] = fixture.views.map((raw, i) => {
    const view = parseSessionView(raw);
    if (view === null) throw new Error(`view ${i} failed to parse`);
    return view;
  });

  it("parses every served view", () => {
    expect(views.length).toBeGreaterThanOrEqual(2);
    for (const view of views) {
      expect(view.n).toBe(10);
      expect(view.bias).toEqual({ family: "star", size: 3 });
      expect(view.win).toBe("triangle");
      expect(view.humanRole).toBe("B");
      expect(view.strategy).toBe("maker.triangle.star");
    }
  });

  it("starts awaiting the human Breaker on an empty board", () => {
    const first = views[0];
    expect(first.status).toBe("awaiting-human");
    expect(first.toMove).toBe("B");
    expect(first.first).toBe("B");
    expect(first.moves).toHaveLength(0);
    expect(boardFromView(first)).toBe(".".repeat(45));
  });

  it("accepted each scripted submission as legal locally too", () => {
    expect(fixture.submissions.length).toBe(views.length - 1);
    for (let i = 0; i < fixture.submissions.length; i++) {
      const before = views[i];
      const pos = {
        n: before.n,
        bias: before.bias,
        humanRole: before.humanRole,
        toMove: before.toMove,
        status: before.status,
        board: boardFromView(before),
      };
      expect(checkMove(pos, fixture.submissions[i]).ok).toBe(true);
    }
  });

  it("every view equals the replay of its own history", () => {
    for (const view of views) {
      expect(replayMatchesView(view)).toBe(true);
    }
  });

  it("histories grow by one human move plus one engine reply", () => {
    for (let i = 1; i < views.length; i++) {
      const prev = views[i - 1].moves;
      const next = views[i].moves;
      expect(next.length).toBeGreaterThan(prev.length);
      expect(next.slice(0, prev.length)).toEqual(prev);
      expect(next[prev.length].p).toBe("B");
    }
  });

  it("ends with a Maker win by goal and a highlighted triangle", () => {
    const last = views[views.length - 1];
    expect(last.status).toBe("finished");
    expect(last.winner).toBe("M");
    expect(last.reason).toBe("goal");
    expect(last.winningStructure).not.toBeNull();
    const witness = last.winningStructure ?? [];
    expect(witness).toHaveLength(3);
    expect(classifyStructure(last.n, last.win, witness)).toBe("triangle");
    expect(bannerText(last)).toBe("Maker wins: triangle completed");

    const highlight = highlightSet(last);
    expect(highlight.size).toBe(3);
    const makerKeys = new Set(last.makerEdges.map(([u, v]) => `${u}-${v}`));
    for (const key of highlight) {
      expect(makerKeys.has(key)).toBe(true);
    }
  });

  it("scrub points walk from the empty board to the final board", () => {
    const last = views[views.length - 1];
    const points = scrubTimeline(last);
    expect(points[0].board).toBe(".".repeat(45));
    expect(points[points.length - 1].board).toBe(boardFromView(last));
    for (let i = 0; i < points.length; i++) {
      expect(points[i].board).toBe(replayPrefix(last.n, last.moves, i));
    }
  });

  it("ships a parsable strategy registry listing both roles", () => {
    const strategies = parseStrategyList(fixture.strategies);
    expect(strategies).not.toBeNull();
    const ids = (strategies ?? []).map((s) => s.id);
    expect(ids).toContain("maker.triangle.star");
    expect(ids).toContain("maker.baseline.random");
    expect(ids).toContain("breaker.baseline.random");
    const roles = new Set((strategies ?? []).map((s) => s.role));
    expect(roles).toEqual(new Set(["maker", "breaker"]));
  });
});
