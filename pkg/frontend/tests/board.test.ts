import { describe, expect, it } from "vitest";

import {
  allEdges,
  boardFromView,
  circularLayout,
  claimEdges,
  edgeCount,
  edgeIndex,
  edgeKey,
  edgeStates,
  emptyBoard,
  incidentEdges,
  ownerAt,
  unclaimedCount,
  unclaimedEdges,
} from "../src/board.js";

describe("edge enumeration", () => {
  it("edgeIndex is the position in lexicographic order", () => {
    for (const n of [3, 5, 8]) {
      const edges = allEdges(n);
      expect(edges).toHaveLength(edgeCount(n));
      edges.forEach(([u, v], i) => {
        expect(edgeIndex(n, u, v)).toBe(i);
      });
    }
  });

  it("edgeKey canonicalizes direction", () => {
    expect(edgeKey(4, 1)).toBe("1-4");
    expect(edgeKey(1, 4)).toBe("1-4");
  });

  it("incidentEdges lists n-1 canonical edges", () => {
    const incident = incidentEdges(5, 2);
    expect(incident).toHaveLength(4);
    for (const [u, v] of incident) {
      expect(u).toBeLessThan(v);
      expect(u === 2 || v === 2).toBe(true);
    }
  });
});

describe("ownership strings", () => {
  it("claims and reads back owners", () => {
    let board = emptyBoard(4);
    board = claimEdges(board, 4, [[0, 1]], "M");
    board = claimEdges(board, 4, [[3, 2]], "B");
    expect(ownerAt(board, 4, 1, 0)).toBe("M");
    expect(ownerAt(board, 4, 2, 3)).toBe("B");
    expect(ownerAt(board, 4, 0, 2)).toBeNull();
    expect(unclaimedCount(board)).toBe(4);
    expect(unclaimedEdges(board, 4)).toEqual([[0, 2], [0, 3], [1, 2], [1, 3]]);
  });

  it("boardFromView mirrors the view edge lists", () => {
    const view = {
      n: 4,
      makerEdges: [[0, 1], [1, 2]],
      breakerEdges: [[2, 3]],
    };
    const board = boardFromView(view as never);
    expect(ownerAt(board, 4, 0, 1)).toBe("M");
    expect(ownerAt(board, 4, 1, 2)).toBe("M");
    expect(ownerAt(board, 4, 2, 3)).toBe("B");
    expect(unclaimedCount(board)).toBe(3);
  });

  it("edgeStates overlays pending only on unclaimed edges", () => {
    let board = emptyBoard(4);
    board = claimEdges(board, 4, [[0, 1]], "M");
    const states = edgeStates(board, 4, [[0, 1], [2, 3]]);
    expect(states.get("0-1")).toBe("maker");
    expect(states.get("2-3")).toBe("pending");
    expect(states.get("0-2")).toBe("unclaimed");
  });
});

describe("circular layout", () => {
  it("spaces n vertices on the circle with vertex 0 on top", () => {
    const layout = circularLayout(6, 100, 100, 50);
    expect(layout).toHaveLength(6);
    expect(layout[0].x).toBeCloseTo(100, 6);
    expect(layout[0].y).toBeCloseTo(50, 6);
    for (const { x, y } of layout) {
      const r = Math.hypot(x - 100, y - 100);
      expect(r).toBeCloseTo(50, 6);
    }
    const distinct = new Set(layout.map(({ x, y }) => `${x.toFixed(3)},${y.toFixed(3)}`));
    expect(distinct.size).toBe(6);
  });
});
