/** Outcome banner text and winning-structure classification.
 *
 * The server sends the witness edge set; the client verifies which shape
 * it actually is before drawing it, so a mismatched payload degrades to a
 * plain highlight instead of a wrong caption.
 */

import { edgeKey } from "./board.js";
import type { Edge, SessionView } from "./types.js";

export type StructureLabel =
  | "triangle"
  | "spanning-tree"
  | "hamilton-path"
  | "hamilton-cycle"
  | "min-degree"
  | "subgraph";

function degreeMap(edges: Edge[]): Map<number, number> {
  const deg = new Map<number, number>();
  for (const [u, v] of edges) {
    deg.set(u, (deg.get(u) ?? 0) + 1);
    deg.set(v, (deg.get(v) ?? 0) + 1);
  }
  return deg;
}

function connectedSpanning(n: number, edges: Edge[]): boolean {
  const parent = Array.from({ length: n }, (_, i) => i);
  const find = (x: number): number => {
    while (parent[x] !== x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const [u, v] of edges) {
    if (u < 0 || v >= n) return false;
    parent[find(u)] = find(v);
  }
  const root = find(0);
  for (let v = 1; v < n; v++) {
    if (find(v) !== root) return false;
  }
  return true;
}

/** What shape the witness edges actually form on K_n. */
export function classifyStructure(n: number, win: string, edges: Edge[]): StructureLabel {
  const deg = degreeMap(edges);
  if (win === "triangle" && edges.length === 3 && deg.size === 3) {
    if ([...deg.values()].every((d) => d === 2)) return "triangle";
  }
  if (win === "connectivity" && edges.length === n - 1 && connectedSpanning(n, edges)) {
    return "spanning-tree";
  }
  if (win === "hamilton-path" && edges.length === n - 1 && deg.size === n) {
    const degrees = [...deg.values()].sort((a, b) => a - b);
    if (degrees[0] === 1 && degrees[1] === 1 && degrees.slice(2).every((d) => d === 2)) {
      if (connectedSpanning(n, edges)) return "hamilton-path";
    }
  }
  if (win === "hamilton-cycle" && edges.length === n && deg.size === n) {
    if ([...deg.values()].every((d) => d === 2) && connectedSpanning(n, edges)) {
      return "hamilton-cycle";
    }
  }
  if (win.startsWith("min-degree-")) {
    const target = Number(win.slice("min-degree-".length));
    if (Number.isInteger(target) && deg.size === n) {
      if ([...deg.values()].every((d) => d >= target)) return "min-degree";
    }
  }
  return "subgraph";
}

/** Edge keys to draw highlighted, empty when there is nothing to show. */
export function highlightSet(view: SessionView): Set<string> {
  if (view.winner !== "M" || view.winningStructure === null) {
    return new Set();
  }
  return new Set(view.winningStructure.map(([u, v]) => edgeKey(u, v)));
}

const LABEL_TEXT: Record<StructureLabel, string> = {
  triangle: "triangle completed",
  "spanning-tree": "spanning tree built",
  "hamilton-path": "Hamilton path completed",
  "hamilton-cycle": "Hamilton cycle completed",
  "min-degree": "degree target reached",
  subgraph: "goal reached",
};

export function bannerText(view: SessionView): string {
  if (view.status !== "finished") {
    const turn = view.toMove === view.humanRole ? "your move" : "engine thinking";
    return `${view.toMove === "M" ? "Maker" : "Breaker"} to move (${turn})`;
  }
  if (view.winner === "M") {
    const label =
      view.winningStructure !== null
        ? LABEL_TEXT[classifyStructure(view.n, view.win, view.winningStructure)]
        : LABEL_TEXT.subgraph;
    return `Maker wins: ${label}`;
  }
  if (view.reason !== null && view.reason.startsWith("blocked:")) {
    return `Breaker wins: ${view.reason.slice("blocked:".length)} blocked`;
  }
  return "Breaker wins: board exhausted";
}
