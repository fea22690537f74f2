/** Board model: edge enumeration, ownership strings, and circular layout. */

import type { Edge, PlayerId, SessionView } from "./types.js";

/** Position of a canonical edge (u < v) in the lexicographic order of K_n. */
export function edgeIndex(n: number, u: number, v: number): number {
  return u * n - (u * (u + 1)) / 2 + (v - u - 1);
}

export function allEdges(n: number): Edge[] {
  const out: Edge[] = [];
  for (let u = 0; u < n; u++) {
    for (let v = u + 1; v < n; v++) {
      out.push([u, v]);
    }
  }
  return out;
}

export function edgeCount(n: number): number {
  return (n * (n - 1)) / 2;
}

export function edgeKey(u: number, v: number): string {
  return u < v ? `${u}-${v}` : `${v}-${u}`;
}

/**
 * One char per edge in lexicographic order: "." unclaimed, "M", or "B".
 * This is the board snapshot every pure function here works against.
 */
export function emptyBoard(n: number): string {
  return ".".repeat(edgeCount(n));
}

export function boardFromView(view: SessionView): string {
  const chars = emptyBoard(view.n).split("");
  for (const [u, v] of view.makerEdges) {
    chars[edgeIndex(view.n, u, v)] = "M";
  }
  for (const [u, v] of view.breakerEdges) {
    chars[edgeIndex(view.n, u, v)] = "B";
  }
  return chars.join("");
}

export function ownerAt(board: string, n: number, u: number, v: number): PlayerId | null {
  const c = board[edgeIndex(n, Math.min(u, v), Math.max(u, v))];
  return c === "M" || c === "B" ? c : null;
}

export function claimEdges(board: string, n: number, edges: Edge[], who: PlayerId): string {
  const chars = board.split("");
  for (const [u, v] of edges) {
    chars[edgeIndex(n, Math.min(u, v), Math.max(u, v))] = who;
  }
  return chars.join("");
}

export function unclaimedEdges(board: string, n: number): Edge[] {
  return allEdges(n).filter(([u, v]) => board[edgeIndex(n, u, v)] === ".");
}

export function unclaimedCount(board: string): number {
  let count = 0;
  for (const c of board) {
    if (c === ".") count++;
  }
  return count;
}

export function incidentEdges(n: number, v: number): Edge[] {
  const out: Edge[] = [];
  for (let u = 0; u < n; u++) {
    if (u !== v) out.push(u < v ? [u, v] : [v, u]);
  }
  return out;
}

export type EdgeState = "unclaimed" | "maker" | "breaker" | "pending";

/** Render state per edge, with the pending composer selection overlaid. */
export function edgeStates(board: string, n: number, pending: Edge[]): Map<string, EdgeState> {
  const states = new Map<string, EdgeState>();
  for (const [u, v] of allEdges(n)) {
    const c = board[edgeIndex(n, u, v)];
    states.set(edgeKey(u, v), c === "M" ? "maker" : c === "B" ? "breaker" : "unclaimed");
  }
  for (const [u, v] of pending) {
    if (states.get(edgeKey(u, v)) === "unclaimed") {
      states.set(edgeKey(u, v), "pending");
    }
  }
  return states;
}

export interface VertexLayout {
  v: number;
  x: number;
  y: number;
}

/** Vertices evenly spaced on a circle, vertex 0 at twelve o'clock. */
export function circularLayout(n: number, cx: number, cy: number, radius: number): VertexLayout[] {
  const out: VertexLayout[] = [];
  for (let v = 0; v < n; v++) {
    const angle = -Math.PI / 2 + (2 * Math.PI * v) / n;
    out.push({ v, x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  }
  return out;
}
