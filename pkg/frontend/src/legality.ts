/** Client-side mirror of the service's move legality rules.
 *
 * The composer calls this before any submission, and the parity fixtures
 * hold it to the contract that it never accepts a set the server rejects.
 * Checks run in the same order as on the server: session finished, turn,
 * edge normalization, the empty-move rule, claimed edges, then the bias
 * structure.
 */

import { edgeIndex } from "./board.js";
import type { Bias, Edge, PlayerId } from "./types.js";

/** Everything legality needs to know about the position. */
export interface Position {
  n: number;
  bias: Bias;
  humanRole: PlayerId;
  toMove: PlayerId;
  status: string;
  board: string;
}

export interface Verdict {
  ok: boolean;
  reason: string | null;
}

const OK: Verdict = { ok: true, reason: null };

function reject(reason: string): Verdict {
  return { ok: false, reason };
}

/** Canonicalize raw pairs: no loops, on-board endpoints, no duplicates. */
export function normalizeMove(n: number, raw: number[][]): Edge[] | string {
  const out: Edge[] = [];
  for (const pair of raw) {
    if (!Array.isArray(pair) || pair.length !== 2) {
      return "edge must have two endpoints";
    }
    const [a, b] = pair;
    if (!Number.isInteger(a) || !Number.isInteger(b)) {
      return "edge endpoints must be integers";
    }
    if (a === b) {
      return `loop edge (${a},${b}) is not on the board`;
    }
    const u = Math.min(a, b);
    const v = Math.max(a, b);
    if (u < 0 || v >= n) {
      return `edge (${u},${v}) is off the board`;
    }
    out.push([u, v]);
  }
  out.sort((x, y) => (x[0] - y[0]) || (x[1] - y[1]));
  for (let i = 1; i < out.length; i++) {
    if (out[i][0] === out[i - 1][0] && out[i][1] === out[i - 1][1]) {
      return `duplicate edge (${out[i][0]},${out[i][1]}) in move`;
    }
  }
  return out;
}

/** Why a canonical edge set does not fit the bias, or null if it fits. */
export function structureViolation(bias: Bias, edges: Edge[]): string | null {
  if (bias.family === "clique") {
    const span = new Set<number>();
    for (const [u, v] of edges) {
      span.add(u);
      span.add(v);
    }
    if (span.size > bias.size) {
      return `edges span ${span.size} vertices, clique allows ${bias.size}`;
    }
    return null;
  }
  if (edges.length > bias.size) {
    return `${edges.length} edges exceed budget ${bias.size}`;
  }
  if (bias.family === "matching") {
    const seen = new Set<number>();
    for (const [u, v] of edges) {
      if (seen.has(u) || seen.has(v)) {
        return `edges are not vertex-disjoint at (${u},${v})`;
      }
      seen.add(u);
      seen.add(v);
    }
  } else if (bias.family === "star" && edges.length > 1) {
    let common = new Set<number>(edges[0]);
    for (const [u, v] of edges.slice(1)) {
      common = new Set([u, v].filter((x) => common.has(x)));
    }
    if (common.size === 0) {
      return "edges share no common center";
    }
  }
  return null;
}

function breakerViolation(pos: Position, raw: number[][]): string | null {
  const move = normalizeMove(pos.n, raw);
  if (typeof move === "string") return move;
  const hasFree = pos.board.includes(".");
  if (move.length === 0) {
    return hasFree ? "empty move while unclaimed edges remain" : null;
  }
  for (const [u, v] of move) {
    if (pos.board[edgeIndex(pos.n, u, v)] !== ".") {
      return `edge (${u},${v}) is already claimed`;
    }
  }
  return structureViolation(pos.bias, move);
}

function makerViolation(pos: Position, raw: number[][]): string | null {
  if (raw.length !== 1) {
    return "Maker claims exactly one edge per turn";
  }
  const move = normalizeMove(pos.n, raw);
  if (typeof move === "string") return move;
  const [u, v] = move[0];
  if (pos.board[edgeIndex(pos.n, u, v)] !== ".") {
    return `edge (${u},${v}) is already claimed`;
  }
  return null;
}

/** Verdict the server would reach for this human submission. */
export function checkMove(pos: Position, raw: number[][]): Verdict {
  if (pos.status === "finished") {
    return reject("game already finished");
  }
  if (pos.toMove !== pos.humanRole) {
    return reject("not the human's turn");
  }
  const reason =
    pos.humanRole === "M" ? makerViolation(pos, raw) : breakerViolation(pos, raw);
  return reason === null ? OK : reject(reason);
}
