/** Incremental move composer, one mode per bias family.
 *
 * The selection is kept legal at every step: an addition that would break
 * the structure (a third endpoint in a matching pair, a leaf off-center in
 * a star, a vertex past the clique span) is rejected with the reason, so
 * whatever the composer holds can always be submitted.
 */

import { edgeIndex, unclaimedCount } from "./board.js";
import { structureViolation, type Position } from "./legality.js";
import type { Bias, Edge } from "./types.js";

export interface ComposerState {
  bias: Bias;
  edges: Edge[];
  /** Clique mode: picked span vertices. Star mode: chosen center, if any. */
  vertices: number[];
  center: number | null;
}

export interface AddResult {
  ok: boolean;
  reason: string | null;
}

const ADDED: AddResult = { ok: true, reason: null };

function refused(reason: string): AddResult {
  return { ok: false, reason };
}

export function newComposer(bias: Bias): ComposerState {
  return { bias, edges: [], vertices: [], center: null };
}

export function clearComposer(state: ComposerState): ComposerState {
  return newComposer(state.bias);
}

function canonical(u: number, v: number): Edge {
  return u < v ? [u, v] : [v, u];
}

function holds(state: ComposerState, edge: Edge): boolean {
  return state.edges.some(([u, v]) => u === edge[0] && v === edge[1]);
}

/** Try to extend the selection with one edge; the state is not mutated. */
export function tryAddEdge(
  state: ComposerState,
  pos: Position,
  a: number,
  b: number,
): { result: AddResult; state: ComposerState } {
  if (a === b || a < 0 || b < 0 || a >= pos.n || b >= pos.n) {
    return { result: refused("not a board edge"), state };
  }
  const edge = canonical(a, b);
  if (holds(state, edge)) {
    return { result: refused("edge already selected"), state };
  }
  if (pos.board[edgeIndex(pos.n, edge[0], edge[1])] !== ".") {
    return { result: refused("edge already claimed"), state };
  }
  if (pos.humanRole === "M") {
    if (state.edges.length >= 1) {
      return { result: refused("one edge per turn") , state };
    }
    return { result: ADDED, state: { ...state, edges: [edge] } };
  }
  const next = [...state.edges, edge];
  const violation = structureViolation(state.bias, next);
  if (violation !== null) {
    return { result: refused(violation), state };
  }
  const center = state.bias.family === "star" ? starCenter(next) : null;
  return { result: ADDED, state: { ...state, edges: next, center } };
}

export function removeEdge(state: ComposerState, a: number, b: number): ComposerState {
  const [u, v] = canonical(a, b);
  const edges = state.edges.filter(([x, y]) => !(x === u && y === v));
  const center = state.bias.family === "star" ? starCenter(edges) : state.center;
  return { ...state, edges, center };
}

/** The common endpoint of a star selection (lowest when ambiguous). */
export function starCenter(edges: Edge[]): number | null {
  if (edges.length === 0) return null;
  let common = new Set<number>(edges[0]);
  for (const [u, v] of edges.slice(1)) {
    common = new Set([u, v].filter((x) => common.has(x)));
  }
  if (common.size === 0) return null;
  return Math.min(...common);
}

/** Clique mode: toggle a span vertex, refusing to exceed the span limit. */
export function toggleVertex(
  state: ComposerState,
  pos: Position,
  v: number,
): { result: AddResult; state: ComposerState } {
  if (state.bias.family !== "clique") {
    return { result: refused("vertex picking is for clique bias"), state };
  }
  if (v < 0 || v >= pos.n) {
    return { result: refused("no such vertex"), state };
  }
  if (state.vertices.includes(v)) {
    const vertices = state.vertices.filter((x) => x !== v);
    const edges = state.edges.filter(([a, b]) => a !== v && b !== v);
    return { result: ADDED, state: { ...state, vertices, edges } };
  }
  if (state.vertices.length >= state.bias.size) {
    return { result: refused(`clique span is at most ${state.bias.size} vertices`), state };
  }
  return { result: ADDED, state: { ...state, vertices: [...state.vertices, v] } };
}

/** Unclaimed edges inside the picked clique span, ready to add. */
export function offeredEdges(state: ComposerState, pos: Position): Edge[] {
  const out: Edge[] = [];
  const picked = [...state.vertices].sort((x, y) => x - y);
  for (let i = 0; i < picked.length; i++) {
    for (let j = i + 1; j < picked.length; j++) {
      const [u, v] = [picked[i], picked[j]];
      if (pos.board[edgeIndex(pos.n, u, v)] === "." && !holds(state, [u, v])) {
        out.push([u, v]);
      }
    }
  }
  return out;
}

/** An empty submission is only legal once the board is exhausted. */
export function canSubmit(state: ComposerState, pos: Position): boolean {
  if (state.edges.length > 0) return true;
  return unclaimedCount(pos.board) === 0;
}
