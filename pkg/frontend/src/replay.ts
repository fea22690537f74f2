/** Replay of a session's move history, for the scrubber and for checking
 * that a served view equals the replay of its own history.
 */

import { boardFromView, claimEdges, emptyBoard } from "./board.js";
import type { MoveRecord, SessionView } from "./types.js";

/** Board string after the first `count` moves of the history. */
export function replayPrefix(n: number, moves: MoveRecord[], count: number): string {
  let board = emptyBoard(n);
  const upto = Math.max(0, Math.min(count, moves.length));
  for (let i = 0; i < upto; i++) {
    board = claimEdges(board, n, moves[i].e, moves[i].p);
  }
  return board;
}

export function fullReplay(view: SessionView): string {
  return replayPrefix(view.n, view.moves, view.moves.length);
}

/** A view is internally consistent when its edge lists equal its replay. */
export function replayMatchesView(view: SessionView): boolean {
  return fullReplay(view) === boardFromView(view);
}

export interface ScrubPoint {
  index: number;
  label: string;
  board: string;
}

/** One board snapshot per history prefix, for the timeline scrubber. */
export function scrubTimeline(view: SessionView): ScrubPoint[] {
  const points: ScrubPoint[] = [{ index: 0, label: "start", board: emptyBoard(view.n) }];
  for (let i = 1; i <= view.moves.length; i++) {
    const move = view.moves[i - 1];
    const who = move.p === "M" ? "Maker" : "Breaker";
    const what = move.e.length === 0 ? "passes" : move.e.map(([u, v]) => `${u}-${v}`).join(" ");
    points.push({
      index: i,
      label: `${i}. ${who} ${what}`,
      board: replayPrefix(view.n, view.moves, i),
    });
  }
  return points;
}
