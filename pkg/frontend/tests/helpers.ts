/** Fixture loading for the offline test suite.
 *
 * The fixtures are frozen service transcripts (see scripts/ in the parent
 * package). Loading is strict: a malformed fixture fails the run instead
 * of silently shrinking coverage.
 */

import { readFileSync } from "node:fs";

import type { Position } from "../src/legality.js";
import type { Bias, PlayerId } from "../src/types.js";

export interface ParityCase {
  n: number;
  bias: Bias;
  humanRole: PlayerId;
  toMove: PlayerId;
  status: string;
  board: string;
  edges: number[][];
  serverOk: boolean;
  serverCode: string | null;
  serverReason: string | null;
}

export interface ParityFixture {
  meta: { cases: number; accepted: number; rejected: number };
  cases: ParityCase[];
}

function loadJson(name: string): unknown {
  const url = new URL(`../fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf8")) as unknown;
}

function asRecord(raw: unknown, what: string): Record<string, unknown> {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new Error(`fixture ${what} is not an object`);
  }
  return raw as Record<string, unknown>;
}

function parseCase(raw: unknown, index: number): ParityCase {
  const rec = asRecord(raw, `case ${index}`);
  const bias = asRecord(rec.bias, `case ${index} bias`);
  const server = asRecord(rec.server, `case ${index} server`);
  if (typeof rec.n !== "number" || typeof rec.board !== "string") {
    throw new Error(`case ${index}: bad n/board`);
  }
  if (rec.human_role !== "M" && rec.human_role !== "B") {
    throw new Error(`case ${index}: bad human_role`);
  }
  if (rec.to_move !== "M" && rec.to_move !== "B") {
    throw new Error(`case ${index}: bad to_move`);
  }
  if (typeof rec.status !== "string" || !Array.isArray(rec.edges)) {
    throw new Error(`case ${index}: bad status/edges`);
  }
  if (typeof bias.family !== "string" || typeof bias.size !== "number") {
    throw new Error(`case ${index}: bad bias`);
  }
  if (typeof server.ok !== "boolean") {
    throw new Error(`case ${index}: bad server verdict`);
  }
  return {
    n: rec.n,
    bias: { family: bias.family as Bias["family"], size: bias.size },
    humanRole: rec.human_role,
    toMove: rec.to_move,
    status: rec.status,
    board: rec.board,
    edges: rec.edges as number[][],
    serverOk: server.ok,
    serverCode: typeof server.code === "string" ? server.code : null,
    serverReason: typeof server.reason === "string" ? server.reason : null,
  };
}

export function loadParityFixture(): ParityFixture {
  const raw = asRecord(loadJson("parity.json"), "parity");
  const meta = asRecord(raw.meta, "parity meta");
  if (!Array.isArray(raw.cases)) {
    throw new Error("parity fixture has no cases array");
  }
  return {
    meta: {
      cases: Number(meta.cases),
      accepted: Number(meta.accepted),
      rejected: Number(meta.rejected),
    },
    cases: raw.cases.map((c, i) => parseCase(c, i)),
  };
}

export interface SessionFixture {
  config: Record<string, unknown>;
  submissions: number[][][];
  views: unknown[];
  strategies: unknown;
}

export function loadSessionFixture(): SessionFixture {
  const raw = asRecord(loadJson("session.json"), "session");
  if (!Array.isArray(raw.views) || !Array.isArray(raw.submissions)) {
    throw new Error("session fixture missing views/submissions");
  }
  return {
    config: asRecord(raw.config, "session config"),
    submissions: raw.submissions as number[][][],
    views: raw.views,
    strategies: raw.strategies,
  };
}

export function positionOfCase(c: ParityCase): Position {
  return {
    n: c.n,
    bias: c.bias,
    humanRole: c.humanRole,
    toMove: c.toMove,
    status: c.status,
    board: c.board,
  };
}
