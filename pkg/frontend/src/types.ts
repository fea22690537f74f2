/** Service payload types and defensive parsers.
 *
 * Every parser takes unknown JSON and returns null when the shape is off,
 * so a bad or truncated response never reaches rendering code.
 */

export type PlayerId = "M" | "B";
export type Family = "clique" | "matching" | "star" | "free";
export type Edge = [number, number];

export interface Bias {
  family: Family;
  size: number;
}

export interface MoveRecord {
  p: PlayerId;
  e: Edge[];
}

export interface StructureHints {
  family: Family;
  size: number;
  unclaimed: number;
  emptyMoveAllowed: boolean;
  maxEdges: number;
  constraint: string;
  spanLimit: number | null;
}

export type SessionStatus = "awaiting-human" | "awaiting-engine" | "finished";

export interface SessionView {
  id: string;
  n: number;
  bias: Bias;
  win: string;
  first: PlayerId;
  toMove: PlayerId;
  humanRole: PlayerId;
  engineRole: PlayerId;
  strategy: string;
  seed: number;
  status: SessionStatus;
  winner: PlayerId | null;
  reason: string | null;
  moves: MoveRecord[];
  makerEdges: Edge[];
  breakerEdges: Edge[];
  hints: StructureHints;
  winningStructure: Edge[] | null;
  record: string;
}

export interface ServiceError {
  code: string;
  message: string;
  detail: Record<string, unknown>;
}

export interface StrategyInfo {
  id: string;
  role: "maker" | "breaker";
  families: Family[];
  wins: string[];
  first: PlayerId | null;
  summary: string;
}

const FAMILIES: readonly string[] = ["clique", "matching", "star", "free"];

function isRecord(raw: unknown): raw is Record<string, unknown> {
  return typeof raw === "object" && raw !== null && !Array.isArray(raw);
}

function isPlayer(raw: unknown): raw is PlayerId {
  return raw === "M" || raw === "B";
}

export function parseEdge(raw: unknown): Edge | null {
  if (!Array.isArray(raw) || raw.length !== 2) return null;
  const [u, v] = raw;
  if (typeof u !== "number" || typeof v !== "number") return null;
  if (!Number.isInteger(u) || !Number.isInteger(v)) return null;
  return [u, v];
}

export function parseEdgeList(raw: unknown): Edge[] | null {
  if (!Array.isArray(raw)) return null;
  const out: Edge[] = [];
  for (const item of raw) {
    const edge = parseEdge(item);
    if (edge === null) return null;
    out.push(edge);
  }
  return out;
}

export function parseBias(raw: unknown): Bias | null {
  if (!isRecord(raw)) return null;
  const family = raw.family;
  const size = raw.size;
  if (typeof family !== "string" || !FAMILIES.includes(family)) return null;
  if (typeof size !== "number" || !Number.isInteger(size) || size < 1) return null;
  return { family: family as Family, size };
}

function parseMoves(raw: unknown): MoveRecord[] | null {
  if (!Array.isArray(raw)) return null;
  const out: MoveRecord[] = [];
  for (const item of raw) {
    if (!isRecord(item) || !isPlayer(item.p)) return null;
    const edges = parseEdgeList(item.e);
    if (edges === null) return null;
    out.push({ p: item.p, e: edges });
  }
  return out;
}

function parseHints(raw: unknown): StructureHints | null {
  if (!isRecord(raw)) return null;
  const bias = parseBias(raw);
  if (bias === null) return null;
  if (typeof raw.unclaimed !== "number" || typeof raw.max_edges !== "number") return null;
  if (typeof raw.empty_move_allowed !== "boolean") return null;
  if (typeof raw.constraint !== "string") return null;
  const span = raw.span_limit;
  return {
    family: bias.family,
    size: bias.size,
    unclaimed: raw.unclaimed,
    emptyMoveAllowed: raw.empty_move_allowed,
    maxEdges: raw.max_edges,
    constraint: raw.constraint,
    spanLimit: typeof span === "number" ? span : null,
  };
}

export function parseSessionView(raw: unknown): SessionView | null {
  if (!isRecord(raw)) return null;
  const bias = parseBias(raw.bias);
  const hints = parseHints(raw.hints);
  const moves = parseMoves(raw.moves);
  const makerEdges = parseEdgeList(raw.maker_edges);
  const breakerEdges = parseEdgeList(raw.breaker_edges);
  if (bias === null || hints === null || moves === null) return null;
  if (makerEdges === null || breakerEdges === null) return null;
  if (typeof raw.id !== "string" || typeof raw.n !== "number") return null;
  if (!Number.isInteger(raw.n) || raw.n < 3) return null;
  if (typeof raw.win !== "string" || typeof raw.strategy !== "string") return null;
  if (typeof raw.seed !== "number" || typeof raw.record !== "string") return null;
  if (!isPlayer(raw.first) || !isPlayer(raw.to_move)) return null;
  if (!isPlayer(raw.human_role) || !isPlayer(raw.engine_role)) return null;
  const status = raw.status;
  if (status !== "awaiting-human" && status !== "awaiting-engine" && status !== "finished") {
    return null;
  }
  const winner = raw.winner;
  if (winner !== null && !isPlayer(winner)) return null;
  const reason = raw.reason;
  if (reason !== null && typeof reason !== "string") return null;
  let winning: Edge[] | null = null;
  if (raw.winning_structure !== null && raw.winning_structure !== undefined) {
    winning = parseEdgeList(raw.winning_structure);
    if (winning === null) return null;
  }
  return {
    id: raw.id,
    n: raw.n,
    bias,
    win: raw.win,
    first: raw.first,
    toMove: raw.to_move,
    humanRole: raw.human_role,
    engineRole: raw.engine_role,
    strategy: raw.strategy,
    seed: raw.seed,
    status,
    winner: winner ?? null,
    reason: reason ?? null,
    moves,
    makerEdges,
    breakerEdges,
    hints,
    winningStructure: winning,
    record: raw.record,
  };
}

export function parseServiceError(raw: unknown): ServiceError | null {
  if (!isRecord(raw)) return null;
  if (typeof raw.code !== "string" || typeof raw.message !== "string") return null;
  const detail = isRecord(raw.detail) ? raw.detail : {};
  return { code: raw.code, message: raw.message, detail };
}

export function parseStrategyList(raw: unknown): StrategyInfo[] | null {
  if (!isRecord(raw) || !Array.isArray(raw.strategies)) return null;
  const out: StrategyInfo[] = [];
  for (const item of raw.strategies) {
    if (!isRecord(item)) return null;
    if (typeof item.id !== "string" || typeof item.summary !== "string") return null;
    if (item.role !== "maker" && item.role !== "breaker") return null;
    if (!Array.isArray(item.families) || !Array.isArray(item.wins)) return null;
    const families: Family[] = [];
    for (const f of item.families) {
      if (typeof f !== "string" || !FAMILIES.includes(f)) return null;
      families.push(f as Family);
    }
    const wins: string[] = [];
    for (const w of item.wins) {
      if (typeof w !== "string") return null;
      wins.push(w);
    }
    const first = item.first;
    if (first !== null && !isPlayer(first)) return null;
    out.push({
      id: item.id,
      role: item.role,
      families,
      wins,
      first: first ?? null,
      summary: item.summary,
    });
  }
  return out;
}
