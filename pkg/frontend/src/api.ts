/** Thin HTTP client for the play service.
 *
 * Two failure channels: ServiceRejection carries a structured error the
 * server produced (illegal move, unknown strategy, finished session);
 * ConnectionLost flags transport trouble so the UI can drop to read-only
 * mode and offer a retry.
 */

import {
  parseServiceError,
  parseSessionView,
  parseStrategyList,
  type Bias,
  type PlayerId,
  type SessionView,
  type StrategyInfo,
} from "./types.js";

export class ServiceRejection extends Error {
  code: string;
  status: number;
  detail: Record<string, unknown>;

  constructor(status: number, code: string, message: string, detail: Record<string, unknown>) {
    super(message);
    this.name = "ServiceRejection";
    this.status = status;
    this.code = code;
    this.detail = detail;
  }

  get reason(): string | null {
    const r = this.detail.reason;
    return typeof r === "string" ? r : null;
  }
}

export class ConnectionLost extends Error {
  constructor(cause: string) {
    super(`connection lost: ${cause}`);
    this.name = "ConnectionLost";
  }
}

export interface NewSessionRequest {
  n: number;
  bias: Bias;
  win: string;
  strategy: string;
  humanRole: PlayerId;
  seed: number;
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface ApiClient {
  listStrategies(): Promise<StrategyInfo[]>;
  createSession(req: NewSessionRequest): Promise<SessionView>;
  getSession(id: string): Promise<SessionView>;
  submitMove(id: string, edges: number[][]): Promise<SessionView>;
}

async function request(fetchFn: FetchLike, url: string, init?: RequestInit): Promise<unknown> {
  let response: Response;
  try {
    response = await fetchFn(url, init);
  } catch (err) {
    throw new ConnectionLost(err instanceof Error ? err.message : String(err));
  }
  let body: unknown;
  try {
    body = await response.json();
  } catch {
    throw new ConnectionLost(`bad response body (status ${response.status})`);
  }
  if (!response.ok) {
    const parsed = parseServiceError(body);
    if (parsed === null) {
      throw new ConnectionLost(`unreadable error (status ${response.status})`);
    }
    throw new ServiceRejection(response.status, parsed.code, parsed.message, parsed.detail);
  }
  return body;
}

export function makeClient(baseUrl: string, fetchFn?: FetchLike): ApiClient {
  const base = baseUrl.replace(/\/+$/, "");
  const doFetch: FetchLike = fetchFn ?? ((url, init) => fetch(url, init));
  const post = { method: "POST", headers: { "content-type": "application/json" } };

  return {
    async listStrategies(): Promise<StrategyInfo[]> {
      const body = await request(doFetch, `${base}/strategies`);
      const list = parseStrategyList(body);
      if (list === null) throw new ConnectionLost("malformed strategy list");
      return list;
    },

    async createSession(req: NewSessionRequest): Promise<SessionView> {
      const payload = {
        n: req.n,
        bias: req.bias,
        win: req.win,
        strategy: req.strategy,
        human_role: req.humanRole,
        seed: req.seed,
      };
      const body = await request(doFetch, `${base}/sessions`, {
        ...post,
        body: JSON.stringify(payload),
      });
      const view = parseSessionView(body);
      if (view === null) throw new ConnectionLost("malformed session view");
      return view;
    },

    async getSession(id: string): Promise<SessionView> {
      const body = await request(doFetch, `${base}/sessions/${encodeURIComponent(id)}`);
      const view = parseSessionView(body);
      if (view === null) throw new ConnectionLost("malformed session view");
      return view;
    },

    async submitMove(id: string, edges: number[][]): Promise<SessionView> {
      const body = await request(doFetch, `${base}/sessions/${encodeURIComponent(id)}/moves`, {
        ...post,
        body: JSON.stringify({ edges }),
      });
      const view = parseSessionView(body);
      if (view === null) throw new ConnectionLost("malformed session view");
      return view;
    },
  };
}
