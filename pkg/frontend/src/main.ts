/** Browser entry point: session setup form, SVG board, move composer,
 * history scrubber, and outcome banner. All game rules live in the
 * imported modules; this file is DOM wiring only.
 */

import { ConnectionLost, ServiceRejection, makeClient, type ApiClient } from "./api.js";
import {
  boardFromView,
  circularLayout,
  edgeKey,
  edgeStates,
  allEdges,
  unclaimedCount,
  type EdgeState,
} from "./board.js";
import {
  canSubmit,
  clearComposer,
  newComposer,
  offeredEdges,
  removeEdge,
  toggleVertex,
  tryAddEdge,
  type ComposerState,
} from "./composer.js";
import { bannerText, highlightSet } from "./highlight.js";
import { checkMove, type Position } from "./legality.js";
import { scrubTimeline } from "./replay.js";
import type { SessionView, StrategyInfo } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const BOARD_SIZE = 420;

interface AppState {
  client: ApiClient;
  strategies: StrategyInfo[];
  view: SessionView | null;
  composer: ComposerState | null;
  starCenter: number | null;
  scrub: number | null;
  readOnly: boolean;
  notice: string | null;
}

const state: AppState = {
  client: makeClient(resolveBaseUrl()),
  strategies: [],
  view: null,
  composer: null,
  starCenter: null,
  scrub: null,
  readOnly: false,
  notice: null,
};

function resolveBaseUrl(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("service") ?? `http://${window.location.hostname || "127.0.0.1"}:8642`;
}

function positionOf(view: SessionView): Position {
  return {
    n: view.n,
    bias: view.bias,
    humanRole: view.humanRole,
    toMove: view.toMove,
    status: view.status,
    board: boardFromView(view),
  };
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function must(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node;
}

function setNotice(text: string | null): void {
  state.notice = text;
  renderNotice();
}

function renderNotice(): void {
  const box = must("notice");
  box.textContent = state.notice ?? "";
  box.className = state.notice === null ? "notice hidden" : "notice";
}

async function guarded<T>(work: () => Promise<T>): Promise<T | null> {
  try {
    const out = await work();
    state.readOnly = false;
    return out;
  } catch (err) {
    if (err instanceof ServiceRejection) {
      setNotice(`${err.message}${err.reason !== null ? ` (${err.reason})` : ""}`);
      return null;
    }
    if (err instanceof ConnectionLost) {
      state.readOnly = true;
      setNotice("connection lost; board is read-only until retry succeeds");
      render();
      return null;
    }
    throw err;
  }
}

function newSessionForm(): void {
  const form = must("setup");
  form.replaceChildren();
  const roles: Array<[string, string]> = [["B", "Breaker (structured sets)"], ["M", "Maker (one edge)"]];

  const n = el("input", { type: "number", min: "3", max: "16", value: "10", id: "f-n" });
  const family = el("select", { id: "f-family" });
  for (const f of ["star", "matching", "clique", "free"]) {
    family.append(el("option", { value: f }, f));
  }
  const size = el("input", { type: "number", min: "1", max: "8", value: "3", id: "f-size" });
  const win = el("select", { id: "f-win" });
  for (const w of ["triangle", "connectivity", "hamilton-path", "hamilton-cycle", "min-degree-2"]) {
    win.append(el("option", { value: w }, w));
  }
  const role = el("select", { id: "f-role" });
  for (const [value, label] of roles) role.append(el("option", { value }, label));
  const strategy = el("select", { id: "f-strategy" });
  const seed = el("input", { type: "number", value: "0", id: "f-seed" });
  const start = el("button", { type: "button" }, "start game");

  const refreshStrategies = (): void => {
    const humanRole = (role as HTMLSelectElement).value;
    const needed = humanRole === "B" ? "maker" : "breaker";
    const fam = (family as HTMLSelectElement).value;
    const winId = (win as HTMLSelectElement).value.startsWith("min-degree")
      ? "min-degree"
      : (win as HTMLSelectElement).value;
    strategy.replaceChildren();
    for (const info of state.strategies) {
      if (info.role !== needed) continue;
      if (!info.families.includes(fam as never)) continue;
      if (!info.wins.includes(winId)) continue;
      strategy.append(el("option", { value: info.id }, info.id));
    }
    if (strategy.childElementCount === 0) {
      strategy.append(el("option", { value: "" }, "no compatible strategy"));
    }
  };
  family.addEventListener("change", refreshStrategies);
  win.addEventListener("change", refreshStrategies);
  role.addEventListener("change", refreshStrategies);
  refreshStrategies();

  start.addEventListener("click", () => {
    void startSession();
  });

  const row = (label: string, input: HTMLElement): HTMLElement => {
    const wrap = el("label", { class: "field" });
    wrap.append(el("span", {}, label), input);
    return wrap;
  };
  form.append(
    row("vertices", n),
    row("bias family", family),
    row("bias size", size),
    row("goal", win),
    row("your side", role),
    row("engine strategy", strategy),
    row("seed", seed),
    start,
  );
}

async function startSession(): Promise<void> {
  const read = (id: string): string => (must(id) as HTMLInputElement | HTMLSelectElement).value;
  const strategyId = read("f-strategy");
  if (strategyId === "") {
    setNotice("pick a goal/family combination with a compatible strategy");
    return;
  }
  const view = await guarded(() =>
    state.client.createSession({
      n: Number(read("f-n")),
      bias: { family: read("f-family") as never, size: Number(read("f-size")) },
      win: read("f-win"),
      strategy: strategyId,
      humanRole: read("f-role") as "M" | "B",
      seed: Number(read("f-seed")),
    }),
  );
  if (view === null) return;
  adoptView(view);
}

function adoptView(view: SessionView): void {
  state.view = view;
  state.composer = newComposer(view.bias);
  state.starCenter = null;
  state.scrub = null;
  setNotice(null);
  render();
}

async function refreshView(): Promise<void> {
  if (state.view === null) return;
  const id = state.view.id;
  const view = await guarded(() => state.client.getSession(id));
  if (view !== null) adoptView(view);
}

async function submitSelection(): Promise<void> {
  if (state.view === null || state.composer === null) return;
  const edges = state.composer.edges.map(([u, v]) => [u, v]);
  const verdict = checkMove(positionOf(state.view), edges);
  if (!verdict.ok) {
    setNotice(`illegal move: ${verdict.reason}`);
    return;
  }
  const id = state.view.id;
  const view = await guarded(() => state.client.submitMove(id, edges));
  if (view !== null) adoptView(view);
}

function onVertexClick(v: number): void {
  if (state.view === null || state.composer === null || interactionLocked()) return;
  const pos = positionOf(state.view);
  if (state.view.humanRole === "B" && state.view.bias.family === "clique") {
    const { result, state: next } = toggleVertex(state.composer, pos, v);
    if (!result.ok) {
      setNotice(result.reason);
      return;
    }
    state.composer = next;
    setNotice(null);
    render();
    return;
  }
  if (state.view.humanRole === "B" && state.view.bias.family === "star") {
    if (state.starCenter === null || state.starCenter === v) {
      state.starCenter = state.starCenter === null ? v : null;
      setNotice(null);
      render();
      return;
    }
    const { result, state: next } = tryAddEdge(state.composer, pos, state.starCenter, v);
    if (!result.ok) {
      setNotice(result.reason);
      return;
    }
    state.composer = next;
    setNotice(null);
    render();
  }
}

function onEdgeClick(u: number, v: number): void {
  if (state.view === null || state.composer === null || interactionLocked()) return;
  const pos = positionOf(state.view);
  const selected = state.composer.edges.some(([a, b]) => a === Math.min(u, v) && b === Math.max(u, v));
  if (selected) {
    state.composer = removeEdge(state.composer, u, v);
    setNotice(null);
    render();
    return;
  }
  const { result, state: next } = tryAddEdge(state.composer, pos, u, v);
  if (!result.ok) {
    setNotice(result.reason);
    return;
  }
  state.composer = next;
  setNotice(null);
  render();
}

function interactionLocked(): boolean {
  return (
    state.readOnly ||
    state.view === null ||
    state.view.status !== "awaiting-human" ||
    state.scrub !== null
  );
}

function renderBoard(): void {
  const host = must("board");
  host.replaceChildren();
  if (state.view === null) return;
  const view = state.view;

  const timeline = scrubTimeline(view);
  const live = state.scrub === null || state.scrub >= timeline.length - 1;
  const board = live ? boardFromView(view) : timeline[state.scrub ?? 0].board;
  const pending = live && state.composer !== null ? state.composer.edges : [];
  const states = edgeStates(board, view.n, pending);
  const winners = live ? highlightSet(view) : new Set<string>();

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${BOARD_SIZE} ${BOARD_SIZE}`);
  svg.setAttribute("class", "board-svg");

  const layout = circularLayout(view.n, BOARD_SIZE / 2, BOARD_SIZE / 2, BOARD_SIZE / 2 - 30);
  const at = (v: number): { x: number; y: number } => layout[v];

  const stroke: Record<EdgeState, string> = {
    unclaimed: "#d0d0d0",
    maker: "#c0392b",
    breaker: "#2567a8",
    pending: "#e8a03c",
  };
  for (const [u, v] of allEdges(view.n)) {
    const kind = states.get(edgeKey(u, v)) ?? "unclaimed";
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(at(u).x));
    line.setAttribute("y1", String(at(u).y));
    line.setAttribute("x2", String(at(v).x));
    line.setAttribute("y2", String(at(v).y));
    line.setAttribute("stroke", winners.has(edgeKey(u, v)) ? "#d4a017" : stroke[kind]);
    line.setAttribute(
      "stroke-width",
      winners.has(edgeKey(u, v)) ? "6" : kind === "unclaimed" ? "1" : "3.5",
    );
    if (kind === "pending") line.setAttribute("stroke-dasharray", "6 4");
    svg.append(line);

    // fat invisible twin so thin edges are clickable
    const hit = document.createElementNS(SVG_NS, "line");
    hit.setAttribute("x1", String(at(u).x));
    hit.setAttribute("y1", String(at(u).y));
    hit.setAttribute("x2", String(at(v).x));
    hit.setAttribute("y2", String(at(v).y));
    hit.setAttribute("stroke", "transparent");
    hit.setAttribute("stroke-width", "11");
    hit.setAttribute("class", "edge-hit");
    hit.addEventListener("click", () => onEdgeClick(u, v));
    svg.append(hit);
  }

  for (const { v, x, y } of layout) {
    const picked =
      (state.composer !== null && state.composer.vertices.includes(v)) || state.starCenter === v;
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(x));
    circle.setAttribute("cy", String(y));
    circle.setAttribute("r", "14");
    circle.setAttribute("fill", picked ? "#e8a03c" : "#f4f4f4");
    circle.setAttribute("stroke", "#555");
    circle.addEventListener("click", () => onVertexClick(v));
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(x));
    label.setAttribute("y", String(y + 4));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("class", "vertex-label");
    label.textContent = String(v);
    svg.append(circle, label);
  }
  host.append(svg);
}

function renderComposer(): void {
  const host = must("composer");
  host.replaceChildren();
  if (state.view === null || state.composer === null) return;
  const view = state.view;
  const pos = positionOf(view);

  host.append(el("h3", {}, view.humanRole === "M" ? "your edge" : `your ${view.bias.family} set`));
  host.append(el("p", { class: "hint" }, view.hints.constraint));

  const list = el("ul", { class: "selection" });
  for (const [u, v] of state.composer.edges) {
    const item = el("li", {}, `${u}-${v} `);
    const drop = el("button", { type: "button", class: "tiny" }, "x");
    drop.addEventListener("click", () => {
      if (state.composer === null) return;
      state.composer = removeEdge(state.composer, u, v);
      render();
    });
    item.append(drop);
    list.append(item);
  }
  host.append(list);

  if (view.humanRole === "B" && view.bias.family === "clique") {
    host.append(
      el("p", { class: "hint" }, `span: {${state.composer.vertices.join(", ")}} of ${view.bias.size}`),
    );
    const offered = offeredEdges(state.composer, pos);
    if (offered.length > 0) {
      const take = el("button", { type: "button" }, `take ${offered.length} offered edges`);
      take.addEventListener("click", () => {
        if (state.composer === null) return;
        let next = state.composer;
        for (const [u, v] of offered) {
          const attempt = tryAddEdge(next, pos, u, v);
          if (attempt.result.ok) next = attempt.state;
        }
        state.composer = next;
        render();
      });
      host.append(take);
    }
  }
  if (view.humanRole === "B" && view.bias.family === "star" && state.starCenter !== null) {
    host.append(el("p", { class: "hint" }, `center: ${state.starCenter}; click leaves`));
  }

  const submit = el("button", { type: "button", class: "submit" }, "submit move");
  submit.toggleAttribute(
    "disabled",
    interactionLocked() || !canSubmit(state.composer, pos),
  );
  submit.addEventListener("click", () => {
    void submitSelection();
  });
  const clear = el("button", { type: "button" }, "clear");
  clear.addEventListener("click", () => {
    if (state.composer === null) return;
    state.composer = clearComposer(state.composer);
    state.starCenter = null;
    render();
  });
  host.append(submit, clear);

  if (unclaimedCount(pos.board) === 0 && view.status === "awaiting-human") {
    host.append(el("p", { class: "hint" }, "board exhausted: submit the empty move"));
  }
}

function renderTimeline(): void {
  const host = must("timeline");
  host.replaceChildren();
  if (state.view === null) return;
  const points = scrubTimeline(state.view);
  const slider = el("input", {
    type: "range",
    min: "0",
    max: String(points.length - 1),
    value: String(state.scrub ?? points.length - 1),
  });
  slider.addEventListener("input", () => {
    const at = Number((slider as HTMLInputElement).value);
    state.scrub = at >= points.length - 1 ? null : at;
    render();
  });
  const current = state.scrub ?? points.length - 1;
  host.append(slider, el("p", { class: "hint" }, points[current].label));

  const log = el("ol", { class: "log" });
  for (const point of points.slice(1)) {
    log.append(el("li", {}, point.label));
  }
  host.append(log);
}

function renderBanner(): void {
  const host = must("banner");
  if (state.view === null) {
    host.textContent = "no game yet";
    host.className = "banner";
    return;
  }
  host.textContent = bannerText(state.view);
  host.className = state.view.winner === "M" ? "banner maker-win" :
    state.view.winner === "B" ? "banner breaker-win" : "banner";
}

function renderRetry(): void {
  const host = must("retry");
  host.replaceChildren();
  if (!state.readOnly) return;
  const retry = el("button", { type: "button" }, "retry connection");
  retry.addEventListener("click", () => {
    void refreshView();
  });
  host.append(retry);
}

function render(): void {
  renderBoard();
  renderComposer();
  renderTimeline();
  renderBanner();
  renderRetry();
  renderNotice();
}

async function boot(): Promise<void> {
  const strategies = await guarded(() => state.client.listStrategies());
  if (strategies !== null) state.strategies = strategies;
  newSessionForm();
  render();
}

void boot();
