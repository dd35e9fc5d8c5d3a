// Pattern diagram: player nodes with overall pass-count bars on the
// left, one miniature pitch per pattern on the right, counter-attack
// patterns in a visually separated bottom row.  Hovering a pattern
// highlights exactly its key players; hovering a player is forwarded so
// the flow view can highlight that player's phases.

import type { PatternRecord, PatternsPayload } from "./api.js";
import type { ViewState } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface DiagramHandlers {
  onHoverPattern(patternId: number | null): void;
  onHoverPlayer(label: string | null): void;
  onZoomPattern(patternId: number): void;
}

const PITCH_W = 126; // px; pitch is 105 x 68 m drawn at 1.2 px/m
const PITCH_H = 81.6;

function heatmapPitch(pattern: PatternRecord): SVGSVGElement {
  const el = document.createElementNS(SVG_NS, "svg");
  el.setAttribute("width", String(PITCH_W));
  el.setAttribute("height", String(PITCH_H));
  el.setAttribute("viewBox", `0 0 ${PITCH_W} ${PITCH_H}`);
  el.classList.add("pitch");
  const { rows, cols, bins } = pattern.heatmap;
  let top = 0;
  for (const row of bins) for (const v of row) top = Math.max(top, v);
  const cellW = PITCH_W / rows; // bins[i][j]: i along pitch length
  const cellH = PITCH_H / cols;
  for (let i = 0; i < rows; i += 1) {
    for (let j = 0; j < cols; j += 1) {
      const v = bins[i][j];
      if (v <= 0) continue;
      const rect = document.createElementNS(SVG_NS, "rect");
      rect.setAttribute("x", String(i * cellW));
      rect.setAttribute("y", String(PITCH_H - (j + 1) * cellH));
      rect.setAttribute("width", String(cellW));
      rect.setAttribute("height", String(cellH));
      rect.setAttribute("class", "heat");
      rect.setAttribute("fill-opacity", String(0.15 + 0.85 * (v / top)));
      el.appendChild(rect);
    }
  }
  const outline = document.createElementNS(SVG_NS, "rect");
  outline.setAttribute("x", "0.5");
  outline.setAttribute("y", "0.5");
  outline.setAttribute("width", String(PITCH_W - 1));
  outline.setAttribute("height", String(PITCH_H - 1));
  outline.setAttribute("class", "pitch-outline");
  el.appendChild(outline);
  return el;
}

function patternCard(
  payload: PatternsPayload,
  pattern: PatternRecord,
  state: ViewState,
  handlers: DiagramHandlers,
): HTMLElement {
  const card = document.createElement("div");
  card.className = "pattern-card";
  card.dataset.pattern = String(pattern.pattern_id);
  card.dataset.style = pattern.style;
  if (state.hoveredPattern === pattern.pattern_id) card.classList.add("hovered");
  if (state.zoomedPattern === pattern.pattern_id) card.classList.add("zoomed");

  const title = document.createElement("div");
  title.className = "pattern-title";
  title.textContent = `P${pattern.pattern_id} (${pattern.style})`;
  card.appendChild(title);

  card.appendChild(heatmapPitch(pattern));

  const maxFreq = Math.max(...payload.patterns.map((p) => p.frequency), 1);
  const freq = document.createElement("div");
  freq.className = "bar frequency";
  freq.style.width = `${(100 * pattern.frequency) / maxFreq}%`;
  freq.title = `${pattern.frequency} phases, ${pattern.shootings} shootings`;
  card.appendChild(freq);

  const keys = document.createElement("div");
  keys.className = "key-players";
  keys.textContent = pattern.key_players.join(" ");
  card.appendChild(keys);

  // Within-pattern pass counts, drawn dark when this card is hovered.
  const withinWrap = document.createElement("div");
  withinWrap.className = "within-bars";
  const maxWithin = Math.max(...pattern.pass_counts, 1);
  pattern.pass_counts.forEach((count, i) => {
    const bar = document.createElement("div");
    bar.className = "bar within";
    if (state.hoveredPattern === pattern.pattern_id) bar.classList.add("dark");
    bar.style.height = `${(100 * count) / maxWithin}%`;
    bar.title = `${payload.players[i].label}: ${count}`;
    withinWrap.appendChild(bar);
  });
  card.appendChild(withinWrap);

  card.addEventListener("mouseenter", () =>
    handlers.onHoverPattern(pattern.pattern_id),
  );
  card.addEventListener("mouseleave", () => handlers.onHoverPattern(null));
  card.addEventListener("click", () => handlers.onZoomPattern(pattern.pattern_id));
  return card;
}

export function renderPatternDiagram(
  container: HTMLElement,
  payload: PatternsPayload | null,
  state: ViewState,
  handlers: DiagramHandlers,
): void {
  container.replaceChildren();
  container.classList.add("pattern-diagram");
  if (!payload || payload.patterns.length === 0) {
    const empty = document.createElement("div");
    empty.className = "empty-state";
    empty.textContent = payload
      ? "no patterns in this model"
      : "no model selected";
    container.appendChild(empty);
    return;
  }

  const hovered = payload.patterns.find(
    (p) => p.pattern_id === state.hoveredPattern,
  );
  const highlighted = new Set(hovered ? hovered.key_players : []);

  const players = document.createElement("div");
  players.className = "player-column";
  const maxCount = Math.max(...payload.players.map((p) => p.pass_count), 1);
  for (const entry of payload.players) {
    const node = document.createElement("div");
    node.className = "player-node";
    node.dataset.player = entry.label;
    if (highlighted.has(entry.label)) node.classList.add("highlight");
    if (state.hoveredPlayer === entry.label) node.classList.add("active");

    const label = document.createElement("span");
    label.className = "player-label";
    label.textContent = entry.name ?? entry.label;
    if (entry.role) label.title = entry.role;
    node.appendChild(label);

    const bar = document.createElement("div");
    bar.className = "bar overall";
    bar.style.width = `${(100 * entry.pass_count) / maxCount}%`;
    bar.title = `${entry.pass_count} passes`;
    node.appendChild(bar);

    node.addEventListener("mouseenter", () => handlers.onHoverPlayer(entry.label));
    node.addEventListener("mouseleave", () => handlers.onHoverPlayer(null));
    players.appendChild(node);
  }
  container.appendChild(players);

  const buildUp = payload.patterns.filter((p) => p.style !== "counter-attack");
  const counters = payload.patterns.filter((p) => p.style === "counter-attack");

  const grid = document.createElement("div");
  grid.className = "pattern-grid";
  for (const pattern of buildUp) {
    grid.appendChild(patternCard(payload, pattern, state, handlers));
  }
  container.appendChild(grid);

  if (counters.length > 0) {
    const divider = document.createElement("hr");
    divider.className = "counter-divider";
    container.appendChild(divider);
    const row = document.createElement("div");
    row.className = "counter-row";
    for (const pattern of counters) {
      const card = patternCard(payload, pattern, state, handlers);
      card.classList.add("counter");
      row.appendChild(card);
    }
    container.appendChild(row);
  }
}
