// Phase view: node-link diagram of one phase's passes and dribbles over
// a pitch, with an animated replay when tracking frames exist.
// Selecting a pass overlays the opposing players at that moment and
// highlights its row in the statistics table; covered-area and pressure
// cells show the API values verbatim.

import type { PhaseDetail, PlayerStatsPayload, Point } from "./api.js";
import type { PhaseMode, ViewState } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface PhaseViewOptions {
  selectedPass: number | null;
  frameIndex: number;
  playerStats: PlayerStatsPayload | null;
}

export interface PhaseHandlers {
  onSelectPass(index: number): void;
  onSetMode(mode: PhaseMode): void;
  onFrameIndex(index: number): void;
  onPlayerStats(label: string): void;
}

const SCALE = 4; // px per meter
const W = 105 * SCALE;
const H = 68 * SCALE;

function px(p: Point): { x: number; y: number } {
  // Pitch y runs bottom-up; the screen's runs top-down.
  return { x: p.x * SCALE, y: H - p.y * SCALE };
}

function mark(parent: SVGElement, tag: string, attrs: Record<string, string>): SVGElement {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  parent.appendChild(el);
  return el;
}

function endMarker(svg: SVGElement, at: Point, tag: string): void {
  const { x, y } = px(at);
  if (tag === "shot" || tag === "goal") {
    // Arrow: the phase ended with a strike at goal.
    mark(svg, "path", {
      d: `M ${x} ${y} l 14 -14 m 0 10 l 0 -10 l -10 0`,
      class: "end-marker shot",
    });
  } else if (tag === "interception" || tag === "possession-gain") {
    // Cross: the pass was picked off.
    mark(svg, "path", {
      d: `M ${x - 7} ${y - 7} l 14 14 m 0 -14 l -14 14`,
      class: "end-marker interception",
    });
  } else {
    mark(svg, "circle", { cx: String(x), cy: String(y), r: "6", class: `end-marker ${tag}` });
  }
}

function staticDiagram(
  detail: PhaseDetail,
  options: PhaseViewOptions,
  handlers: PhaseHandlers,
): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(W));
  svg.setAttribute("height", String(H));
  svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
  svg.classList.add("pitch", "phase-pitch");
  mark(svg, "rect", {
    x: "1",
    y: "1",
    width: String(W - 2),
    height: String(H - 2),
    class: "pitch-outline",
  });
  mark(svg, "line", {
    x1: String(W / 2),
    y1: "1",
    x2: String(W / 2),
    y2: String(H - 1),
    class: "halfway",
  });

  for (const dribble of detail.dribbles) {
    const a = px(dribble.start);
    const b = px(dribble.end);
    mark(svg, "line", {
      x1: String(a.x),
      y1: String(a.y),
      x2: String(b.x),
      y2: String(b.y),
      class: "dribble",
    });
  }

  detail.passes.forEach((pass, index) => {
    const a = px(pass.origin);
    const b = px(pass.target);
    const line = mark(svg, "line", {
      x1: String(a.x),
      y1: String(a.y),
      x2: String(b.x),
      y2: String(b.y),
      class: "pass",
    });
    line.setAttribute("data-pass", String(index));
    if (options.selectedPass === index) line.classList.add("selected");
    line.addEventListener("click", () => handlers.onSelectPass(index));

    const dot = mark(svg, "circle", {
      cx: String(a.x),
      cy: String(a.y),
      r: "7",
      class: "player-dot",
    });
    dot.setAttribute("data-player", pass.passer);
    const name = mark(svg, "text", {
      x: String(a.x),
      y: String(a.y - 10),
      "text-anchor": "middle",
      class: "player-name",
    });
    name.textContent = pass.passer;
  });

  const last = detail.passes[detail.passes.length - 1];
  if (last) {
    const b = px(last.target);
    const dot = mark(svg, "circle", {
      cx: String(b.x),
      cy: String(b.y),
      r: "7",
      class: "player-dot",
    });
    dot.setAttribute("data-player", last.receiver);
    endMarker(svg, last.target, detail.end_event.tag);
  }

  // Defense snapshot for the selected pass: the opposing players at the
  // nearest tracked moment.
  if (options.selectedPass !== null) {
    const row = detail.defense[options.selectedPass];
    if (row) {
      for (const opponent of row.opponents) {
        const o = px(opponent);
        const dot = mark(svg, "circle", {
          cx: String(o.x),
          cy: String(o.y),
          r: "6",
          class: "opponent-dot",
        });
        dot.setAttribute("data-player", opponent.player);
      }
    }
  }
  return svg;
}

function animatedDiagram(detail: PhaseDetail, options: PhaseViewOptions): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(W));
  svg.setAttribute("height", String(H));
  svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
  svg.classList.add("pitch", "phase-pitch", "animated");
  mark(svg, "rect", {
    x: "1",
    y: "1",
    width: String(W - 2),
    height: String(H - 2),
    class: "pitch-outline",
  });
  const frame = detail.frames[Math.min(options.frameIndex, detail.frames.length - 1)];
  if (!frame) return svg;
  for (const player of frame.positions) {
    const p = px(player);
    const dot = mark(svg, "circle", {
      cx: String(p.x),
      cy: String(p.y),
      r: "6",
      class: "player-dot",
    });
    dot.setAttribute("data-player", player.player);
  }
  if (frame.ball) {
    const b = px(frame.ball);
    mark(svg, "circle", { cx: String(b.x), cy: String(b.y), r: "3", class: "ball" });
  }
  return svg;
}

function statisticsTable(
  detail: PhaseDetail,
  options: PhaseViewOptions,
  handlers: PhaseHandlers,
): HTMLElement {
  const table = document.createElement("table");
  table.className = "statistics";
  const head = table.createTHead().insertRow();
  for (const text of ["pass", "t", "covered area", "pressure"]) {
    const th = document.createElement("th");
    th.textContent = text;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const row of detail.statistics) {
    const tr = body.insertRow();
    tr.dataset.pass = String(row.pass_index);
    if (options.selectedPass === row.pass_index) tr.classList.add("selected");
    tr.insertCell().textContent = String(row.pass_index);
    tr.insertCell().textContent = String(row.t);
    // API values verbatim: never reformatted, never recomputed.
    const area = tr.insertCell();
    area.className = "covered-area";
    area.textContent = row.covered_area === null ? "n/a" : String(row.covered_area);
    const pressure = tr.insertCell();
    pressure.className = "pressure";
    pressure.textContent = row.pressure === null ? "n/a" : String(row.pressure);
    tr.addEventListener("click", () => handlers.onSelectPass(row.pass_index));
  }
  return table;
}

function lineup(detail: PhaseDetail, options: PhaseViewOptions, handlers: PhaseHandlers): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "lineup";
  const labels = new Set<string>();
  for (const pass of detail.passes) {
    labels.add(pass.passer);
    labels.add(pass.receiver);
  }
  for (const label of [...labels].sort()) {
    const button = document.createElement("button");
    button.className = "lineup-player";
    button.dataset.player = label;
    button.textContent = label;
    button.addEventListener("click", () => handlers.onPlayerStats(label));
    panel.appendChild(button);
  }
  if (options.playerStats) {
    const stats = options.playerStats;
    const box = document.createElement("dl");
    box.className = "player-stats";
    const rows: [string, string][] = [
      ["player", stats.player],
      ["total distance", String(stats.total_distance)],
      ["max speed", String(stats.max_speed)],
      ["dash distance", String(stats.dash_distance)],
      ["passes", String(stats.pass_count)],
    ];
    for (const [term, value] of rows) {
      const dt = document.createElement("dt");
      dt.textContent = term;
      const dd = document.createElement("dd");
      dd.textContent = value;
      box.append(dt, dd);
    }
    panel.appendChild(box);
  }
  return panel;
}

export function renderPhaseView(
  container: HTMLElement,
  detail: PhaseDetail | null,
  state: ViewState,
  options: PhaseViewOptions,
  handlers: PhaseHandlers,
): void {
  container.replaceChildren();
  container.classList.add("phase-view");
  if (!detail) {
    const empty = document.createElement("div");
    empty.className = "empty-state";
    empty.textContent = "no phase selected";
    container.appendChild(empty);
    return;
  }

  const header = document.createElement("div");
  header.className = "phase-header";
  header.textContent =
    `phase ${detail.phase_id} (${detail.team}, half ${detail.half}, ${detail.style})` +
    (detail.style_inferred ? " [inferred]" : "");
  container.appendChild(header);

  const modes = document.createElement("div");
  modes.className = "mode-switch";
  const hasFrames = detail.frames.length > 0;
  for (const mode of ["static", "animated"] as const) {
    const button = document.createElement("button");
    button.dataset.mode = mode;
    button.textContent = mode;
    if (mode === "animated" && !hasFrames) {
      button.disabled = true;
      button.title = "no tracking frames for this phase";
    }
    const active = state.phaseMode === mode && (mode === "static" || hasFrames);
    if (active) button.classList.add("active");
    button.addEventListener("click", () => {
      if (!button.disabled) handlers.onSetMode(mode);
    });
    modes.appendChild(button);
  }
  container.appendChild(modes);

  const effectiveMode: PhaseMode =
    state.phaseMode === "animated" && hasFrames ? "animated" : "static";
  if (effectiveMode === "animated") {
    container.appendChild(animatedDiagram(detail, options));
    const scrubber = document.createElement("input");
    scrubber.type = "range";
    scrubber.className = "frame-scrubber";
    scrubber.min = "0";
    scrubber.max = String(detail.frames.length - 1);
    scrubber.value = String(options.frameIndex);
    scrubber.addEventListener("input", () =>
      handlers.onFrameIndex(Number(scrubber.value)),
    );
    container.appendChild(scrubber);
  } else {
    container.appendChild(staticDiagram(detail, options, handlers));
  }

  if (!detail.metrics.available) {
    const note = document.createElement("div");
    note.className = "metrics-note";
    note.textContent = "defense metrics unavailable (no tracking frames)";
    container.appendChild(note);
  }
  container.appendChild(statisticsTable(detail, options, handlers));
  container.appendChild(lineup(detail, options, handlers));
}
