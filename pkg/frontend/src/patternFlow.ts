// Pattern flow: phases as circles in chronological order, one row per
// pattern (row order = the patterns payload order, so re-ranking
// re-sorts the rows).  A defense bar sits on top of each circle (taller
// = more space covered by the defense = worse defending), shooting
// events show underneath by default, and a vertical rule separates the
// halves.  Clicking a pattern row zooms into glyph columns for that
// pattern's phases only, keeping the temporal strip on top.

import type { FlowPayload, FlowPhase, PatternsPayload } from "./api.js";
import { eventGlyph, formationGlyph, regionGlyph } from "./glyphs.js";
import type { ViewState } from "./state.js";

export interface FlowHandlers {
  onSelectPhase(phaseId: number): void;
  onZoomPattern(patternId: number | null): void;
}

const SHOOTING_TAGS = new Set(["shot", "goal"]);
const STEP = 16; // px per phase along the timeline
const BAR_MAX = 28; // px cap for the defense bar

function circleRow(
  flow: FlowPayload,
  rowOf: Map<number, number>,
  state: ViewState,
  handlers: FlowHandlers,
  only: Set<number> | null,
): HTMLElement {
  const strip = document.createElement("div");
  strip.className = "timeline";
  const maxBar = Math.max(
    ...flow.phases.map((p) => p.defense_bar ?? 0),
    1,
  );
  let lastHalf: number | null = null;
  flow.phases.forEach((phase, index) => {
    if (lastHalf !== null && phase.half !== lastHalf) {
      const rule = document.createElement("div");
      rule.className = "half-separator";
      rule.style.left = `${index * STEP}px`;
      strip.appendChild(rule);
    }
    lastHalf = phase.half;
    if (only && !only.has(phase.phase_id)) return;

    const slot = document.createElement("div");
    slot.className = "phase-slot";
    slot.dataset.phase = String(phase.phase_id);
    slot.style.left = `${index * STEP}px`;

    const bar = document.createElement("div");
    bar.className = "bar defense";
    if (phase.defense_bar === null) {
      bar.classList.add("unavailable");
    } else {
      bar.style.height = `${(BAR_MAX * phase.defense_bar) / maxBar}px`;
      bar.title = String(phase.defense_bar);
    }
    slot.appendChild(bar);

    const circle = document.createElement("div");
    circle.className = "phase-circle";
    const row = phase.pattern_id !== null ? rowOf.get(phase.pattern_id) : undefined;
    circle.style.top = `${(row ?? rowOf.size) * STEP}px`;
    circle.dataset.pattern = String(phase.pattern_id);
    if (state.selectedPhase === phase.phase_id) circle.classList.add("selected");
    if (
      state.hoveredPlayer !== null &&
      phase.participants.includes(state.hoveredPlayer)
    ) {
      circle.classList.add("contains-player");
    }
    circle.title = `phase ${phase.phase_id} (${phase.style})`;
    circle.addEventListener("click", () => handlers.onSelectPhase(phase.phase_id));
    slot.appendChild(circle);

    const glyph = eventGlyph(phase.end_event.tag);
    glyph.classList.add("event-slot");
    if (!SHOOTING_TAGS.has(phase.end_event.tag)) glyph.classList.add("hidden");
    slot.appendChild(glyph);

    strip.appendChild(slot);
  });
  strip.style.width = `${flow.phases.length * STEP}px`;
  return strip;
}

function glyphColumn(phase: FlowPhase, handlers: FlowHandlers): HTMLElement {
  const column = document.createElement("div");
  column.className = "glyph-column";
  column.dataset.phase = String(phase.phase_id);
  if (phase.defense_bar === null) column.classList.add("degraded");

  column.appendChild(
    formationGlyph(phase.summary.line_count, phase.summary.first_formation_line),
  );

  const names = document.createElement("div");
  names.className = "endpoints";
  names.textContent = `${phase.summary.first_passer} → ${phase.summary.last_receiver}`;
  column.appendChild(names);

  const regions = document.createElement("div");
  regions.className = "regions";
  regions.appendChild(regionGlyph(phase.summary.first_region.glyph));
  regions.appendChild(regionGlyph(phase.summary.last_region.glyph));
  column.appendChild(regions);

  const density = document.createElement("div");
  density.className = "pass-density";
  density.dataset.count = String(phase.pass_count);
  for (let i = 0; i < Math.min(phase.pass_count, 12); i += 1) {
    const dot = document.createElement("span");
    dot.className = "pass-dot";
    density.appendChild(dot);
  }
  column.appendChild(density);

  const end = eventGlyph(phase.end_event.tag);
  end.classList.add("column-event");
  column.appendChild(end);

  column.addEventListener("click", () => handlers.onSelectPhase(phase.phase_id));
  return column;
}

export function renderPatternFlow(
  container: HTMLElement,
  flow: FlowPayload | null,
  patterns: PatternsPayload | null,
  state: ViewState,
  handlers: FlowHandlers,
): void {
  container.replaceChildren();
  container.classList.add("pattern-flow");
  if (!flow || !patterns) {
    const empty = document.createElement("div");
    empty.className = "empty-state";
    empty.textContent = "no model selected";
    container.appendChild(empty);
    return;
  }

  // Row order follows the patterns payload, which is already ranked.
  const rowOf = new Map<number, number>();
  patterns.patterns.forEach((p, row) => rowOf.set(p.pattern_id, row));

  const labels = document.createElement("div");
  labels.className = "row-labels";
  for (const pattern of patterns.patterns) {
    const label = document.createElement("div");
    label.className = "row-label";
    label.dataset.pattern = String(pattern.pattern_id);
    label.dataset.style = pattern.style;
    if (state.zoomedPattern === pattern.pattern_id) label.classList.add("zoomed");
    label.textContent = `P${pattern.pattern_id}`;
    label.title = `${pattern.frequency} phases, ${pattern.shootings} shootings`;
    label.addEventListener("click", () =>
      handlers.onZoomPattern(
        state.zoomedPattern === pattern.pattern_id ? null : pattern.pattern_id,
      ),
    );
    labels.appendChild(label);
  }
  container.appendChild(labels);

  if (state.zoomedPattern === null) {
    container.appendChild(circleRow(flow, rowOf, state, handlers, null));
    return;
  }

  // Zoomed: temporal strip of the chosen pattern's phases on top, then
  // one glyph column per phase.
  const zoomed = flow.phases.filter((p) => p.pattern_id === state.zoomedPattern);
  const ids = new Set(zoomed.map((p) => p.phase_id));
  const strip = circleRow(flow, rowOf, state, handlers, ids);
  strip.classList.add("temporal-strip");
  container.appendChild(strip);

  const columns = document.createElement("div");
  columns.className = "glyph-columns";
  for (const phase of zoomed) columns.appendChild(glyphColumn(phase, handlers));
  container.appendChild(columns);
}
