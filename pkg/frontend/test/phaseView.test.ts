import { beforeEach, describe, expect, it, vi } from "vitest";

import type { PhaseHandlers, PhaseViewOptions } from "../src/phaseView.js";
import { renderPhaseView } from "../src/phaseView.js";
import {
  baseState,
  clone,
  container,
  phaseDegraded,
  phaseDetail,
  playerStats,
} from "./helpers.js";

function handlers(): PhaseHandlers {
  return {
    onSelectPass: vi.fn(),
    onSetMode: vi.fn(),
    onFrameIndex: vi.fn(),
    onPlayerStats: vi.fn(),
  };
}

function options(overrides: Partial<PhaseViewOptions> = {}): PhaseViewOptions {
  return { selectedPass: null, frameIndex: 0, playerStats: null, ...overrides };
}

let root: HTMLElement;

beforeEach(() => {
  document.body.replaceChildren();
  root = container();
});

describe("phase view statistics", () => {
  it("renders covered area and pressure exactly as the API sent them", () => {
    renderPhaseView(root, phaseDetail, baseState(), options(), handlers());
    const rows = [...root.querySelectorAll("table.statistics tbody tr")];
    expect(rows).toHaveLength(phaseDetail.statistics.length);
    rows.forEach((tr, i) => {
      const record = phaseDetail.statistics[i];
      expect(tr.querySelector(".covered-area")?.textContent).toBe(
        String(record.covered_area),
      );
      expect(tr.querySelector(".pressure")?.textContent).toBe(
        String(record.pressure),
      );
    });
    // Spot check against the captured service numbers.
    expect(rows[0].querySelector(".covered-area")?.textContent).toBe(
      "2472.6037290000004",
    );
    expect(rows[0].querySelector(".pressure")?.textContent).toBe(
      "0.5796091882739922",
    );
  });

  it("selecting a pass highlights its row and overlays eleven opponents", () => {
    renderPhaseView(root, phaseDetail, baseState(), options({ selectedPass: 0 }), handlers());
    const selected = root.querySelectorAll("table.statistics tr.selected");
    expect(selected).toHaveLength(1);
    expect((selected[0] as HTMLElement).dataset.pass).toBe("0");

    const opponents = [...root.querySelectorAll(".opponent-dot")];
    expect(opponents).toHaveLength(11);
    const labels = opponents.map((o) => o.getAttribute("data-player"));
    expect(labels.every((l) => l?.startsWith("away:"))).toBe(true);
  });

  it("clicking a pass line or a table row reports the pass index", () => {
    const h = handlers();
    renderPhaseView(root, phaseDetail, baseState(), options(), h);
    root
      .querySelector('line.pass[data-pass="1"]')!
      .dispatchEvent(new MouseEvent("click"));
    expect(h.onSelectPass).toHaveBeenLastCalledWith(1);
    root
      .querySelector('table.statistics tr[data-pass="0"]')!
      .dispatchEvent(new MouseEvent("click"));
    expect(h.onSelectPass).toHaveBeenLastCalledWith(0);
  });
});

describe("phase view diagram", () => {
  it("draws one line per pass and labels the passers", () => {
    renderPhaseView(root, phaseDetail, baseState(), options(), handlers());
    const lines = root.querySelectorAll("line.pass");
    expect(lines).toHaveLength(phaseDetail.passes.length);
    const names = [...root.querySelectorAll("text.player-name")].map(
      (t) => t.textContent,
    );
    expect(names).toEqual(phaseDetail.passes.map((p) => p.passer));
  });

  it("marks a shot ending with an arrow and an interception with a cross", () => {
    const shot = clone(phaseDetail);
    shot.end_event = { ...shot.end_event, tag: "shot" };
    renderPhaseView(root, shot, baseState(), options(), handlers());
    expect(root.querySelector(".end-marker.shot")).not.toBeNull();

    const picked = clone(phaseDetail);
    picked.end_event = { ...picked.end_event, tag: "interception" };
    renderPhaseView(root, picked, baseState(), options(), handlers());
    expect(root.querySelector(".end-marker.interception")).not.toBeNull();
  });

  it("replays tracking frames in animated mode with a scrubber", () => {
    const h = handlers();
    const state = baseState({ phaseMode: "animated" });
    renderPhaseView(root, phaseDetail, state, options({ frameIndex: 1 }), h);
    const svg = root.querySelector("svg.animated")!;
    const frame = phaseDetail.frames[1];
    const dots = [...svg.querySelectorAll(".player-dot")];
    expect(dots).toHaveLength(frame.positions.length);
    const scrubber = root.querySelector("input.frame-scrubber") as HTMLInputElement;
    expect(scrubber.max).toBe(String(phaseDetail.frames.length - 1));
    scrubber.value = "0";
    scrubber.dispatchEvent(new Event("input"));
    expect(h.onFrameIndex).toHaveBeenCalledWith(0);
  });

  it("switches modes through the buttons", () => {
    const h = handlers();
    renderPhaseView(root, phaseDetail, baseState(), options(), h);
    const animated = root.querySelector(
      '.mode-switch button[data-mode="animated"]',
    ) as HTMLButtonElement;
    expect(animated.disabled).toBe(false);
    animated.dispatchEvent(new MouseEvent("click"));
    expect(h.onSetMode).toHaveBeenCalledWith("animated");
  });
});

describe("phase view lineup", () => {
  it("lists each participant once and fetches stats on click", () => {
    const h = handlers();
    renderPhaseView(root, phaseDetail, baseState(), options(), h);
    const buttons = [...root.querySelectorAll("button.lineup-player")] as HTMLElement[];
    const expected = new Set<string>();
    for (const pass of phaseDetail.passes) {
      expected.add(pass.passer);
      expected.add(pass.receiver);
    }
    expect(buttons.map((b) => b.dataset.player)).toEqual([...expected].sort());
    buttons[0].dispatchEvent(new MouseEvent("click"));
    expect(h.onPlayerStats).toHaveBeenCalledWith(buttons[0].dataset.player);
  });

  it("shows fetched player statistics verbatim", () => {
    renderPhaseView(
      root,
      phaseDetail,
      baseState(),
      options({ playerStats }),
      handlers(),
    );
    const box = root.querySelector("dl.player-stats")!;
    expect(box.textContent).toContain(playerStats.player);
    expect(box.textContent).toContain(String(playerStats.total_distance));
    expect(box.textContent).toContain(String(playerStats.max_speed));
  });
});

describe("phase view degraded data", () => {
  it("falls back to the static diagram without tracking frames", () => {
    const state = baseState({ phaseMode: "animated" });
    renderPhaseView(root, phaseDegraded, state, options(), handlers());
    expect(root.querySelector("svg.animated")).toBeNull();
    expect(root.querySelector("svg.phase-pitch")).not.toBeNull();
    const animated = root.querySelector(
      '.mode-switch button[data-mode="animated"]',
    ) as HTMLButtonElement;
    expect(animated.disabled).toBe(true);
    expect(animated.title).toBe("no tracking frames for this phase");
  });

  it("reports unavailable defense metrics honestly", () => {
    renderPhaseView(root, phaseDegraded, baseState(), options(), handlers());
    expect(root.querySelector(".metrics-note")?.textContent).toBe(
      "defense metrics unavailable (no tracking frames)",
    );
    const cells = [...root.querySelectorAll("td.covered-area, td.pressure")];
    expect(cells.length).toBeGreaterThan(0);
    for (const cell of cells) expect(cell.textContent).toBe("n/a");
  });

  it("shows an empty state without a selected phase", () => {
    renderPhaseView(root, null, baseState(), options(), handlers());
    expect(root.querySelector(".empty-state")?.textContent).toBe("no phase selected");
  });
});
