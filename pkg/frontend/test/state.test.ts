import { describe, expect, it, vi } from "vitest";

import { Store } from "../src/state.js";
import { clone, flowFixture, patternsFrequency, patternsShootings } from "./helpers.js";

function loadedStore(): Store {
  const store = new Store();
  store.selectMatch("demo");
  store.setModel("home-k5-seed7-binary-player", patternsFrequency, flowFixture);
  return store;
}

describe("store transitions", () => {
  it("notifies subscribers with a snapshot", () => {
    const store = new Store();
    const seen = vi.fn();
    store.subscribe(seen);
    store.selectMatch("demo");
    expect(seen).toHaveBeenCalledOnce();
    expect(seen.mock.calls[0][0].matchId).toBe("demo");
  });

  it("stops notifying after unsubscribe", () => {
    const store = new Store();
    const seen = vi.fn();
    const unsubscribe = store.subscribe(seen);
    unsubscribe();
    store.selectMatch("demo");
    expect(seen).not.toHaveBeenCalled();
  });

  it("switches team in a single transition that resets the model", () => {
    const store = loadedStore();
    store.selectPhase(flowFixture.phases[0].phase_id);
    store.hoverPlayer("home:6");
    const seen = vi.fn();
    store.subscribe(seen);
    store.selectTeam("away");
    expect(seen).toHaveBeenCalledOnce();
    const state = store.get();
    expect(state.team).toBe("away");
    expect(state.model).toBeNull();
    expect(state.selectedPhase).toBeNull();
    expect(state.zoomedPattern).toBeNull();
    expect(state.hoveredPlayer).toBeNull();
    expect(store.patterns).toBeNull();
    expect(store.flow).toBeNull();
  });

  it("re-ranking swaps the patterns payload without touching selection", () => {
    const store = loadedStore();
    store.selectPhase(flowFixture.phases[0].phase_id);
    store.setRanking("shootings", patternsShootings);
    expect(store.get().ranking).toBe("shootings");
    expect(store.patterns).toBe(patternsShootings);
    expect(store.get().selectedPhase).toBe(flowFixture.phases[0].phase_id);
  });

  it("deduplicates hover updates", () => {
    const store = loadedStore();
    store.hoverPlayer("home:6");
    const seen = vi.fn();
    store.subscribe(seen);
    store.hoverPlayer("home:6");
    store.hoverPattern(null);
    expect(seen).not.toHaveBeenCalled();
  });
});

describe("selection invariants", () => {
  it("only phases present in the flow are selectable", () => {
    const store = loadedStore();
    store.selectPhase(99999);
    expect(store.get().selectedPhase).toBeNull();
    store.selectPhase(flowFixture.phases[3].phase_id);
    expect(store.get().selectedPhase).toBe(flowFixture.phases[3].phase_id);
  });

  it("drops the selection when a new flow no longer contains the phase", () => {
    const store = loadedStore();
    const kept = flowFixture.phases[0].phase_id;
    store.selectPhase(kept);
    const trimmed = clone(flowFixture);
    trimmed.phases = trimmed.phases.filter((p) => p.phase_id !== kept);
    store.setFlow(trimmed);
    expect(store.get().selectedPhase).toBeNull();
  });

  it("keeps the selection when the new flow still contains the phase", () => {
    const store = loadedStore();
    const kept = flowFixture.phases[0].phase_id;
    store.selectPhase(kept);
    store.setFlow(clone(flowFixture));
    expect(store.get().selectedPhase).toBe(kept);
  });

  it("zooming away from the selected phase's pattern clears the selection", () => {
    const store = loadedStore();
    const phase = flowFixture.phases.find((p) => p.pattern_id === 4)!;
    store.selectPhase(phase.phase_id);
    store.zoomPattern(4);
    expect(store.get().selectedPhase).toBe(phase.phase_id);
    store.zoomPattern(0);
    expect(store.get().zoomedPattern).toBe(0);
    expect(store.get().selectedPhase).toBeNull();
  });

  it("selecting a phase outside the zoomed pattern clears the zoom", () => {
    const store = loadedStore();
    store.zoomPattern(4);
    const outside = flowFixture.phases.find((p) => p.pattern_id === 0)!;
    store.selectPhase(outside.phase_id);
    expect(store.get().selectedPhase).toBe(outside.phase_id);
    expect(store.get().zoomedPattern).toBeNull();
  });

  it("selecting a phase inside the zoomed pattern keeps the zoom", () => {
    const store = loadedStore();
    store.zoomPattern(4);
    const inside = flowFixture.phases.find((p) => p.pattern_id === 4)!;
    store.selectPhase(inside.phase_id);
    expect(store.get().selectedPhase).toBe(inside.phase_id);
    expect(store.get().zoomedPattern).toBe(4);
  });
});
