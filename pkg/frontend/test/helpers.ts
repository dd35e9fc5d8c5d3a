// Shared fixtures and factories for the view tests.  Fixture files are
// verbatim service responses captured by tools/capture_fixtures.py.

import type {
  FlowPayload,
  PatternsPayload,
  PhaseDetail,
  PlayerStatsPayload,
} from "../src/api.js";
import type { ViewState } from "../src/state.js";

import flowJson from "./fixtures/flow.json";
import patternsFrequencyJson from "./fixtures/patterns_frequency.json";
import patternsShootingsJson from "./fixtures/patterns_shootings.json";
import phaseDegradedJson from "./fixtures/phase_degraded.json";
import phaseDetailJson from "./fixtures/phase_detail.json";
import playerStatsJson from "./fixtures/player_stats.json";

export const flowFixture = flowJson as unknown as FlowPayload;
export const patternsFrequency = patternsFrequencyJson as unknown as PatternsPayload;
export const patternsShootings = patternsShootingsJson as unknown as PatternsPayload;
export const phaseDetail = phaseDetailJson as unknown as PhaseDetail;
export const phaseDegraded = phaseDegradedJson as unknown as PhaseDetail;
export const playerStats = playerStatsJson as unknown as PlayerStatsPayload;

export function baseState(overrides: Partial<ViewState> = {}): ViewState {
  return {
    matchId: "demo",
    team: "home",
    model: "home-k5-seed7-binary-player",
    ranking: "frequency",
    hoveredPlayer: null,
    hoveredPattern: null,
    selectedPhase: null,
    zoomedPattern: null,
    phaseMode: "static",
    ...overrides,
  };
}

export function container(): HTMLElement {
  const el = document.createElement("div");
  document.body.appendChild(el);
  return el;
}

export function clone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}
