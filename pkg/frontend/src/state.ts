// Session view state shared by the three views.
//
// Invariants kept by every transition:
//  - the selected phase always exists in the current flow;
//  - zoom and selection stay consistent: selecting a phase outside the
//    zoomed pattern clears the zoom;
//  - a team or model switch resets everything downstream of it in one
//    transition (subscribers are notified once).

import type { FlowPayload, PatternsPayload } from "./api.js";

export type Ranking = "frequency" | "shootings";
export type PhaseMode = "static" | "animated";

export interface ViewState {
  matchId: string | null;
  team: string | null;
  model: string | null;
  ranking: Ranking;
  hoveredPlayer: string | null;
  hoveredPattern: number | null;
  selectedPhase: number | null;
  zoomedPattern: number | null;
  phaseMode: PhaseMode;
}

export type Listener = (state: ViewState) => void;

const INITIAL: ViewState = {
  matchId: null,
  team: null,
  model: null,
  ranking: "frequency",
  hoveredPlayer: null,
  hoveredPattern: null,
  selectedPhase: null,
  zoomedPattern: null,
  phaseMode: "static",
};

export class Store {
  private state: ViewState = { ...INITIAL };
  private listeners: Listener[] = [];
  patterns: PatternsPayload | null = null;
  flow: FlowPayload | null = null;

  get(): ViewState {
    return { ...this.state };
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  // Apply one batch of changes and notify once (last write wins).
  private commit(changes: Partial<ViewState>): void {
    this.state = { ...this.state, ...changes };
    for (const listener of [...this.listeners]) listener(this.get());
  }

  selectMatch(matchId: string): void {
    this.patterns = null;
    this.flow = null;
    this.commit({
      matchId,
      team: null,
      model: null,
      hoveredPlayer: null,
      hoveredPattern: null,
      selectedPhase: null,
      zoomedPattern: null,
    });
  }

  // One transition: everything model-dependent resets with the team.
  selectTeam(team: string): void {
    this.patterns = null;
    this.flow = null;
    this.commit({
      team,
      model: null,
      hoveredPlayer: null,
      hoveredPattern: null,
      selectedPhase: null,
      zoomedPattern: null,
    });
  }

  setModel(model: string, patterns: PatternsPayload, flow: FlowPayload): void {
    this.patterns = patterns;
    this.flow = flow;
    this.commit({
      model,
      hoveredPlayer: null,
      hoveredPattern: null,
      selectedPhase: null,
      zoomedPattern: null,
    });
  }

  setRanking(ranking: Ranking, patterns: PatternsPayload): void {
    this.patterns = patterns;
    this.commit({ ranking });
  }

  setFlow(flow: FlowPayload): void {
    this.flow = flow;
    const known = new Set(flow.phases.map((p) => p.phase_id));
    const selectedPhase =
      this.state.selectedPhase !== null && known.has(this.state.selectedPhase)
        ? this.state.selectedPhase
        : null;
    this.commit({ selectedPhase });
  }

  hoverPlayer(label: string | null): void {
    if (label === this.state.hoveredPlayer) return;
    this.commit({ hoveredPlayer: label });
  }

  hoverPattern(patternId: number | null): void {
    if (patternId === this.state.hoveredPattern) return;
    this.commit({ hoveredPattern: patternId });
  }

  selectPhase(phaseId: number | null): void {
    if (phaseId === null) {
      this.commit({ selectedPhase: null });
      return;
    }
    const phase = this.flow?.phases.find((p) => p.phase_id === phaseId);
    if (!phase) return; // unknown phases are not selectable
    const changes: Partial<ViewState> = { selectedPhase: phaseId };
    if (
      this.state.zoomedPattern !== null &&
      phase.pattern_id !== this.state.zoomedPattern
    ) {
      changes.zoomedPattern = null;
    }
    this.commit(changes);
  }

  zoomPattern(patternId: number | null): void {
    if (patternId === null) {
      this.commit({ zoomedPattern: null });
      return;
    }
    const changes: Partial<ViewState> = { zoomedPattern: patternId };
    const phase = this.flow?.phases.find(
      (p) => p.phase_id === this.state.selectedPhase,
    );
    if (phase && phase.pattern_id !== patternId) {
      changes.selectedPhase = null;
    }
    this.commit(changes);
  }

  setPhaseMode(mode: PhaseMode): void {
    this.commit({ phaseMode: mode });
  }
}
