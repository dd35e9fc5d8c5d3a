// Composition root: wires the store, the API client and the three views
// into one page.  All data flows through the service API; the views only
// lay out what the payloads contain.

import { ApiClient } from "./api.js";
import type { PhaseDetail, PlayerStatsPayload } from "./api.js";
import { renderPatternDiagram } from "./patternDiagram.js";
import { renderPatternFlow } from "./patternFlow.js";
import { renderPhaseView } from "./phaseView.js";
import type { PhaseViewOptions } from "./phaseView.js";
import { Store } from "./state.js";
import type { Ranking } from "./state.js";

export interface AppElements {
  matchSelect: HTMLSelectElement;
  modelSelect: HTMLSelectElement;
  teamInput: HTMLInputElement;
  detectButton: HTMLButtonElement;
  rankingSelect: HTMLSelectElement;
  diagram: HTMLElement;
  flow: HTMLElement;
  phase: HTMLElement;
  status: HTMLElement;
}

export class App {
  readonly store = new Store();
  private detail: PhaseDetail | null = null;
  private phaseOptions: PhaseViewOptions = {
    selectedPass: null,
    frameIndex: 0,
    playerStats: null,
  };

  constructor(
    private api: ApiClient,
    private el: AppElements,
  ) {
    this.store.subscribe(() => this.renderAll());
    el.matchSelect.addEventListener("change", () => {
      void this.openMatch(el.matchSelect.value);
    });
    el.modelSelect.addEventListener("change", () => {
      void this.openModel(el.modelSelect.value);
    });
    el.detectButton.addEventListener("click", () => {
      void this.detect();
    });
    el.rankingSelect.addEventListener("change", () => {
      void this.setRanking(el.rankingSelect.value as Ranking);
    });
  }

  async start(): Promise<void> {
    const matches = await this.api.listMatches();
    this.el.matchSelect.replaceChildren(
      ...matches.map((id) => new Option(id, id)),
    );
    if (matches.length > 0) await this.openMatch(matches[0]);
  }

  async openMatch(matchId: string): Promise<void> {
    this.store.selectMatch(matchId);
    this.detail = null;
    const models = await this.api.listModels(matchId);
    this.el.modelSelect.replaceChildren(
      ...models.map((key) => new Option(key, key)),
    );
    if (models.length > 0) await this.openModel(models[0]);
  }

  async openModel(model: string): Promise<void> {
    const state = this.store.get();
    if (!state.matchId) return;
    // The team is the model key's first segment.
    const team = model.split("-k")[0];
    this.el.teamInput.value = team;
    if (team !== state.team) this.store.selectTeam(team);
    const [patterns, flow] = await Promise.all([
      this.api.getPatterns(state.matchId, model, state.ranking),
      this.api.getFlow(state.matchId, model),
    ]);
    this.detail = null;
    this.phaseOptions = { selectedPass: null, frameIndex: 0, playerStats: null };
    this.store.setModel(model, patterns, flow);
  }

  async detect(): Promise<void> {
    const state = this.store.get();
    if (!state.matchId) return;
    const team = this.el.teamInput.value.trim();
    if (!team) {
      this.el.status.textContent = "enter a team id to detect";
      return;
    }
    try {
      const { model } = await this.api.detect(state.matchId, team, 5, 0);
      const models = await this.api.listModels(state.matchId);
      this.el.modelSelect.replaceChildren(
        ...models.map((key) => new Option(key, key, false, key === model)),
      );
      await this.openModel(model);
    } catch (error) {
      this.el.status.textContent = String(error);
    }
  }

  async setRanking(ranking: Ranking): Promise<void> {
    const state = this.store.get();
    if (!state.matchId || !state.model) return;
    const patterns = await this.api.getPatterns(state.matchId, state.model, ranking);
    this.store.setRanking(ranking, patterns);
  }

  async openPhase(phaseId: number): Promise<void> {
    const state = this.store.get();
    if (!state.matchId) return;
    this.detail = await this.api.getPhase(state.matchId, phaseId);
    this.phaseOptions = { selectedPass: null, frameIndex: 0, playerStats: null };
    this.store.selectPhase(phaseId);
  }

  private async loadPlayerStats(label: string): Promise<void> {
    const state = this.store.get();
    if (!state.matchId) return;
    const stats: PlayerStatsPayload = await this.api.getPlayerStats(
      state.matchId,
      label,
    );
    this.phaseOptions = { ...this.phaseOptions, playerStats: stats };
    this.renderAll();
  }

  private renderAll(): void {
    const state = this.store.get();
    renderPatternDiagram(this.el.diagram, this.store.patterns, state, {
      onHoverPattern: (id) => this.store.hoverPattern(id),
      onHoverPlayer: (label) => this.store.hoverPlayer(label),
      onZoomPattern: (id) => this.store.zoomPattern(id),
    });
    renderPatternFlow(this.el.flow, this.store.flow, this.store.patterns, state, {
      onSelectPhase: (id) => void this.openPhase(id),
      onZoomPattern: (id) => this.store.zoomPattern(id),
    });
    renderPhaseView(this.el.phase, this.detail, state, this.phaseOptions, {
      onSelectPass: (index) => {
        this.phaseOptions = { ...this.phaseOptions, selectedPass: index };
        this.renderAll();
      },
      onSetMode: (mode) => this.store.setPhaseMode(mode),
      onFrameIndex: (index) => {
        this.phaseOptions = { ...this.phaseOptions, frameIndex: index };
        this.renderAll();
      },
      onPlayerStats: (label) => void this.loadPlayerStats(label),
    });
    this.el.status.textContent = state.model
      ? `${state.matchId} · ${state.model} · rank by ${state.ranking}`
      : state.matchId
        ? `${state.matchId}: no model yet`
        : "no match loaded";
  }
}

export function mount(root: Document = document): App {
  const byId = (id: string) => {
    const el = root.getElementById(id);
    if (!el) throw new Error(`missing #${id}`);
    return el;
  };
  const app = new App(new ApiClient(""), {
    matchSelect: byId("match-select") as HTMLSelectElement,
    modelSelect: byId("model-select") as HTMLSelectElement,
    teamInput: byId("team-input") as HTMLInputElement,
    detectButton: byId("detect-button") as HTMLButtonElement,
    rankingSelect: byId("ranking-select") as HTMLSelectElement,
    diagram: byId("pattern-diagram"),
    flow: byId("pattern-flow"),
    phase: byId("phase-view"),
    status: byId("status"),
  });
  void app.start();
  return app;
}
