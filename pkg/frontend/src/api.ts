// Typed client for the passflow service API.  Every payload interface
// mirrors the service JSON exactly; views render these values as-is and
// never recompute them.

export interface PlayerEntry {
  label: string;
  kind: "player" | "region";
  pass_count: number;
  name?: string;
  role?: string;
  line?: number | null;
  glyph?: string;
}

export interface Heatmap {
  rows: number;
  cols: number;
  bins: number[][];
}

export interface PatternRecord {
  pattern_id: number;
  style: "build-up" | "counter-attack";
  frequency: number;
  shootings: number;
  weights: number[];
  key_players: string[];
  pass_counts: number[];
  phase_ids: number[];
  heatmap: Heatmap;
}

export interface PatternsPayload {
  team: string;
  sort: "frequency" | "shootings";
  players: PlayerEntry[];
  patterns: PatternRecord[];
}

export interface RegionRef {
  row: number;
  col: number;
  label: string;
  glyph: string;
}

export interface EventRef {
  tag: string;
  t: number;
  half: number;
  actor: string | null;
}

export interface FlowPhase {
  phase_id: number;
  half: number;
  pattern_id: number | null;
  style: string;
  style_inferred: boolean;
  start: number;
  end: number;
  pass_count: number;
  defense_bar: number | null;
  mean_pressure: number | null;
  shooting: boolean;
  end_event: EventRef;
  participants: string[];
  summary: {
    first_passer: string;
    last_receiver: string;
    line_count: number;
    first_formation_line: number | null;
    last_formation_line: number | null;
    first_region: RegionRef;
    last_region: RegionRef;
  };
}

export interface FlowPayload {
  team: string;
  phases: FlowPhase[];
}

export interface Point {
  x: number;
  y: number;
}

export interface PassRecord {
  passer: string;
  receiver: string;
  t: number;
  t_receive: number;
  origin: Point;
  target: Point;
  completed: boolean;
}

export interface OpponentPosition extends Point {
  player: string;
}

export interface DefenseRow {
  pass_index: number;
  frame_t: number;
  covered_area: number;
  pressure: number;
  approximate: boolean;
  opponents: OpponentPosition[];
}

export interface StatisticsRow {
  pass_index: number;
  t: number;
  covered_area: number | null;
  pressure: number | null;
}

export interface DribbleRecord {
  player: string;
  start: Point;
  end: Point;
  displacement: number;
}

export interface FramePlayer extends Point {
  player: string;
}

export interface FrameRecord {
  t: number;
  positions: FramePlayer[];
  ball: Point | null;
}

export interface PhaseDetail {
  phase_id: number;
  team: string;
  half: number;
  style: string;
  style_inferred: boolean;
  end_event: EventRef;
  passes: PassRecord[];
  dribbles: DribbleRecord[];
  defense: (DefenseRow | null)[];
  statistics: StatisticsRow[];
  metrics: {
    available: boolean;
    defense_bar: number | null;
    mean_pressure: number | null;
  };
  frames: FrameRecord[];
}

export interface PlayerStatsPayload {
  player: string;
  span: string | null;
  max_speed: number;
  dash_distance: number;
  pass_count: number;
  total_distance: number;
}

export interface DetectResponse {
  model: string;
  cached: boolean;
}

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private url(path: string, params?: Record<string, string>): string {
    const query = params ? `?${new URLSearchParams(params)}` : "";
    return `${this.baseUrl}${path}${query}`;
  }

  async listMatches(): Promise<string[]> {
    const body = await asJson<{ matches: string[] }>(
      await fetch(this.url("/matches")),
    );
    return body.matches;
  }

  async listModels(matchId: string): Promise<string[]> {
    const body = await asJson<{ models: string[] }>(
      await fetch(this.url(`/matches/${matchId}/models`)),
    );
    return body.models;
  }

  async detect(
    matchId: string,
    team: string,
    k: number,
    seed: number,
  ): Promise<DetectResponse> {
    const response = await fetch(
      this.url(`/matches/${matchId}/detect`, {
        team,
        k: String(k),
        seed: String(seed),
      }),
      { method: "POST" },
    );
    return asJson<DetectResponse>(response);
  }

  async getPatterns(
    matchId: string,
    model: string,
    sort: "frequency" | "shootings" = "frequency",
  ): Promise<PatternsPayload> {
    const response = await fetch(
      this.url(`/matches/${matchId}/patterns`, { model, sort }),
    );
    return asJson<PatternsPayload>(response);
  }

  async getFlow(matchId: string, model: string): Promise<FlowPayload> {
    const response = await fetch(this.url(`/matches/${matchId}/flow`, { model }));
    return asJson<FlowPayload>(response);
  }

  async getPhase(matchId: string, phaseId: number): Promise<PhaseDetail> {
    const response = await fetch(this.url(`/matches/${matchId}/phases/${phaseId}`));
    return asJson<PhaseDetail>(response);
  }

  async getPlayerStats(
    matchId: string,
    player: string,
    span?: string,
  ): Promise<PlayerStatsPayload> {
    const params = span ? { span } : undefined;
    const response = await fetch(
      this.url(`/matches/${matchId}/players/${player}/stats`, params),
    );
    return asJson<PlayerStatsPayload>(response);
  }
}
