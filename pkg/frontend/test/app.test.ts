// End-to-end wiring over a stubbed fetch: boot from fixtures, then walk
// the rank-switch and phase-click flows exactly as a user would.

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { mount } from "../src/app.js";
import type { App } from "../src/app.js";
import matchesJson from "./fixtures/matches.json";
import modelsJson from "./fixtures/models.json";
import {
  flowFixture,
  patternsFrequency,
  patternsShootings,
  phaseDetail,
  playerStats,
} from "./helpers.js";

function route(rawUrl: string): unknown {
  const url = new URL(rawUrl, "http://test");
  const path = url.pathname;
  if (path === "/matches") return matchesJson;
  if (path === "/matches/demo-11/models") return modelsJson;
  if (path === "/matches/demo-11/patterns") {
    return url.searchParams.get("sort") === "shootings"
      ? patternsShootings
      : patternsFrequency;
  }
  if (path === "/matches/demo-11/flow") return flowFixture;
  if (path === "/matches/demo-11/phases/0") return phaseDetail;
  if (path === "/matches/demo-11/players/home:1/stats") return playerStats;
  throw new Error(`unrouted url ${rawUrl}`);
}

let app: App;

beforeEach(() => {
  vi.stubGlobal(
    "fetch",
    vi.fn(async (rawUrl: string) => {
      return new Response(JSON.stringify(route(rawUrl)), {
        status: 200,
        headers: { "content-type": "application/json" },
      });
    }),
  );
  document.body.innerHTML = `
    <select id="match-select"></select>
    <select id="model-select"></select>
    <input id="team-input" />
    <button id="detect-button"></button>
    <select id="ranking-select">
      <option value="frequency" selected>frequency</option>
      <option value="shootings">shootings</option>
    </select>
    <div id="pattern-diagram"></div>
    <div id="pattern-flow"></div>
    <div id="phase-view"></div>
    <span id="status"></span>
  `;
  app = mount(document);
});

afterEach(() => {
  vi.unstubAllGlobals();
});

async function booted(): Promise<void> {
  await vi.waitFor(() => {
    expect(document.querySelectorAll("#pattern-diagram .pattern-card")).toHaveLength(6);
  });
}

describe("app boot", () => {
  it("loads the first match and model and renders all three views", async () => {
    await booted();
    expect(
      (document.getElementById("match-select") as HTMLSelectElement).value,
    ).toBe("demo-11");
    expect((document.getElementById("team-input") as HTMLInputElement).value).toBe(
      "home",
    );
    expect(document.querySelectorAll("#pattern-flow .phase-slot")).toHaveLength(
      flowFixture.phases.length,
    );
    expect(document.querySelector("#phase-view .empty-state")).not.toBeNull();
    expect(app.store.get().model).toBe("home-k5-seed7-binary-player");
  });
});

describe("rank switching", () => {
  it("reorders the flow rows to match the API ordering", async () => {
    await booted();
    const select = document.getElementById("ranking-select") as HTMLSelectElement;
    select.value = "shootings";
    select.dispatchEvent(new Event("change"));
    await vi.waitFor(() => {
      const ids = [...document.querySelectorAll("#pattern-flow .row-label")].map(
        (l) => (l as HTMLElement).dataset.pattern,
      );
      expect(ids).toEqual(
        patternsShootings.patterns.map((p) => String(p.pattern_id)),
      );
    });
  });
});

describe("phase selection", () => {
  it("clicking a phase circle fills the phase view with the API numbers", async () => {
    await booted();
    document
      .querySelector('#pattern-flow .phase-slot[data-phase="0"] .phase-circle')!
      .dispatchEvent(new MouseEvent("click"));
    await vi.waitFor(() => {
      expect(
        document.querySelector("#phase-view table.statistics .covered-area")
          ?.textContent,
      ).toBe(String(phaseDetail.statistics[0].covered_area));
    });
    expect(app.store.get().selectedPhase).toBe(0);
    expect(
      document.querySelector("#phase-view table.statistics .pressure")?.textContent,
    ).toBe(String(phaseDetail.statistics[0].pressure));
  });

  it("fetches player statistics from the lineup", async () => {
    await booted();
    document
      .querySelector('#pattern-flow .phase-slot[data-phase="0"] .phase-circle')!
      .dispatchEvent(new MouseEvent("click"));
    await vi.waitFor(() => {
      expect(document.querySelector("#phase-view button.lineup-player")).not.toBeNull();
    });
    document
      .querySelector('#phase-view button.lineup-player[data-player="home:1"]')!
      .dispatchEvent(new MouseEvent("click"));
    await vi.waitFor(() => {
      expect(
        document.querySelector("#phase-view dl.player-stats")?.textContent,
      ).toContain(String(playerStats.total_distance));
    });
  });
});
