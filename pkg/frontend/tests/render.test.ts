import { beforeEach, describe, expect, it, vi } from "vitest";

import { resolveLayout, viewBox } from "../src/layout.js";
import {
  renderGraph,
  renderPlanSummary,
  renderRoomPanel,
  renderTourOverlay,
} from "../src/render.js";
import { initialState } from "../src/state.js";
import type { MuseumResponse, PlanResponse } from "../src/types.js";

const museum: MuseumResponse = {
  name: "Mini",
  assumptions: [],
  artists: ["alice", "bob"],
  vertices: [
    { id: "E", kind: "entrance", name: "Entrance", room_time_min: 0, layout: [0, 0] },
    { id: "X", kind: "exit", name: "Exit", room_time_min: 0, layout: [2, 0] },
    { id: "v1", kind: "room", name: "Room one", room_time_min: 1, layout: [1, 1] },
  ],
  arcs: [
    { from: "E", to: "v1", arc_time_min: 0.5 },
    { from: "v1", to: "X", arc_time_min: 0.5 },
  ],
  artworks: [
    { id: "a1", title: "One", artist: "alice", year: 2000, room: "v1",
      artwork_time_min: 2, score: 1.0 },
    { id: "a2", title: "Two", artist: "bob", year: null, room: "v1",
      artwork_time_min: 2, score: 0.25 },
  ],
};

const plan: PlanResponse = {
  status: "optimal",
  objective: 1.25,
  relevance_percentage: 87.5,
  solver_nodes: 12,
  time_breakdown_min: { rooms: 1, arcs: 1, artworks: 4, total: 6 },
  t_max_min: 30,
  steps: [
    { room: "E", name: "Entrance", artworks: [] },
    { room: "v1", name: "Room one", artworks: [{ id: "a1", title: "One" }] },
    { room: "X", name: "Exit", artworks: [] },
  ],
};

const callbacks = {
  onToggleArtist: vi.fn(),
  onTogglePinned: vi.fn(),
  onToggleExcluded: vi.fn(),
  onSelectRoom: vi.fn(),
};

let host: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="host"></div>';
  host = document.getElementById("host")!;
});

describe("renderGraph", () => {
  it("renders one node per vertex with kind classes and names", () => {
    const coords = resolveLayout(museum);
    renderGraph(document, host, museum, coords, viewBox(coords), callbacks.onSelectRoom);
    const nodes = host.querySelectorAll(".vertex");
    expect(nodes).toHaveLength(3);
    expect(host.querySelectorAll(".kind-entrance")).toHaveLength(1);
    expect(host.querySelectorAll(".kind-exit")).toHaveLength(1);
    expect(host.querySelector('[data-vertex="v1"] title')!.textContent)
      .toBe("Room one - 2 artworks");
  });

  it("click on a room fires the callback", () => {
    const coords = resolveLayout(museum);
    renderGraph(document, host, museum, coords, viewBox(coords), callbacks.onSelectRoom);
    (host.querySelector('[data-vertex="v1"]') as SVGGElement)
      .dispatchEvent(new MouseEvent("click"));
    expect(callbacks.onSelectRoom).toHaveBeenCalledWith("v1");
  });
});

describe("renderTourOverlay", () => {
  it("draws numbered badges in step order", () => {
    const coords = resolveLayout(museum);
    renderGraph(document, host, museum, coords, viewBox(coords), callbacks.onSelectRoom);
    renderTourOverlay(document, host, coords, plan, false);
    const badges = [...host.querySelectorAll(".step-badge")];
    expect(badges.map((b) => b.getAttribute("data-room"))).toEqual(["E", "v1", "X"]);
    expect(badges.map((b) => b.getAttribute("data-step"))).toEqual(["1", "2", "3"]);
    renderTourOverlay(document, host, coords, plan, true);
    expect(host.querySelectorAll(".tour-overlay.stale")).toHaveLength(1);
    expect(host.querySelectorAll(".tour-overlay")).toHaveLength(1); // replaced, not stacked
  });
});

describe("renderRoomPanel", () => {
  it("lists artworks with score badges and working pin buttons", () => {
    renderRoomPanel(document, host, museum, "v1", initialState(), callbacks);
    const rows = host.querySelectorAll(".artwork-row");
    expect(rows).toHaveLength(2);
    expect(host.querySelectorAll(".score-badge")[0]!.textContent).toBe("1.00");
    (host.querySelector('button[data-artwork="a2"].pin-btn') as HTMLButtonElement).click();
    expect(callbacks.onTogglePinned).toHaveBeenCalledWith("a2");
  });

  it("marks artworks that are part of the current tour", () => {
    const state = { ...initialState(), plan };
    renderRoomPanel(document, host, museum, "v1", state, callbacks);
    expect(host.querySelectorAll(".artwork-row.in-tour")).toHaveLength(1);
  });
});

describe("renderPlanSummary", () => {
  it("shows rp verbatim, the breakdown, and steps in response order", () => {
    const state = { ...initialState(), plan };
    renderPlanSummary(document, host, state);
    expect(host.querySelector(".rp-badge")!.textContent).toBe("87.5%");
    expect(host.querySelector(".time-breakdown")!.textContent).toContain("6 min of 30");
    const items = [...host.querySelectorAll(".step-list li")];
    expect(items.map((li) => li.getAttribute("data-room"))).toEqual(["E", "v1", "X"]);
    expect(items[1]!.textContent).toBe("Room one: One");
  });

  it("renders notices and dims stale plans", () => {
    const state = { ...initialState(), plan, planStale: true, notice: "no feasible tour" };
    renderPlanSummary(document, host, state);
    expect(host.querySelector(".notice")!.textContent).toBe("no feasible tour");
    expect(host.querySelectorAll(".plan-summary.stale")).toHaveLength(1);
  });
});

describe("layout", () => {
  it("uses dataset coordinates when present and falls back otherwise", () => {
    const coords = resolveLayout(museum);
    expect(coords.get("E")).toEqual({ x: 0, y: 0 });
    const noLayout: MuseumResponse = {
      ...museum,
      vertices: museum.vertices.map((v) => ({ ...v, layout: undefined })),
    };
    const fallback = resolveLayout(noLayout);
    expect(fallback.size).toBe(3);
    for (const p of fallback.values()) {
      expect(Number.isFinite(p.x) && Number.isFinite(p.y)).toBe(true);
    }
    expect(viewBox(fallback).split(" ")).toHaveLength(4);
  });
});
