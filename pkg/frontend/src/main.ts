// Bootstrap: fetch the museum, wire controls, run the what-if loop.

import { ApiError, fetchMuseum, requestPlan } from "./api.js";
import { resolveLayout, viewBox } from "./layout.js";
import {
  BUDGET_MAX,
  BUDGET_MIN,
  BUDGET_STEP,
  initialState,
  needsArtists,
  planFailed,
  planSucceeded,
  setBudget,
  setInterest,
  toggleArtist,
  toggleExcluded,
  togglePinned,
  type PlannerState,
} from "./state.js";
import {
  renderArtists,
  renderGraph,
  renderPlanSummary,
  renderRoomPanel,
  renderTourOverlay,
} from "./render.js";
import type { MuseumResponse, PlanRequest } from "./types.js";

export interface App {
  state: PlannerState;
  museum: MuseumResponse;
  selectedRoom: string | null;
  submitPlan(): Promise<void>;
}

export async function bootstrap(doc: Document, base = ""): Promise<App> {
  const $ = (sel: string) => {
    const el = doc.querySelector(sel);
    if (!el) throw new Error(`missing element ${sel}`);
    return el;
  };
  const banner = $("#error-banner") as HTMLElement;

  let museum: MuseumResponse;
  try {
    museum = await fetchMuseum(base);
  } catch (err) {
    banner.textContent = "Service unreachable. Start the planning service and reload.";
    banner.classList.add("visible");
    throw err;
  }
  banner.classList.remove("visible");

  const coords = resolveLayout(museum);
  const box = viewBox(coords);
  const app: App = {
    state: initialState(),
    museum,
    selectedRoom: null,
    submitPlan,
  };
  let inFlight: AbortController | null = null;

  const callbacks = {
    onToggleArtist(artist: string) {
      app.state = toggleArtist(app.state, artist);
      redraw();
    },
    onTogglePinned(id: string) {
      app.state = togglePinned(app.state, id);
      redraw();
    },
    onToggleExcluded(id: string) {
      app.state = toggleExcluded(app.state, id);
      redraw();
    },
    onSelectRoom(id: string) {
      app.selectedRoom = id;
      redraw();
    },
  };

  const title = $("#museum-name");
  title.textContent = museum.name;
  renderGraph(doc, $("#graph-host"), museum, coords, box, callbacks.onSelectRoom);

  const slider = $("#budget-slider") as HTMLInputElement;
  slider.min = String(BUDGET_MIN);
  slider.max = String(BUDGET_MAX);
  slider.step = String(BUDGET_STEP);
  slider.value = String(app.state.budgetMin);
  slider.addEventListener("input", () => {
    app.state = setBudget(app.state, Number(slider.value));
    redraw();
  });

  const interestSelect = $("#interest-select") as HTMLSelectElement;
  interestSelect.value = app.state.interest;
  interestSelect.addEventListener("change", () => {
    app.state = setInterest(app.state, interestSelect.value as PlannerState["interest"]);
    redraw();
  });

  ($("#plan-button") as HTMLButtonElement).addEventListener("click", () => {
    void submitPlan();
  });

  async function submitPlan(): Promise<void> {
    if (needsArtists(app.state)) {
      app.state = planFailed(app.state, "Select at least one artist for f3/f4.");
      redraw();
      return;
    }
    inFlight?.abort(); // newest submission wins
    const controller = new AbortController();
    inFlight = controller;
    app.state = { ...app.state, inFlight: true, notice: null };
    redraw();
    const req: PlanRequest = {
      interest: app.state.interest,
      artists: app.state.selectedArtists,
      include: app.state.pinned,
      exclude: app.state.excluded,
      t_max_min: app.state.budgetMin,
    };
    try {
      const plan = await requestPlan(base, req, controller.signal);
      if (inFlight !== controller) return; // superseded
      app.state = planSucceeded(app.state, plan);
    } catch (err) {
      if ((err as Error).name === "AbortError" || inFlight !== controller) return;
      if (err instanceof ApiError) {
        const f = err.failure;
        const text =
          f.kind === "infeasible"
            ? `No feasible tour: ${f.reason === "unreachable_include" ? "a pinned artwork is unreachable" : "the time budget is too small"} (${f.message})`
            : f.kind === "busy"
              ? "The solver is at capacity; try again or simplify the request."
              : f.kind === "malformed"
                ? `The service rejected the request: ${f.message}`
                : "Service unreachable. Retry once it is back.";
        app.state = planFailed(app.state, text);
      } else {
        app.state = planFailed(app.state, "Unexpected error; see console.");
      }
    } finally {
      if (inFlight === controller) inFlight = null;
    }
    redraw();
  }

  function redraw(): void {
    const budgetLabel = $("#budget-label");
    budgetLabel.textContent = `${app.state.budgetMin} min`;
    ($("#plan-button") as HTMLButtonElement).disabled = app.state.inFlight;
    renderArtists(doc, $("#artist-list"), museum.artists, app.state, callbacks);
    renderRoomPanel(doc, $("#room-panel"), museum, app.selectedRoom, app.state, callbacks);
    renderPlanSummary(doc, $("#plan-panel"), app.state);
    renderTourOverlay(doc, $("#graph-host"), coords, app.state.plan, app.state.planStale);
  }

  redraw();
  return app;
}

declare global {
  interface Window {
    museplanApp?: Promise<App>;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined"
    && document.getElementById("graph-host")) {
  window.museplanApp = bootstrap(document);
  // bootstrap already surfaces failures in the error banner
  window.museplanApp.catch(() => undefined);
}
