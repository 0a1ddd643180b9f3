// Planner state and pure transitions. Pinned and excluded sets can never
// overlap: the conflicting interaction is rejected with a notice instead.

import type { PlanResponse } from "./types.js";

export const BUDGET_MIN = 30;
export const BUDGET_MAX = 330;
export const BUDGET_STEP = 15;

export interface PlannerState {
  interest: "f1" | "f2" | "f3" | "f4";
  selectedArtists: string[];
  pinned: string[];
  excluded: string[];
  budgetMin: number;
  plan: PlanResponse | null;
  planStale: boolean; // a previous tour shown dimmed after a failed re-plan
  notice: string | null;
  inFlight: boolean;
}

export function initialState(): PlannerState {
  return {
    interest: "f4",
    selectedArtists: [],
    pinned: [],
    excluded: [],
    budgetMin: 120,
    plan: null,
    planStale: false,
    notice: null,
    inFlight: false,
  };
}

export function clampBudget(value: number): number {
  const snapped = Math.round(value / BUDGET_STEP) * BUDGET_STEP;
  return Math.min(BUDGET_MAX, Math.max(BUDGET_MIN, snapped));
}

export function setBudget(state: PlannerState, value: number): PlannerState {
  return { ...state, budgetMin: clampBudget(value), notice: null };
}

export function setInterest(state: PlannerState, interest: PlannerState["interest"]): PlannerState {
  return { ...state, interest, notice: null };
}

export function toggleArtist(state: PlannerState, artist: string): PlannerState {
  const selected = state.selectedArtists.includes(artist)
    ? state.selectedArtists.filter((a) => a !== artist)
    : [...state.selectedArtists, artist].sort();
  return { ...state, selectedArtists: selected, notice: null };
}

function toggle(list: string[], id: string): string[] {
  return list.includes(id) ? list.filter((x) => x !== id) : [...list, id].sort();
}

export function togglePinned(state: PlannerState, id: string): PlannerState {
  if (state.excluded.includes(id) && !state.pinned.includes(id)) {
    return { ...state, notice: `"${id}" is excluded; remove the exclusion before pinning it` };
  }
  return { ...state, pinned: toggle(state.pinned, id), notice: null };
}

export function toggleExcluded(state: PlannerState, id: string): PlannerState {
  if (state.pinned.includes(id) && !state.excluded.includes(id)) {
    return { ...state, notice: `"${id}" is pinned; unpin it before excluding it` };
  }
  return { ...state, excluded: toggle(state.excluded, id), notice: null };
}

export function needsArtists(state: PlannerState): boolean {
  return (state.interest === "f3" || state.interest === "f4")
    && state.selectedArtists.length === 0;
}

export function planSucceeded(state: PlannerState, plan: PlanResponse): PlannerState {
  return { ...state, plan, planStale: false, notice: null, inFlight: false };
}

export function planFailed(state: PlannerState, notice: string): PlannerState {
  // keep the previous tour visible but dimmed
  return { ...state, planStale: state.plan !== null, notice, inFlight: false };
}
