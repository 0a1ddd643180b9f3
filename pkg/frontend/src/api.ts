// Thin typed client over the service's JSON endpoints.

import type { MuseumResponse, PlanFailure, PlanRequest, PlanResponse, ScoreRow } from "./types.js";

export class ApiError extends Error {
  constructor(readonly failure: PlanFailure) {
    super(failure.message);
  }
}

async function getJSON<T>(url: string, signal?: AbortSignal): Promise<T> {
  const res = await fetch(url, { headers: { Accept: "application/json" }, signal });
  if (!res.ok) throw new ApiError({ kind: "network", message: `${url} -> ${res.status}` });
  return res.json() as Promise<T>;
}

export function fetchMuseum(base: string): Promise<MuseumResponse> {
  return getJSON<MuseumResponse>(`${base}/museum`);
}

export async function fetchScores(base: string): Promise<ScoreRow[]> {
  const body = await getJSON<{ scores: ScoreRow[] }>(`${base}/scores`);
  return body.scores;
}

function detailText(detail: unknown): { reason?: string; message: string } {
  if (typeof detail === "string") return { message: detail };
  if (detail && typeof detail === "object") {
    const d = detail as { reason?: string; message?: string };
    return { reason: d.reason, message: d.message ?? JSON.stringify(detail) };
  }
  return { message: "request failed" };
}

export async function requestPlan(
  base: string,
  req: PlanRequest,
  signal?: AbortSignal,
): Promise<PlanResponse> {
  let res: Response;
  try {
    res = await fetch(`${base}/plan`, {
      method: "POST",
      headers: { "Content-Type": "application/json", Accept: "application/json" },
      body: JSON.stringify(req),
      signal,
    });
  } catch (err) {
    if ((err as Error).name === "AbortError") throw err;
    throw new ApiError({ kind: "network", message: "service unreachable - retry" });
  }
  if (res.ok) return res.json() as Promise<PlanResponse>;
  const body = (await res.json().catch(() => ({}))) as { detail?: unknown };
  const { reason, message } = detailText(body.detail);
  if (res.status === 422) throw new ApiError({ kind: "infeasible", reason, message });
  if (res.status === 503) throw new ApiError({ kind: "busy", reason, message });
  if (res.status === 400) throw new ApiError({ kind: "malformed", reason, message });
  throw new ApiError({ kind: "network", message: `plan failed with ${res.status}` });
}
