// Wire types for the planning service (see docs/openapi.json in the repo root).

export type VertexKind = "entrance" | "exit" | "room";

export interface Vertex {
  id: string;
  kind: VertexKind;
  name: string;
  room_time_min: number;
  layout?: [number, number];
}

export interface Arc {
  from: string;
  to: string;
  arc_time_min: number;
}

export interface ArtworkSummary {
  id: string;
  title: string;
  artist: string;
  year: number | null;
  room: string;
  artwork_time_min: number;
  score: number;
}

export interface MuseumResponse {
  name: string;
  assumptions: string[];
  vertices: Vertex[];
  arcs: Arc[];
  artists: string[];
  artworks: ArtworkSummary[];
}

export interface ScoreRow {
  id: string;
  raw_energy: number;
  score: number;
}

export interface PlanRequest {
  interest: "f1" | "f2" | "f3" | "f4";
  artists: string[];
  include: string[];
  exclude: string[];
  t_max_min: number;
  artist_weight?: number;
}

export interface PlanStep {
  room: string;
  name: string;
  artworks: { id: string; title: string }[];
}

export interface PlanResponse {
  status: string;
  objective: number;
  relevance_percentage: number;
  solver_nodes: number;
  time_breakdown_min: { rooms: number; arcs: number; artworks: number; total: number };
  t_max_min: number;
  steps: PlanStep[];
}

export interface PlanFailure {
  kind: "malformed" | "infeasible" | "busy" | "network";
  reason?: string;
  message: string;
}
