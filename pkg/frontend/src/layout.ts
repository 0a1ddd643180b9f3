// Vertex coordinates: dataset-provided when present, else a small force layout.

import type { MuseumResponse } from "./types.js";

export type Coords = Map<string, { x: number; y: number }>;

export function resolveLayout(museum: MuseumResponse): Coords {
  const coords: Coords = new Map();
  const missing: string[] = [];
  for (const v of museum.vertices) {
    if (v.layout) coords.set(v.id, { x: v.layout[0], y: v.layout[1] });
    else missing.push(v.id);
  }
  if (missing.length === 0) return coords;
  return forceLayout(museum, coords, missing);
}

// Deterministic spring relaxation; good enough for desk-scale graphs.
function forceLayout(museum: MuseumResponse, fixed: Coords, missing: string[]): Coords {
  const coords: Coords = new Map(fixed);
  missing.forEach((id, i) => {
    const angle = (2 * Math.PI * i) / missing.length;
    coords.set(id, { x: 4 + 3 * Math.cos(angle), y: 3 + 3 * Math.sin(angle) });
  });
  const neighbours = new Map<string, string[]>();
  const link = (a: string, b: string) => {
    if (!neighbours.has(a)) neighbours.set(a, []);
    neighbours.get(a)!.push(b);
  };
  for (const a of museum.arcs) {
    link(a.from, a.to);
    link(a.to, a.from);
  }
  const movable = new Set(missing);
  for (let iter = 0; iter < 200; iter++) {
    for (const id of missing) {
      const p = coords.get(id)!;
      let fx = 0;
      let fy = 0;
      for (const [other, q] of coords) {
        if (other === id) continue;
        const dx = p.x - q.x;
        const dy = p.y - q.y;
        const d2 = Math.max(dx * dx + dy * dy, 0.01);
        fx += (1.2 * dx) / d2; // repulsion
        fy += (1.2 * dy) / d2;
      }
      for (const other of neighbours.get(id) ?? []) {
        const q = coords.get(other);
        if (!q) continue;
        fx += 0.08 * (q.x - p.x); // spring toward neighbours
        fy += 0.08 * (q.y - p.y);
      }
      if (movable.has(id)) coords.set(id, { x: p.x + 0.35 * fx, y: p.y + 0.35 * fy });
    }
  }
  return coords;
}

export function viewBox(coords: Coords, pad = 1.1): string {
  const xs = [...coords.values()].map((p) => p.x);
  const ys = [...coords.values()].map((p) => p.y);
  const minX = Math.min(...xs) - pad;
  const minY = Math.min(...ys) - pad;
  const w = Math.max(...xs) - minX + pad;
  const h = Math.max(...ys) - minY + pad;
  return `${minX} ${minY} ${w} ${h}`;
}
