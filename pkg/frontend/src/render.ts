// DOM rendering: museum graph as SVG, artwork/artist panels, tour overlay.
// All displayed numbers come verbatim from service responses.

import type { Coords } from "./layout.js";
import type { MuseumResponse, PlanResponse } from "./types.js";
import type { PlannerState } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderCallbacks {
  onToggleArtist(artist: string): void;
  onTogglePinned(id: string): void;
  onToggleExcluded(id: string): void;
  onSelectRoom(id: string): void;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  doc: Document, tag: K, attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = doc.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

export function renderGraph(
  doc: Document, host: Element, museum: MuseumResponse, coords: Coords,
  viewBox: string, onSelectRoom: (id: string) => void,
): void {
  host.textContent = "";
  const svg = svgEl(doc, "svg", { viewBox, class: "graph" });
  const defs = svgEl(doc, "defs", {});
  const marker = svgEl(doc, "marker", {
    id: "arrow", viewBox: "0 0 8 8", refX: "7", refY: "4",
    markerWidth: "5", markerHeight: "5", orient: "auto-start-reverse",
  });
  marker.appendChild(svgEl(doc, "path", { d: "M0,0 L8,4 L0,8 z", fill: "#8a8d93" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const seen = new Set<string>();
  for (const arc of museum.arcs) {
    const a = coords.get(arc.from)!;
    const b = coords.get(arc.to)!;
    const key = [arc.from, arc.to].sort().join("|");
    const twoWay = museum.arcs.some((o) => o.from === arc.to && o.to === arc.from);
    if (twoWay && seen.has(key)) continue;
    seen.add(key);
    const line = svgEl(doc, "line", {
      x1: String(a.x), y1: String(a.y), x2: String(b.x), y2: String(b.y),
      class: "arc", "data-from": arc.from, "data-to": arc.to,
    });
    if (!twoWay) line.setAttribute("marker-end", "url(#arrow)");
    svg.appendChild(line);
  }

  const artworksPerRoom = new Map<string, number>();
  for (const art of museum.artworks) {
    artworksPerRoom.set(art.room, (artworksPerRoom.get(art.room) ?? 0) + 1);
  }

  for (const vertex of museum.vertices) {
    const p = coords.get(vertex.id)!;
    const group = svgEl(doc, "g", {
      class: `vertex kind-${vertex.kind}`, "data-vertex": vertex.id,
      transform: `translate(${p.x} ${p.y})`,
    });
    if (vertex.kind === "room") {
      group.appendChild(svgEl(doc, "circle", { r: "0.42", class: "vertex-shape" }));
    } else {
      group.appendChild(svgEl(doc, "rect", {
        x: "-0.34", y: "-0.34", width: "0.68", height: "0.68",
        transform: "rotate(45)", class: "vertex-shape",
      }));
    }
    const label = svgEl(doc, "text", { y: "0.08", class: "vertex-label" });
    label.textContent = vertex.id;
    group.appendChild(label);
    const title = svgEl(doc, "title", {});
    const count = artworksPerRoom.get(vertex.id) ?? 0;
    title.textContent = `${vertex.name}${count ? ` - ${count} artworks` : ""}`;
    group.appendChild(title);
    group.addEventListener("click", () => onSelectRoom(vertex.id));
    svg.appendChild(group);
  }
  host.appendChild(svg);
}

export function renderTourOverlay(
  doc: Document, host: Element, coords: Coords, plan: PlanResponse | null, stale: boolean,
): void {
  const old = host.querySelector(".tour-overlay");
  if (old) old.remove();
  const svg = host.querySelector("svg");
  if (!svg || !plan) return;
  const layer = svgEl(doc, "g", { class: `tour-overlay${stale ? " stale" : ""}` });

  const points = plan.steps.map((s) => coords.get(s.room)!);
  const polyline = svgEl(doc, "polyline", {
    points: points.map((p) => `${p.x},${p.y}`).join(" "),
    class: "tour-path",
  });
  layer.appendChild(polyline);

  const visitsPerRoom = new Map<string, number>();
  plan.steps.forEach((step, i) => {
    const visit = visitsPerRoom.get(step.room) ?? 0;
    visitsPerRoom.set(step.room, visit + 1);
    const p = coords.get(step.room)!;
    const dx = 0.55 + 0.38 * visit;
    const badge = svgEl(doc, "g", {
      class: "step-badge", "data-step": String(i + 1), "data-room": step.room,
      transform: `translate(${p.x + dx} ${p.y - 0.45})`,
    });
    badge.appendChild(svgEl(doc, "circle", { r: "0.22", class: "step-circle" }));
    const num = svgEl(doc, "text", { y: "0.07", class: "step-number" });
    num.textContent = String(i + 1);
    badge.appendChild(num);
    layer.appendChild(badge);
  });
  svg.appendChild(layer);
}

export function renderArtists(
  doc: Document, host: Element, artists: string[], state: PlannerState,
  cb: RenderCallbacks,
): void {
  host.textContent = "";
  for (const artist of artists) {
    const label = doc.createElement("label");
    label.className = "artist-row";
    const box = doc.createElement("input");
    box.type = "checkbox";
    box.value = artist;
    box.checked = state.selectedArtists.includes(artist);
    box.addEventListener("change", () => cb.onToggleArtist(artist));
    label.appendChild(box);
    label.appendChild(doc.createTextNode(` ${artist}`));
    host.appendChild(label);
  }
}

export function renderRoomPanel(
  doc: Document, host: Element, museum: MuseumResponse, roomId: string | null,
  state: PlannerState, cb: RenderCallbacks,
): void {
  host.textContent = "";
  if (!roomId) {
    host.textContent = "Click a room to list its artworks.";
    return;
  }
  const vertex = museum.vertices.find((v) => v.id === roomId);
  const heading = doc.createElement("h3");
  heading.textContent = vertex ? `${vertex.name} (${roomId})` : roomId;
  host.appendChild(heading);
  const marked = new Set(state.plan?.steps.flatMap((s) => s.artworks.map((a) => a.id)) ?? []);
  for (const art of museum.artworks.filter((a) => a.room === roomId)) {
    const row = doc.createElement("div");
    row.className = "artwork-row";
    if (marked.has(art.id)) row.classList.add("in-tour");
    const badge = doc.createElement("span");
    badge.className = "score-badge";
    badge.textContent = art.score.toFixed(2);
    badge.title = "textual-energy score";
    row.appendChild(badge);
    const text = doc.createElement("span");
    text.className = "artwork-title";
    text.textContent = `${art.title} — ${art.artist}`;
    row.appendChild(text);
    const pin = doc.createElement("button");
    pin.textContent = state.pinned.includes(art.id) ? "unpin" : "pin";
    pin.className = "pin-btn" + (state.pinned.includes(art.id) ? " active" : "");
    pin.dataset.artwork = art.id;
    pin.addEventListener("click", () => cb.onTogglePinned(art.id));
    row.appendChild(pin);
    const ban = doc.createElement("button");
    ban.textContent = state.excluded.includes(art.id) ? "readmit" : "exclude";
    ban.className = "exclude-btn" + (state.excluded.includes(art.id) ? " active" : "");
    ban.dataset.artwork = art.id;
    ban.addEventListener("click", () => cb.onToggleExcluded(art.id));
    row.appendChild(ban);
    host.appendChild(row);
  }
}

export function renderPlanSummary(doc: Document, host: Element, state: PlannerState): void {
  host.textContent = "";
  const plan = state.plan;
  if (state.notice) {
    const note = doc.createElement("div");
    note.className = "notice";
    note.setAttribute("role", "alert");
    note.textContent = state.notice;
    host.appendChild(note);
  }
  if (!plan) return;
  const wrap = doc.createElement("div");
  wrap.className = "plan-summary" + (state.planStale ? " stale" : "");

  const rp = doc.createElement("div");
  rp.className = "rp-badge";
  rp.textContent = `${plan.relevance_percentage.toFixed(1)}%`;
  rp.title = "relevance percentage";
  wrap.appendChild(rp);

  const t = plan.time_breakdown_min;
  const breakdown = doc.createElement("div");
  breakdown.className = "time-breakdown";
  breakdown.textContent =
    `${t.total} min of ${plan.t_max_min} (rooms ${t.rooms} + paths ${t.arcs} + artworks ${t.artworks})`;
  wrap.appendChild(breakdown);

  const list = doc.createElement("ol");
  list.className = "step-list";
  for (const step of plan.steps) {
    const item = doc.createElement("li");
    item.dataset.room = step.room;
    const works = step.artworks.map((a) => a.title).join(", ");
    item.textContent = works ? `${step.name}: ${works}` : step.name;
    list.appendChild(item);
  }
  wrap.appendChild(list);
  host.appendChild(wrap);
}
