"""Museum dataset loading, validation and serialization.

A museum is a directed room graph (vertices, arcs, entrances, exits), a
catalog of artworks mapped to rooms, and a timing model giving the minutes
spent per room, per arc crossing and per artwork. Datasets are single JSON
files; the bundled ``orangerie`` dataset is the reference instance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

VERTEX_KINDS = ("entrance", "exit", "room")

_META_FIELDS = {"name", "assumptions", "layout", "query"}
_VERTEX_FIELDS = {"id", "kind", "room_time", "name"}
_ARC_FIELDS = {"from", "to", "arc_time"}
_ARTWORK_FIELDS = {"id", "title", "artist", "year", "description", "room", "artwork_time"}

DEFAULT_ARTWORK_TIME = 2.0
DEFAULT_ROOM_TIME = 1.0
DEFAULT_ARC_TIME = 0.5


class MuseumFormatError(ValueError):
    """Raised when a dataset file cannot be parsed or violates an invariant."""


@dataclass(frozen=True)
class Artwork:
    id: str
    title: str
    artist: str
    year: int | None
    description: str
    room: str


@dataclass(frozen=True, eq=False)
class Museum:
    """Immutable museum graph: six components ⟨vertices, arcs, entrances, exits, artworks, room_of⟩.

    ``names`` carries display names for vertices, ``layout`` optional 2D
    coordinates for UI rendering, ``query`` an optional ranking query shipped
    with the dataset. Instances are shared read-only across consumers.
    """

    name: str
    vertices: frozenset[str]
    arcs: frozenset[tuple[str, str]]
    entrances: frozenset[str]
    exits: frozenset[str]
    artworks: tuple[Artwork, ...]
    names: dict[str, str] = field(default_factory=dict)
    layout: dict[str, tuple[float, float]] = field(default_factory=dict)
    query: str | None = None
    assumptions: tuple[str, ...] = ()

    @property
    def room_of(self) -> dict[str, str]:
        return {a.id: a.room for a in self.artworks}

    @property
    def rooms(self) -> frozenset[str]:
        """Vertices that are neither entrances nor exits."""
        return self.vertices - self.entrances - self.exits

    @property
    def artists(self) -> tuple[str, ...]:
        return tuple(sorted({a.artist for a in self.artworks}))

    def artwork(self, artwork_id: str) -> Artwork:
        for a in self.artworks:
            if a.id == artwork_id:
                return a
        raise KeyError(artwork_id)

    def out_arcs(self, v: str) -> list[tuple[str, str]]:
        return sorted(a for a in self.arcs if a[0] == v)

    def in_arcs(self, v: str) -> list[tuple[str, str]]:
        return sorted(a for a in self.arcs if a[1] == v)


@dataclass(frozen=True, eq=False)
class TimingModel:
    """Minutes per room crossing, per arc crossing, and per artwork visit.

    All values are multiples of 0.1 min; integer-deciminute views keep the
    optimizer's feasibility arithmetic exact.
    """

    room_time: dict[str, float]
    arc_time: dict[tuple[str, str], float]
    artwork_time: dict[str, float]

    def room_dm(self, v: str) -> int:
        return round(self.room_time[v] * 10)

    def arc_dm(self, a: tuple[str, str]) -> int:
        return round(self.arc_time[a] * 10)

    def artwork_dm(self, p: str) -> int:
        return round(self.artwork_time[p] * 10)


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return f"{self.code}: {self.message}"


def _check_fields(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise MuseumFormatError(f"{where}: unknown field(s) {sorted(unknown)}")


def _check_time(value: Any, where: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise MuseumFormatError(f"{where}: time must be a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v) or v < 0:
        raise MuseumFormatError(f"{where}: time must be finite and >= 0, got {value!r}")
    if abs(v * 10 - round(v * 10)) > 1e-9:
        raise MuseumFormatError(f"{where}: time must be a multiple of 0.1 min, got {value!r}")
    return v


def load_museum(path: str | Path, *, strict: bool = True) -> tuple[Museum, TimingModel]:
    """Load and validate a dataset file; returns (Museum, TimingModel).

    Rejects files with unknown fields, malformed entries, or (when strict)
    graph invariant violations, naming the offending element. ``strict=False``
    defers graph validation to the caller for reporting purposes.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise MuseumFormatError(f"cannot read dataset {path}: {exc}") from exc
    return parse_museum(raw, strict=strict)


def load_bundled(name: str = "orangerie") -> tuple[Museum, TimingModel]:
    """Load one of the datasets shipped inside the package."""
    res = resources.files("museplan").joinpath(f"data/{name}.json")
    try:
        raw = json.loads(res.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise MuseumFormatError(f"no bundled dataset named {name!r}") from exc
    return parse_museum(raw)


def resolve_dataset(spec: str, *, strict: bool = True) -> tuple[Museum, TimingModel]:
    """Interpret ``spec`` as a file path if one exists, else a bundled name."""
    p = Path(spec)
    if p.is_file():
        return load_museum(p, strict=strict)
    return load_bundled(spec)


def parse_museum(raw: Any, *, strict: bool = True) -> tuple[Museum, TimingModel]:
    if not isinstance(raw, dict):
        raise MuseumFormatError("dataset root must be an object")
    _check_fields(raw, {"meta", "vertices", "arcs", "artworks"}, "dataset")
    for section in ("meta", "vertices", "arcs", "artworks"):
        if section not in raw:
            raise MuseumFormatError(f"dataset: missing section {section!r}")

    meta = raw["meta"]
    if not isinstance(meta, dict):
        raise MuseumFormatError("meta: must be an object")
    _check_fields(meta, _META_FIELDS, "meta")
    if not isinstance(meta.get("name"), str) or not meta["name"]:
        raise MuseumFormatError("meta.name: required non-empty string")
    assumptions = meta.get("assumptions", [])
    if not isinstance(assumptions, list) or not all(isinstance(s, str) for s in assumptions):
        raise MuseumFormatError("meta.assumptions: must be a list of strings")
    query = meta.get("query")
    if query is not None and not isinstance(query, str):
        raise MuseumFormatError("meta.query: must be a string")

    layout: dict[str, tuple[float, float]] = {}
    raw_layout = meta.get("layout", {})
    if not isinstance(raw_layout, dict):
        raise MuseumFormatError("meta.layout: must be an object of id -> [x, y]")
    for vid, xy in raw_layout.items():
        if (not isinstance(xy, list) or len(xy) != 2
                or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in xy)):
            raise MuseumFormatError(f"meta.layout[{vid!r}]: must be [x, y] numbers")
        layout[str(vid)] = (float(xy[0]), float(xy[1]))

    vertices: set[str] = set()
    kinds: dict[str, str] = {}
    names: dict[str, str] = {}
    room_time: dict[str, float] = {}
    if not isinstance(raw["vertices"], list):
        raise MuseumFormatError("vertices: must be a list")
    for entry in raw["vertices"]:
        if not isinstance(entry, dict):
            raise MuseumFormatError("vertices: entries must be objects")
        _check_fields(entry, _VERTEX_FIELDS, f"vertex {entry.get('id')!r}")
        vid = entry.get("id")
        if not isinstance(vid, str) or not vid:
            raise MuseumFormatError(f"vertex: id must be a non-empty string, got {vid!r}")
        if vid in vertices:
            raise MuseumFormatError(f"vertex {vid!r}: duplicate id")
        kind = entry.get("kind")
        if kind not in VERTEX_KINDS:
            raise MuseumFormatError(f"vertex {vid!r}: kind must be one of {VERTEX_KINDS}")
        vertices.add(vid)
        kinds[vid] = kind
        names[vid] = entry.get("name", vid)
        if not isinstance(names[vid], str):
            raise MuseumFormatError(f"vertex {vid!r}: name must be a string")
        room_time[vid] = _check_time(entry.get("room_time", DEFAULT_ROOM_TIME), f"vertex {vid!r}.room_time")

    arcs: set[tuple[str, str]] = set()
    arc_time: dict[tuple[str, str], float] = {}
    if not isinstance(raw["arcs"], list):
        raise MuseumFormatError("arcs: must be a list")
    for entry in raw["arcs"]:
        if not isinstance(entry, dict):
            raise MuseumFormatError("arcs: entries must be objects")
        _check_fields(entry, _ARC_FIELDS, f"arc {entry.get('from')!r}->{entry.get('to')!r}")
        src, dst = entry.get("from"), entry.get("to")
        label = f"arc {src!r}->{dst!r}"
        for end in (src, dst):
            if end not in vertices:
                raise MuseumFormatError(f"{label}: unknown vertex {end!r}")
        if src == dst:
            raise MuseumFormatError(f"{label}: self-loops are not allowed")
        if (src, dst) in arcs:
            raise MuseumFormatError(f"{label}: duplicate arc")
        arcs.add((src, dst))
        arc_time[(src, dst)] = _check_time(entry.get("arc_time", DEFAULT_ARC_TIME), f"{label}.arc_time")

    artworks: list[Artwork] = []
    artwork_time: dict[str, float] = {}
    seen_ids: set[str] = set()
    if not isinstance(raw["artworks"], list):
        raise MuseumFormatError("artworks: must be a list")
    for entry in raw["artworks"]:
        if not isinstance(entry, dict):
            raise MuseumFormatError("artworks: entries must be objects")
        _check_fields(entry, _ARTWORK_FIELDS, f"artwork {entry.get('id')!r}")
        pid = entry.get("id")
        if not isinstance(pid, str) or not pid:
            raise MuseumFormatError(f"artwork: id must be a non-empty string, got {pid!r}")
        if pid in seen_ids:
            raise MuseumFormatError(f"artwork {pid!r}: duplicate id")
        seen_ids.add(pid)
        title = entry.get("title")
        artist = entry.get("artist")
        if not isinstance(title, str) or not title:
            raise MuseumFormatError(f"artwork {pid!r}: title must be a non-empty string")
        if not isinstance(artist, str) or not artist:
            raise MuseumFormatError(f"artwork {pid!r}: artist must be a non-empty string")
        year = entry.get("year")
        if year is not None and not isinstance(year, int):
            raise MuseumFormatError(f"artwork {pid!r}: year must be an integer or null")
        description = entry.get("description", "")
        if not isinstance(description, str):
            raise MuseumFormatError(f"artwork {pid!r}: description must be a string")
        room = entry.get("room")
        if room not in vertices:
            raise MuseumFormatError(f"artwork {pid!r}: unknown room {room!r}")
        artworks.append(Artwork(pid, title, artist, year, description, room))
        artwork_time[pid] = _check_time(
            entry.get("artwork_time", DEFAULT_ARTWORK_TIME), f"artwork {pid!r}.artwork_time")

    museum = Museum(
        name=meta["name"],
        vertices=frozenset(vertices),
        arcs=frozenset(arcs),
        entrances=frozenset(v for v, k in kinds.items() if k == "entrance"),
        exits=frozenset(v for v, k in kinds.items() if k == "exit"),
        artworks=tuple(artworks),
        names=names,
        layout=layout,
        query=query,
        assumptions=tuple(assumptions),
    )
    timing = TimingModel(room_time=room_time, arc_time=arc_time, artwork_time=artwork_time)

    if strict:
        issues = validate_museum(museum)
        if issues:
            raise MuseumFormatError("invalid museum: " + "; ".join(str(i) for i in issues))
    return museum, timing


def validate_museum(m: Museum) -> list[ValidationIssue]:
    """Check the graph invariants; returns an empty list iff the museum is valid."""
    issues: list[ValidationIssue] = []
    if not m.entrances:
        issues.append(ValidationIssue("no-entrance", "museum has no entrance vertex"))
    if not m.exits:
        issues.append(ValidationIssue("no-exit", "museum has no exit vertex"))
    overlap = m.entrances & m.exits
    if overlap:
        issues.append(ValidationIssue(
            "entrance-exit-overlap",
            f"vertices {sorted(overlap)} are both entrance and exit; model them as two vertices"))
    for (src, dst) in sorted(m.arcs):
        if dst in m.entrances:
            issues.append(ValidationIssue("arc-into-entrance", f"arc {src}->{dst} enters entrance {dst}"))
        if src in m.exits:
            issues.append(ValidationIssue("arc-out-of-exit", f"outgoing arc from exit: {src}->{dst}"))
    rooms = m.rooms
    for a in m.artworks:
        if a.room not in rooms:
            issues.append(ValidationIssue(
                "artwork-room-kind", f"artwork {a.id} placed in {a.room}, which is not an exhibition room"))

    # Reachability: a directed path must exist from every entrance to some exit.
    succ: dict[str, list[str]] = {v: [] for v in m.vertices}
    for (src, dst) in m.arcs:
        succ[src].append(dst)
    for e in sorted(m.entrances):
        frontier, seen = [e], {e}
        found = False
        while frontier:
            v = frontier.pop()
            if v in m.exits:
                found = True
                break
            for w in succ[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        if not found:
            issues.append(ValidationIssue("no-exit-path", f"no entrance→exit path from entrance {e}"))
    return issues


def serialize_museum(m: Museum, t: TimingModel) -> dict:
    """Inverse of parse_museum; load(serialize(m, t)) reproduces the dataset."""
    meta: dict[str, Any] = {"name": m.name}
    if m.assumptions:
        meta["assumptions"] = list(m.assumptions)
    if m.layout:
        meta["layout"] = {v: [x, y] for v, (x, y) in sorted(m.layout.items())}
    if m.query is not None:
        meta["query"] = m.query

    def kind(v: str) -> str:
        if v in m.entrances:
            return "entrance"
        if v in m.exits:
            return "exit"
        return "room"

    vertices = []
    for v in sorted(m.vertices):
        entry: dict[str, Any] = {"id": v, "kind": kind(v), "room_time": t.room_time[v]}
        if m.names.get(v, v) != v:
            entry["name"] = m.names[v]
        vertices.append(entry)
    arcs = [{"from": src, "to": dst, "arc_time": t.arc_time[(src, dst)]}
            for (src, dst) in sorted(m.arcs)]
    artworks = [{"id": a.id, "title": a.title, "artist": a.artist, "year": a.year,
                 "description": a.description, "room": a.room,
                 "artwork_time": t.artwork_time[a.id]}
                for a in m.artworks]
    return {"meta": meta, "vertices": vertices, "arcs": arcs, "artworks": artworks}


def save_museum(m: Museum, t: TimingModel, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(serialize_museum(m, t), ensure_ascii=False, indent=1), encoding="utf-8")
