"""Stateless JSON-over-HTTP facade: museum data, scores, on-demand planning.

The dataset is the only state; it is loaded and validated at startup, scores
are computed once, and every plan request is solved on an isolated solver
instance over the shared immutable data. Planning runs in a worker thread
behind a bounded semaphore so one pathological request cannot starve the
pool.
"""

from __future__ import annotations

import argparse
import asyncio
import hashlib
import json
import os
from dataclasses import dataclass

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from museplan.corpus import Museum, TimingModel, resolve_dataset
from museplan.evalsim import relevance_percentage
from museplan.optrp import plan
from museplan.prefs import INTEREST_KINDS, InterestFunctionSpec, build_interest
from museplan.textenergy import EnergyTable, rank_artworks
from museplan.tour import validate_tour

DEFAULT_NODE_CAP_PER_REQUEST = 500_000


class PlanRequestModel(BaseModel):
    interest: str = Field(default="f1")
    artists: list[str] = Field(default_factory=list)
    include: list[str] = Field(default_factory=list)
    exclude: list[str] = Field(default_factory=list)
    t_max_min: float
    artist_weight: float = 10.0


@dataclass
class ServiceState:
    museum: Museum
    timing: TimingModel
    energy: EnergyTable
    museum_payload: dict
    museum_payload_full: dict
    etag: str
    node_cap: int


def _museum_payload(museum: Museum, timing: TimingModel, energy: EnergyTable,
                    full: bool) -> dict:
    vertices = []
    for v in sorted(museum.vertices):
        kind = ("entrance" if v in museum.entrances
                else "exit" if v in museum.exits else "room")
        entry = {"id": v, "kind": kind, "name": museum.names.get(v, v),
                 "room_time_min": timing.room_time[v]}
        if v in museum.layout:
            entry["layout"] = list(museum.layout[v])
        vertices.append(entry)
    artworks = []
    for a in museum.artworks:
        entry = {"id": a.id, "title": a.title, "artist": a.artist, "year": a.year,
                 "room": a.room, "artwork_time_min": timing.artwork_time[a.id],
                 "score": energy.score[a.id]}
        if full:
            entry["description"] = a.description
        artworks.append(entry)
    return {
        "name": museum.name,
        "assumptions": list(museum.assumptions),
        "vertices": vertices,
        "arcs": [{"from": a, "to": b, "arc_time_min": timing.arc_time[(a, b)]}
                 for a, b in sorted(museum.arcs)],
        "artists": list(museum.artists),
        "artworks": artworks,
    }


def create_app(dataset: str = "orangerie", *,
               node_cap: int = DEFAULT_NODE_CAP_PER_REQUEST,
               cors_origins: str = "*", workers: int | None = None) -> FastAPI:
    """Build the application; refuses to start on an invalid dataset."""
    museum, timing = resolve_dataset(dataset)
    energy = (rank_artworks(museum) if museum.artworks
              else EnergyTable(raw_energy={}, score={}))
    payload = _museum_payload(museum, timing, energy, full=False)
    payload_full = _museum_payload(museum, timing, energy, full=True)
    etag = '"' + hashlib.sha256(
        json.dumps(payload_full, sort_keys=True).encode()).hexdigest()[:32] + '"'
    state = ServiceState(museum=museum, timing=timing, energy=energy,
                         museum_payload=payload, museum_payload_full=payload_full,
                         etag=etag, node_cap=node_cap)

    app = FastAPI(title="museplan service", version="0.1.0")
    app.state.planner = state
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[o.strip() for o in cors_origins.split(",")],
        allow_methods=["*"], allow_headers=["*"],
    )
    solver_slots = asyncio.Semaphore(workers or os.cpu_count() or 2)

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"detail": "malformed request", "errors": exc.errors()})

    @app.get("/museum")
    def get_museum(request: Request, response: Response, full: int = 0):
        if request.headers.get("if-none-match") == state.etag:
            return Response(status_code=304, headers={"ETag": state.etag})
        response.headers["ETag"] = state.etag
        return state.museum_payload_full if full else state.museum_payload

    @app.get("/scores")
    def get_scores():
        return {"scores": [{"id": pid, "raw_energy": state.energy.raw_energy[pid],
                            "score": score}
                           for pid, score in state.energy.ranked()]}

    @app.post("/plan")
    async def post_plan(body: PlanRequestModel):
        async with solver_slots:
            return await asyncio.to_thread(_solve, state, body)

    def _solve(state: ServiceState, body: PlanRequestModel):
        museum = state.museum
        if body.interest not in INTEREST_KINDS:
            raise HTTPException(400, f"unknown interest kind {body.interest!r}")
        include, exclude = frozenset(body.include), frozenset(body.exclude)
        overlap = include & exclude
        if overlap:
            raise HTTPException(400, f"include and exclude overlap: {sorted(overlap)}")
        known = {a.id for a in museum.artworks}
        unknown = (include | exclude) - known
        if unknown:
            raise HTTPException(400, f"unknown artwork ids: {sorted(unknown)}")
        if not (body.t_max_min > 0):
            raise HTTPException(422, detail={"reason": "budget",
                                             "message": "time budget must be positive"})
        try:
            spec = InterestFunctionSpec(kind=body.interest,
                                        selected_artists=frozenset(body.artists),
                                        energy=state.energy,
                                        artist_weight=body.artist_weight)
            u = build_interest(spec, museum)
        except ValueError as exc:
            raise HTTPException(400, str(exc))

        result = plan(museum, state.timing, u, body.t_max_min,
                      include=include, exclude=exclude, node_cap=state.node_cap)
        solution = result.solution
        if solution.status == "cap_exceeded":
            raise HTTPException(
                503, detail={"reason": "cap_exceeded",
                             "message": "solver cap exceeded; retry with a simpler request",
                             "nodes": solution.nodes})
        if solution.status == "infeasible":
            reason = ("unreachable_include"
                      if solution.infeasible_reason == "include-unreachable" else "budget")
            raise HTTPException(422, detail={"reason": reason,
                                             "message": solution.infeasible_reason})

        tour = result.tour
        issues = validate_tour(tour, result.problem)
        if issues:  # pragma: no cover - asserted impossible for optimal solutions
            raise HTTPException(500, f"internal error: invalid tour: {issues}")
        titles = {a.id: a.title for a in museum.artworks}
        rp = relevance_percentage(tour, dict(u), museum) if any(u.values()) else 0.0
        return {
            "status": solution.status,
            "objective": solution.objective,
            "relevance_percentage": rp,
            "solver_nodes": solution.nodes,
            "time_breakdown_min": {"rooms": tour.rooms_dm / 10,
                                   "arcs": tour.arcs_dm / 10,
                                   "artworks": tour.artworks_dm / 10,
                                   "total": tour.total_min},
            "t_max_min": body.t_max_min,
            "steps": [{"room": s.vertex,
                       "name": museum.names.get(s.vertex, s.vertex),
                       "artworks": [{"id": p, "title": titles[p]} for p in s.artworks]}
                      for s in tour.steps],
        }

    return app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="museplan-serve", description=__doc__)
    parser.add_argument("--dataset", default="orangerie")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP_PER_REQUEST)
    parser.add_argument("--cors-origins", default="*")
    parser.add_argument("--ui-dir", help="serve this directory of static files at /")
    args = parser.parse_args(argv)

    app = create_app(args.dataset, node_cap=args.node_cap, cors_origins=args.cors_origins)
    if args.ui_dir:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=args.ui_dir, html=True), name="ui")

    import uvicorn
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
