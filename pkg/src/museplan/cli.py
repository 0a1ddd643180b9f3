"""Command-line interface: rank, plan, simulate, validate."""

from __future__ import annotations

import argparse
import json
import sys

from museplan.corpus import MuseumFormatError, resolve_dataset, validate_museum
from museplan.evalsim import SweepConfig, relevance_percentage, run_sweep
from museplan.optrp import DEFAULT_NODE_CAP, plan, solution_report
from museplan.prefs import InterestFunctionSpec, build_interest
from museplan.textenergy import parse_stoplist, rank_artworks
from museplan.tour import validate_tour

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="museplan", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--museum", default="orangerie",
                       help="dataset path or bundled name (default: orangerie)")

    p_rank = sub.add_parser("rank", help="export the textual-energy score table")
    add_common(p_rank)
    p_rank.add_argument("--query", help="override the dataset's ranking query")
    p_rank.add_argument("--stoplist", help="path to a stoplist file")

    p_plan = sub.add_parser("plan", help="compute an optimal tour")
    add_common(p_plan)
    p_plan.add_argument("--interest", choices=["f1", "f2", "f3", "f4"], default="f1")
    p_plan.add_argument("--artists", default="", help="comma-separated artists (f3/f4)")
    p_plan.add_argument("--artist-weight", type=float, default=10.0)
    p_plan.add_argument("--tmax", type=float, required=True, help="time budget, minutes")
    p_plan.add_argument("--include", default="", help="comma-separated artwork ids")
    p_plan.add_argument("--exclude", default="", help="comma-separated artwork ids")
    p_plan.add_argument("--format", choices=["table", "json"], default="table")
    p_plan.add_argument("--solution-out",
                        help="write the full variable-level solution report here")
    p_plan.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)

    p_sim = sub.add_parser("simulate", help="run a relevance-percentage duration sweep")
    add_common(p_sim)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--durations", default="30:330:15", help="start:stop:step minutes")
    p_sim.add_argument("--combo-sizes", default="2,3,4,5")
    p_sim.add_argument("--combos-per-size", type=int, default=50)
    p_sim.add_argument("--full-scale", action="store_true",
                       help="1250 combos per size (the original 5000-combo protocol)")
    p_sim.add_argument("--kinds", default="f1,f2,f3,f4")
    p_sim.add_argument("--out", help="write the result table to this path")
    p_sim.add_argument("--chart", help="write an rp-vs-duration chart to this path")
    p_sim.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)

    p_val = sub.add_parser("validate", help="check a dataset file")
    add_common(p_val)
    return parser


def _csv_set(text: str) -> frozenset[str]:
    return frozenset(part.strip() for part in text.split(",") if part.strip())


def _cmd_rank(args) -> int:
    museum, _timing = resolve_dataset(args.museum)
    stoplist = None
    if args.stoplist:
        with open(args.stoplist, encoding="utf-8") as fh:
            stoplist = parse_stoplist(fh)
    table = rank_artworks(museum, query=args.query, stoplist=stoplist)
    sys.stdout.write(table.to_csv())
    return EXIT_OK


def _cmd_plan(args) -> int:
    museum, timing = resolve_dataset(args.museum)
    if args.tmax <= 0:
        print(f"error: infeasible: time budget must be positive, got {args.tmax}",
              file=sys.stderr)
        return EXIT_DATA
    include, exclude = _csv_set(args.include), _csv_set(args.exclude)
    overlap = include & exclude
    if overlap:
        print(f"error: include and exclude overlap: {sorted(overlap)}", file=sys.stderr)
        return EXIT_DATA

    energy = rank_artworks(museum) if args.interest in ("f2", "f4") else None
    warnings: list[str] = []
    try:
        spec = InterestFunctionSpec(kind=args.interest,
                                    selected_artists=_csv_set(args.artists),
                                    energy=energy, artist_weight=args.artist_weight)
        u = build_interest(spec, museum, warn=warnings)
        result = plan(museum, timing, u, args.tmax, include=include, exclude=exclude,
                      node_cap=args.node_cap)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)

    solution = result.solution
    if solution.status == "cap_exceeded":
        print(f"error: solver cap exceeded after {solution.nodes} nodes", file=sys.stderr)
        return EXIT_DATA
    if solution.status == "infeasible":
        print(f"error: infeasible: {solution.infeasible_reason}", file=sys.stderr)
        return EXIT_DATA

    if args.solution_out:
        with open(args.solution_out, "w", encoding="utf-8") as fh:
            json.dump(solution_report(result), fh, ensure_ascii=False, indent=1)

    tour = result.tour
    issues = validate_tour(tour, result.problem)
    if issues:  # pragma: no cover - asserted impossible
        print(f"error: internal: invalid tour: {issues}", file=sys.stderr)
        return EXIT_DATA
    rp = relevance_percentage(tour, dict(u), museum)

    if args.format == "json":
        payload = {
            "status": solution.status,
            "objective": solution.objective,
            "relevance_percentage": rp,
            "total_min": tour.total_min,
            "time_breakdown_min": {"rooms": tour.rooms_dm / 10,
                                   "arcs": tour.arcs_dm / 10,
                                   "artworks": tour.artworks_dm / 10},
            "steps": [{"room": s.vertex, "name": museum.names.get(s.vertex, s.vertex),
                       "artworks": list(s.artworks)} for s in tour.steps],
        }
        json.dump(payload, sys.stdout, ensure_ascii=False, indent=1)
        sys.stdout.write("\n")
    else:
        print("step,room,name,artworks")
        for i, step in enumerate(tour.steps, 1):
            name = museum.names.get(step.vertex, step.vertex)
            print(f"{i},{step.vertex},{name},{';'.join(step.artworks)}")
        print(f"# objective={solution.objective:.6f} rp={rp:.2f}% "
              f"time={tour.total_min:.1f}min of {args.tmax:.0f}min "
              f"(rooms {tour.rooms_dm / 10:.1f} + arcs {tour.arcs_dm / 10:.1f} "
              f"+ artworks {tour.artworks_dm / 10:.1f})")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    museum, timing = resolve_dataset(args.museum)
    try:
        start, stop, step = (int(x) for x in args.durations.split(":"))
        durations = tuple(range(start, stop + 1, step))
        combos = 1250 if args.full_scale else args.combos_per_size
        cfg = SweepConfig(durations=durations,
                          combo_sizes=tuple(int(x) for x in args.combo_sizes.split(",")),
                          combos_per_size=combos, seed=args.seed,
                          kinds=tuple(args.kinds.split(",")))
        result = run_sweep(museum, timing, cfg, node_cap=args.node_cap,
                           chart_path=args.chart)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    text = result.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if result.capped_cells:
        print(f"warning: {result.capped_cells} sweep cells hit the solver cap "
              "and were excluded from the means", file=sys.stderr)
    return EXIT_OK


def _cmd_validate(args) -> int:
    museum, _timing = resolve_dataset(args.museum, strict=False)
    issues = validate_museum(museum)
    for issue in issues:
        print(str(issue), file=sys.stderr)
    print(f"{museum.name}: {len(museum.vertices)} vertices, {len(museum.arcs)} arcs, "
          f"{len(museum.artworks)} artworks: " + ("INVALID" if issues else "OK"))
    return EXIT_DATA if issues else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "rank":
            return _cmd_rank(args)
        if args.command == "plan":
            return _cmd_plan(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        return _cmd_validate(args)
    except MuseumFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
