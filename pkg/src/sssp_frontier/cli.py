"""Command-line front end: ``sssp-frontier <command> [options]``.

Exit status is 0 on success, 2 for usage errors and 3 when a computation
fails (for example a graph too dense for its vertex count).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench.dijkstra import measure_path_geometry
from .bench.fit import bench_runs, fit_cost_model, work_proxy
from .cost_models import GraphParams, default_registry, eval_dijkstra, eval_wesolowski
from .errors import FrontierError, ScenarioParseError
from .frontier import alpha_range, find_crossover, map_zones
from .report import (
    CALIBRATED,
    EXACT,
    ReportBundle,
    Table,
    crossover_table,
    cost_table,
    fit_record,
    make_metadata,
    ratio_table,
    sample_points,
    sweep_detail_table,
    sweep_table,
    write_bundle,
    zone_table,
)
from .scenarios import (
    PATH_LAWS,
    NGrid,
    builtin_scenarios,
    get_scenario,
    load_scenario,
    run_sweep,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COMPUTE = 3


class UsageError(Exception):
    pass


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _count(text: str) -> int:
    value = _number(text)
    if value != int(value):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _seed(text: str) -> int:
    value = _count(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def resolve_scenarios(spec):
    """Built-in scenario name, path to a scenario file, or None for all four."""
    if spec is None:
        return [(s, None) for s in builtin_scenarios()]
    try:
        return [(get_scenario(spec), None)]
    except KeyError:
        pass
    path = Path(spec)
    if not path.is_file():
        names = ", ".join(s.name for s in builtin_scenarios())
        raise UsageError(f"unknown scenario {spec!r} (built-ins: {names})")
    try:
        return [load_scenario(path)]
    except ScenarioParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _grid_from_args(args, file_grid):
    if args.nmin is None and args.nmax is None and args.ppd is None and file_grid is not None:
        return file_grid
    nmin = int(round(args.nmin if args.nmin is not None else 1e2))
    nmax = int(round(args.nmax if args.nmax is not None else 1e8))
    ppd = args.ppd if args.ppd is not None else 25
    try:
        return NGrid(nmin, nmax, ppd)
    except FrontierError as exc:
        raise UsageError(str(exc)) from None


def cmd_reproduce_tables(args) -> ReportBundle:
    bundle = ReportBundle(make_metadata("reproduce-tables", grid_mode=args.grid))
    bundle.tables["table1"] = cost_table(args.grid)
    bundle.tables["table2"] = ratio_table(args.grid)
    return bundle


def cmd_sweep(args) -> ReportBundle:
    bundle = ReportBundle(make_metadata("sweep", grid_mode=args.grid))
    registry = default_registry()
    for scenario, file_grid in resolve_scenarios(args.scenario):
        if args.grid == CALIBRATED:
            try:
                points = sample_points(scenario, CALIBRATED)
            except FrontierError as exc:
                raise UsageError(str(exc)) from None
        else:
            points = _grid_from_args(args, file_grid)
        sweep = run_sweep(scenario, points, registry)
        figure = sweep_table(sweep)
        bundle.figures[figure.name] = figure
        detail = sweep_detail_table(sweep)
        bundle.figures[detail.name] = detail
    return bundle


def cmd_crossover(args) -> ReportBundle:
    registry = default_registry()
    for model_id in (args.a, args.b):
        if model_id not in registry:
            raise UsageError(f"unknown model {model_id!r} (known: {', '.join(registry.ids())})")
    nmin = args.nmin if args.nmin is not None else 1e2
    nmax = args.nmax if args.nmax is not None else 1e8
    results = [
        find_crossover(scenario, args.a, args.b, (nmin, nmax), registry)
        for scenario, _ in resolve_scenarios(args.scenario)
    ]
    bundle = ReportBundle(make_metadata("crossover", n_range=[nmin, nmax]))
    table = crossover_table(results)
    bundle.crossovers[table.name] = table
    return bundle


def parse_alpha(text: str):
    """``lo:hi:count`` or a comma-separated list of exponents."""
    try:
        if ":" in text:
            lo, hi, count = text.split(":")
            count = float(count)
            if count != int(count) or count < 1:
                raise ValueError
            return alpha_range(float(lo), float(hi), int(count))
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --alpha {text!r}; expected lo:hi:count or a list") from None


def cmd_zones(args) -> ReportBundle:
    alphas = parse_alpha(args.alpha)
    labels = [p.strip() for p in args.paths.split(",") if p.strip()]
    unknown = [p for p in labels if p not in PATH_LAWS]
    if unknown or not labels:
        raise UsageError(f"unknown path law(s) {unknown}; choose from {sorted(PATH_LAWS)}")
    zmap = map_zones(alphas, labels, args.ref_n)
    bundle = ReportBundle(make_metadata("zones", reference_n=args.ref_n))
    table = zone_table(zmap)
    bundle.zone_maps[table.name] = table
    return bundle


def cmd_empirical(args) -> ReportBundle:
    scenarios = resolve_scenarios(args.scenario or "sparse-short")
    scenario = scenarios[0][0]
    nmin = int(round(args.nmin if args.nmin is not None else 256))
    nmax = int(round(args.nmax if args.nmax is not None else 16384))
    if nmin < 2 or nmax < nmin:
        raise UsageError(f"bad size range [{nmin}, {nmax}]")
    sizes = []
    n = nmin
    while n <= nmax:
        sizes.append(n)
        n *= 2
    runs = bench_runs(sizes, scenario.density, seed=args.seed)
    table = Table(
        f"empirical_{scenario.name}",
        ["n", "m", "heap_pushes", "heap_pops", "settled", "edge_relaxations",
         "work_proxy", "cost_dijkstra", "hop_max", "hop_mean", "weighted_max",
         "weighted_mean", "wesolowski_hop_l", "wesolowski_weighted_l"],
    )
    for g, params, run in runs:
        geo = measure_path_geometry(g, 0, run)
        s = run.stats
        table.rows.append([
            g.n, g.m, s.heap_pushes, s.heap_pops, s.settled, s.edge_relaxations,
            work_proxy(g.n, run), eval_dijkstra(params), geo.hops.max, geo.hops.mean,
            geo.weighted.max, geo.weighted.mean,
            eval_wesolowski(GraphParams(g.n, g.m, geo.hops.max)),
            eval_wesolowski(GraphParams(g.n, g.m, geo.weighted.max)),
        ])
    bundle = ReportBundle(make_metadata("empirical", seed=args.seed, scenario=scenario.name))
    bundle.figures[table.name] = table
    if len(runs) >= 5:
        report = fit_cost_model([(p, r) for _, p, r in runs])
        bundle.fits.append(fit_record(report, scenario=scenario.name))
    return bundle


COMMANDS = {
    "reproduce-tables": cmd_reproduce_tables,
    "sweep": cmd_sweep,
    "crossover": cmd_crossover,
    "zones": cmd_zones,
    "empirical": cmd_empirical,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sssp-frontier",
        description="Compare classical and quantum SSSP cost models.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="results", help="output directory (default: results)")
    common.add_argument("--format", choices=("csv", "json", "both"), default="both")
    common.add_argument("--quiet", action="store_true", help="do not print tables to stdout")

    sizes = argparse.ArgumentParser(add_help=False)
    sizes.add_argument("--nmin", type=_number)
    sizes.add_argument("--nmax", type=_number)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reproduce-tables", parents=[common], help="rebuild the cost and ratio tables")
    p.add_argument("--grid", choices=(EXACT, CALIBRATED), default=EXACT)

    p = sub.add_parser("sweep", parents=[common, sizes], help="cost series over an n-grid")
    p.add_argument("--scenario", help="built-in name or scenario file (default: all built-ins)")
    p.add_argument("--ppd", type=_count, help="points per decade (default 25)")
    p.add_argument("--grid", choices=(EXACT, CALIBRATED), default=EXACT,
                   help="calibrated: only the back-solved table sample points")

    p = sub.add_parser("crossover", parents=[common, sizes], help="n where two models cost the same")
    p.add_argument("--scenario", help="built-in name or scenario file (default: all built-ins)")
    p.add_argument("--a", required=True, help="first model id")
    p.add_argument("--b", required=True, help="second model id")

    p = sub.add_parser("zones", parents=[common], help="advantage map over density exponent x path law")
    p.add_argument("--alpha", default="0.5:2.5:9", help="lo:hi:count or comma list")
    p.add_argument("--paths", default="short,long")
    p.add_argument("--ref-n", type=_number, default=1e6)

    p = sub.add_parser("empirical", parents=[common, sizes], help="instrumented Dijkstra runs and fit")
    p.add_argument("--scenario", help="density law source (default: sparse-short)")
    p.add_argument("--seed", type=_seed, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        bundle = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FrontierError, ValueError, ArithmeticError) as exc:
        print(f"{parser.prog}: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    written = write_bundle(bundle, args.out, args.format, stem=args.command.replace("-", "_"))
    if not args.quiet:
        for table in bundle.all_tables():
            if table.name.startswith("detail_") or len(table.rows) > 40:
                continue
            print(f"# {table.name}")
            print(table.to_csv(6), end="")
        for rec in bundle.fits:
            print(f"# fit: slope={rec['slope']} r_squared={rec['r_squared']} constant={rec['constant']}")
        for path in written:
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
