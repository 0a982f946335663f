"""Command-line entry point: run pipelines and emit machine-readable JSON reports.

Every report is fully determined by (input file, flags, seed); pass
--no-timing to mask wall-clock fields so reports can be compared byte for
byte across worker counts.
"""

from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from . import ego as ego_mod
from . import oracle as oracle_mod
from . import sampling, theory
from .engine import Engine
from .errors import IntegrityError, ParseError, UsageError
from .graph import UndirectedGraph, load_edge_list
from .profiles import (ProfileVector, compute_profile, count_triangles_only,
                       gather_local_profiles, global_profile_from_local,
                       scatter_edge_scalars)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def accuracy_ratio(exact: ProfileVector, estimate: ProfileVector):
    """Componentwise exact/estimate; a zero estimate yields null plus a warning."""
    ratios: list[float | None] = []
    warnings: list[str] = []
    names = ("n0", "n1", "n2", "n3")
    for name, ex, est in zip(names, exact.as_tuple(), estimate.as_tuple()):
        if float(est) == 0.0:
            ratios.append(None)
            warnings.append(f"estimate for {name} is zero; ratio undefined")
        else:
            ratios.append(float(ex) / float(est))
    return ratios, warnings


def _build_parser() -> _Parser:
    parser = _Parser(prog="triprof",
                     description="3-profiles of undirected graphs: exact, sampled, and ego")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, graph=True):
        if graph:
            p.add_argument("graph", help="edge-list file ('#' comments, two labels per line)")
            p.add_argument("--vertex-count", type=int, default=None,
                           help="declare |V| larger than the labels seen (isolated vertices)")
        p.add_argument("--threads", type=int, default=None,
                       help="worker cap (default: TRIPROF_THREADS or all cores)")
        p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
        p.add_argument("--no-timing", action="store_true",
                       help="mask wall-clock and worker fields for byte-stable reports")

    p = sub.add_parser("profile", help="global and per-vertex 3-profile, exact or sampled")
    add_common(p)
    p.add_argument("--p", type=float, default=1.0, help="edge sampling probability")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=1,
                   help="sampled repetitions with seeds seed, seed+1, ...")
    p.add_argument("--compare-exact", action="store_true",
                   help="also run exactly and report accuracy ratios")
    p.add_argument("--local-tsv", default=None,
                   help="write the exact per-vertex table here")

    p = sub.add_parser("ego", help="ego 3-profiles for a set of centers")
    add_common(p)
    p.add_argument("--centers", default=None, help="file with one center label per line")
    p.add_argument("--random", type=int, default=None, metavar="K",
                   help="pick K random centers")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--all", action="store_true", help="every vertex is a center")
    p.add_argument("--mode", choices=("serial", "parallel"), default="parallel")
    p.add_argument("--tsv", default=None, help="write 'center f0 f1 f2 f3' rows here")

    p = sub.add_parser("oracle", help="brute-force reference counts for cross-checking")
    add_common(p)
    p.add_argument("--ego", action="store_true", help="ego table instead of the global profile")
    p.add_argument("--centers", default=None)
    p.add_argument("--random", type=int, default=None, metavar="K")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--all", action="store_true")
    p.add_argument("--tsv", default=None)
    p.add_argument("--four-cliques", action="store_true",
                   help="include the global 4-clique count")

    p = sub.add_parser("sparsifier-check", help="evaluate the sampling feasibility conditions")
    add_common(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--log-base", choices=("e", "2"), default="e")
    p.add_argument("--form", choices=("final", "prefinal"), default="final")

    p = sub.add_parser("polys", help="evaluate the indicator polynomials on sampled masks")
    add_common(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--max-wedges", type=int, default=50_000_000,
                   help="refuse graphs whose wedge count exceeds this budget")

    p = sub.add_parser("bench", help="full profile vs triangles-only wall time")
    add_common(p)
    p.add_argument("--runs", type=int, default=5, help="median over this many runs")

    return parser


def _load_graph(args) -> UndirectedGraph:
    return load_edge_list(args.graph, vertex_count=args.vertex_count)


def _graph_block(args, g: UndirectedGraph) -> dict:
    return {"path": args.graph, "vertices": g.vertex_count, "edges": g.edge_count}


def _emit(args, report: dict) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _finish(args, engine: Engine, report: dict, started: float) -> dict:
    report["phases"] = [s.as_json(mask_timing=args.no_timing) for s in engine.phases]
    report["elapsed_seconds"] = None if args.no_timing else time.perf_counter() - started
    return report


def _select_centers(args, g: UndirectedGraph) -> list[int]:
    chosen = sum(1 for f in (args.centers, args.random, args.all if args.all else None)
                 if f is not None)
    if chosen != 1:
        raise UsageError("pick exactly one of --centers, --random, --all")
    if args.all:
        return list(range(g.vertex_count))
    if args.random is not None:
        if args.random < 0:
            raise UsageError("--random must be non-negative")
        rng = np.random.default_rng(args.seed)
        k = min(args.random, g.vertex_count)
        return sorted(int(v) for v in rng.choice(g.vertex_count, size=k, replace=False))
    lines = Path(args.centers).read_text().splitlines()
    return [g.id_of_label(line.strip()) for line in lines if line.strip()]


def _write_local_tsv(path: str, g: UndirectedGraph, locals_) -> None:
    with open(path, "w") as fh:
        fh.write("vertex\tn0\tn1_e\tn1_d\tn2_e\tn2_c\tn3\n")
        for v in range(g.vertex_count):
            row = locals_.row(v)
            fh.write(g.label_of(v) + "\t" + "\t".join(str(x) for x in row) + "\n")


def _cmd_profile(args) -> dict:
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    if not 0 < args.p <= 1:
        raise UsageError(f"sampling probability must be in (0, 1], got {args.p}")
    started = time.perf_counter()
    g = _load_graph(args)
    engine = Engine(args.threads)
    report: dict = {"command": "profile", "graph": _graph_block(args, g)}
    warnings: list[str] = []

    exact = None
    if args.p == 1.0 or args.compare_exact or args.local_tsv:
        exact, locals_ = compute_profile(g, engine)
        report["global"] = exact.as_json()
        if args.local_tsv:
            _write_local_tsv(args.local_tsv, g, locals_)
            report["local_path"] = args.local_tsv

    if args.p < 1.0:
        report["sampling"] = {"p": args.p, "seed": args.seed, "runs": args.runs}
        runs = []
        for i in range(args.runs):
            params = sampling.SampleParams(args.p, (args.seed + i) % 2 ** 64)
            estimate, _ = sampling.estimate_profile(g, params, engine)
            vals = estimate.as_floats()
            runs.append({"seed": params.seed,
                         "estimate": dict(zip(("n0", "n1", "n2", "n3"), vals))})
            for name, val in zip(("n0", "n1", "n2", "n3"), vals):
                if val < 0:
                    warnings.append(
                        f"run seed={params.seed}: negative estimate for {name} "
                        "(sampling noise, reported unclamped)")
        report["runs"] = runs
        per_entry = list(zip(*(tuple(r["estimate"].values()) for r in runs)))
        mean = [statistics.fmean(vals) for vals in per_entry]
        stdev = [statistics.stdev(vals) if len(vals) > 1 else 0.0 for vals in per_entry]
        report["estimate_mean"] = dict(zip(("n0", "n1", "n2", "n3"), mean))
        report["estimate_stddev"] = dict(zip(("n0", "n1", "n2", "n3"), stdev))
        if args.compare_exact:
            mean_profile = ProfileVector(*mean)
            ratios, ratio_warnings = accuracy_ratio(exact, mean_profile)
            report["accuracy_ratio"] = dict(zip(("n0", "n1", "n2", "n3"), ratios))
            warnings.extend(ratio_warnings)

    report["warnings"] = warnings
    return _finish(args, engine, report, started)


def _ego_rows(g: UndirectedGraph, profiles: dict[int, "ego_mod.EgoProfile"]):
    return [[g.label_of(v)] + list(p.as_tuple()) for v, p in profiles.items()]


def _write_ego_tsv(path: str, rows) -> None:
    with open(path, "w") as fh:
        fh.write("center\tf0\tf1\tf2\tf3\n")
        for row in rows:
            fh.write("\t".join(str(x) for x in row) + "\n")


def _cmd_ego(args) -> dict:
    started = time.perf_counter()
    g = _load_graph(args)
    engine = Engine(args.threads)
    centers = _select_centers(args, g)
    run = ego_mod.ego_serial if args.mode == "serial" else ego_mod.ego_parallel
    profiles = run(g, centers, engine)
    rows = _ego_rows(g, profiles)
    report: dict = {"command": "ego", "graph": _graph_block(args, g),
                    "mode": args.mode, "centers": len(profiles)}
    if args.tsv:
        _write_ego_tsv(args.tsv, rows)
        report["table_path"] = args.tsv
    else:
        report["egos"] = rows
    return _finish(args, engine, report, started)


def _cmd_oracle(args) -> dict:
    started = time.perf_counter()
    g = _load_graph(args)
    engine = Engine(args.threads)
    report: dict = {"command": "oracle", "graph": _graph_block(args, g),
                    "method": "brute-force"}
    if args.ego:
        centers = _select_centers(args, g)
        profiles = {v: oracle_mod.brute_force_ego(g, v) for v in dict.fromkeys(centers)}
        rows = _ego_rows(g, profiles)
        report["centers"] = len(profiles)
        if args.tsv:
            _write_ego_tsv(args.tsv, rows)
            report["table_path"] = args.tsv
        else:
            report["egos"] = rows
    else:
        report["global"] = oracle_mod.brute_force_profile(g).as_json()
    if args.four_cliques:
        report["four_cliques"] = oracle_mod.brute_force_four_cliques(g)
    return _finish(args, engine, report, started)


def _cmd_sparsifier_check(args) -> dict:
    started = time.perf_counter()
    g = _load_graph(args)
    engine = Engine(args.threads)
    scalars = scatter_edge_scalars(g, engine)
    profile = global_profile_from_local(gather_local_profiles(g, scalars, engine))
    extremes = theory.edge_extremes(g, scalars)
    base = math.e if args.log_base == "e" else 2.0
    result = theory.check_theorem_conditions(
        profile, extremes, g.edge_count, args.p, args.epsilon, args.gamma,
        log_base=base, form=args.form)
    report = {"command": "sparsifier-check", "graph": _graph_block(args, g),
              "profile": profile.as_json(),
              "extremes": {"alpha": extremes.alpha, "beta": extremes.beta,
                           "delta": extremes.delta},
              "form": args.form}
    report.update(result.as_json())
    return _finish(args, engine, report, started)


def _cmd_polys(args) -> dict:
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    started = time.perf_counter()
    g = _load_graph(args)
    engine = Engine(args.threads)
    terms = theory.census_terms(g, max_wedges=args.max_wedges)
    runs = []
    for i in range(args.runs):
        params = sampling.SampleParams(args.p, (args.seed + i) % 2 ** 64)
        mask = sampling.sample_mask(g, params)
        values = theory.evaluate_polynomials(g, mask, terms)
        r1, r2 = values.identity_residuals()
        runs.append({"seed": params.seed, "values": values.as_json(),
                     "identity_residuals": [r1, r2]})
    report = {"command": "polys", "graph": _graph_block(args, g),
              "p": args.p, "runs": runs}
    return _finish(args, engine, report, started)


def _cmd_bench(args) -> dict:
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    started = time.perf_counter()
    g = _load_graph(args)
    tri_times = []
    full_times = []
    for _ in range(args.runs):
        engine = Engine(args.threads)
        t0 = time.perf_counter()
        count_triangles_only(g, engine)
        tri_times.append(time.perf_counter() - t0)
        t0 = time.perf_counter()
        compute_profile(g, engine)
        full_times.append(time.perf_counter() - t0)
    tri_med = statistics.median(tri_times)
    full_med = statistics.median(full_times)
    engine = Engine(args.threads)
    report = {"command": "bench", "graph": _graph_block(args, g),
              "runs": args.runs,
              "triangles_only_seconds": tri_med,
              "full_profile_seconds": full_med,
              "ratio": full_med / tri_med if tri_med > 0 else None,
              "workers": engine.workers}
    return _finish(args, engine, report, started)


_COMMANDS = {
    "profile": _cmd_profile,
    "ego": _cmd_ego,
    "oracle": _cmd_oracle,
    "sparsifier-check": _cmd_sparsifier_check,
    "polys": _cmd_polys,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        report = _COMMANDS[args.command](args)
        _emit(args, report)
        return 0
    except UsageError as exc:
        print(f"triprof: usage error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, IntegrityError) as exc:
        print(f"triprof: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"triprof: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
