"""Command-line entry point wiring all modules.

Subcommands: generate, simulate, sweep, capacity, profile, analyze. Every
run writes its outputs plus a ``manifest.json`` capturing the resolved
configuration and tool version; re-running the same invocation reproduces
the outputs byte for byte. All randomness flows from a single ``--seed``
through named sub-seed derivation (see cospread.seeds).

Exit codes: 0 success, 2 bad arguments, 3 missing input file, 4 validation
or domain error.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .capacity import AudienceModel, capacities, expected_yield_connected, select_broadcaster
from .diffusion import (SimParams, run_replicates, write_replicates_csv,
                        write_summary_json, write_trace_csv)
from .errors import CospreadError, ParseError, ValidationError
from .generators import GeneratorSpec, community_ensemble, generate, mixed_ensemble
from .graph import (build_graph, connected_components, density, read_edge_list,
                    write_edge_list, write_id_map)
from .multiplex import frontier, read_labels, viable_candidates, write_labels
from .profiles import (group_centrality_report, is_bot, read_profiles,
                       transition_matrix, write_group_centrality_json,
                       write_scores_csv, write_transitions_csv)
from .sweep import correlations, run_sweep, write_correlations_json, write_sweep_csv

EXIT_USAGE = 2
EXIT_MISSING_FILE = 3
EXIT_VALIDATION = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: usage: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _ensure_out(path):
    os.makedirs(path, exist_ok=True)
    return path


def _write_manifest(out_dir, subcommand, config, outputs):
    manifest = {
        "tool": "cospread",
        "version": __version__,
        "subcommand": subcommand,
        "config": config,
        "outputs": sorted(outputs),
    }
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def _load_graph_and_labels(edges_path, labels_path):
    edges, id_map = read_edge_list(edges_path)
    labels = read_labels(labels_path, id_map=id_map)
    g = build_graph(edges, directed=False, node_count=len(id_map))
    if labels.node_count < g.node_count:
        raise ValidationError("label file does not cover every graph node")
    return g, labels, id_map


def _read_seed_set(path, id_map):
    seeds = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            tok = raw.split("#", 1)[0].strip()
            if not tok:
                continue
            if tok not in id_map:
                raise ValidationError(f"seed id {tok!r} not present in graph (line {lineno})")
            seeds.append(id_map[tok])
    return seeds


def _sim_params(args):
    return SimParams(
        steps=args.steps,
        dormancy_rate=args.tau,
        diffusion_scale=args.p,
        dormancy_mode=args.dormancy_mode,
        rng_seed=args.seed,
    )


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_generate(args):
    out = _ensure_out(args.out)
    spec_fields = {}
    for name in ("a_size", "b_size", "a_density", "b_density", "inter_density",
                 "a_frontier_fraction", "b_frontier_fraction", "overlap_fraction",
                 "satellites", "satellite_size", "satellite_density", "bridges",
                 "satellite_seed_fraction", "detached_satellites",
                 "weak_link_mode", "weak_link_count", "n", "edge_prob",
                 "attach", "seed_fraction"):
        value = getattr(args, name)
        if value is not None:
            spec_fields[name] = value
    if args.audience_sizes:
        spec_fields["audience_sizes"] = tuple(int(x) for x in args.audience_sizes.split(","))
    if args.audience_seeds:
        spec_fields["audience_seeds"] = tuple(int(x) for x in args.audience_seeds.split(","))
    spec = GeneratorSpec(kind=args.kind, rng_seed=args.seed, **spec_fields)
    g, labels = generate(spec)
    write_edge_list(os.path.join(out, "edges.txt"), g)
    write_labels(os.path.join(out, "labels.csv"), labels)
    _write_manifest(out, "generate", {"spec": spec.to_dict()},
                    ["edges.txt", "labels.csv"])
    print(f"generated {g.node_count} nodes, {g.edge_count} edges -> {out}")
    return 0


def _cmd_simulate(args):
    out = _ensure_out(args.out)
    g, labels, id_map = _load_graph_and_labels(args.edges, args.labels)
    seeds = _read_seed_set(args.seed_set, id_map) if args.seed_set else None
    params = _sim_params(args)
    traces = run_replicates(g, labels, params, args.replicates, seeds=seeds)
    outputs = []
    for r, trace in enumerate(traces):
        name = f"trace_{r:04d}.csv"
        write_trace_csv(os.path.join(out, name), trace)
        outputs.append(name)
    write_summary_json(os.path.join(out, "summary.json"), traces, params, args.seed)
    write_replicates_csv(os.path.join(out, "replicates.csv"), traces)
    write_id_map(os.path.join(out, "idmap.csv"), id_map)
    outputs += ["summary.json", "replicates.csv", "idmap.csv"]
    config = {"edges": args.edges, "labels": args.labels,
              "seed_set": args.seed_set, "replicates": args.replicates,
              "params": params.to_dict()}
    _write_manifest(out, "simulate", config, outputs)
    mean_yield = float(np.mean([t.conversion_yield for t in traces]))
    print(f"{len(traces)} replicate(s), mean yield {mean_yield:.4f} -> {out}")
    return 0


def _cmd_sweep(args):
    out = _ensure_out(args.out)
    if args.specs:
        with open(args.specs, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        specs = [GeneratorSpec.from_dict(item) for item in raw]
    elif args.ensemble == "mixed":
        specs = mixed_ensemble(args.seed, count=args.count)
    elif args.ensemble == "community":
        specs = community_ensemble(args.seed)
    else:
        raise ValidationError("sweep requires --specs FILE or --ensemble NAME")
    params = _sim_params(args)
    pool = ThreadPoolExecutor(max_workers=args.threads) if args.threads != 1 else None
    try:
        records = run_sweep(specs, params, args.replicates, pool=pool)
    finally:
        if pool is not None:
            pool.shutdown()
    write_sweep_csv(os.path.join(out, "sweep.csv"), records)
    corr = correlations(records)
    write_correlations_json(os.path.join(out, "correlations.json"), corr)
    config = {"specs": args.specs, "ensemble": args.ensemble, "count": args.count,
              "replicates": args.replicates, "params": params.to_dict()}
    _write_manifest(out, "sweep", config, ["sweep.csv", "correlations.json"])
    shown = {k: ("n/a" if v is None else f"{v:+.3f}") for k, v in corr.items()}
    print("spearman: " + ", ".join(f"{k}={v}" for k, v in shown.items()))
    return 0


def _cmd_capacity(args):
    out = _ensure_out(args.out)
    with open(args.model, "r", encoding="utf-8") as fh:
        model = AudienceModel.from_dict(json.load(fh))
    caps = capacities(model)
    yields = [expected_yield_connected(i, model) for i in range(model.k)]
    chosen = select_broadcaster(model)
    result = {
        "p": model.p,
        "tau": model.tau,
        "capacities": [float(v) for v in caps],
        "expected_yields_connected": yields,
        "selected_broadcaster": chosen,
    }
    with open(os.path.join(out, "capacity.json"), "w", encoding="utf-8") as fh:
        json.dump(result, fh, indent=2)
        fh.write("\n")
    _write_manifest(out, "capacity", {"model": args.model}, ["capacity.json"])
    print(f"selected broadcaster {chosen} (capacity {caps[chosen]!r})")
    return 0


def _cmd_profile(args):
    out = _ensure_out(args.out)
    profiles = read_profiles(args.profiles)
    outputs = ["scores.csv"]
    write_scores_csv(os.path.join(out, "scores.csv"), profiles)

    humans = [p for p in profiles if not is_bot(p.botscore)]
    if args.topics:
        whitelist = [t.strip() for t in args.topics.split(",") if t.strip()]
        tm = transition_matrix(humans, whitelist)
        write_transitions_csv(os.path.join(out, "transitions.csv"), tm)
        outputs.append("transitions.csv")

    if args.edges:
        edges, id_map = read_edge_list(args.edges)
        g = build_graph(edges, directed=True, node_count=len(id_map))
        groups = [None] * g.node_count
        for prof in humans:
            dense = id_map.get(prof.user_id)
            if dense is not None:
                groups[dense] = prof.group
        report = group_centrality_report(g, groups)
        write_group_centrality_json(os.path.join(out, "centrality.json"), report)
        write_id_map(os.path.join(out, "idmap.csv"), id_map)
        outputs += ["centrality.json", "idmap.csv"]

    config = {"profiles": args.profiles, "edges": args.edges, "topics": args.topics}
    _write_manifest(out, "profile", config, outputs)
    print(f"scored {len(profiles)} profiles ({len(profiles) - len(humans)} bots) -> {out}")
    return 0


def _cmd_analyze(args):
    out = _ensure_out(args.out)
    g, labels, id_map = _load_graph_and_labels(args.edges, args.labels)
    report = frontier(g, labels)
    count, _ = connected_components(g)
    metrics = {
        "node_count": g.node_count,
        "edge_count": g.edge_count,
        "density": density(g),
        "component_count": count,
        "viable_candidates": int(viable_candidates(labels).size),
        # Frontier counts interface nodes on both the A and the B side.
        "frontier_definition": "both_sides",
    }
    with open(os.path.join(out, "frontier.json"), "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
    with open(os.path.join(out, "metrics.json"), "w", encoding="utf-8") as fh:
        json.dump(metrics, fh, indent=2)
        fh.write("\n")
    write_id_map(os.path.join(out, "idmap.csv"), id_map)
    config = {"edges": args.edges, "labels": args.labels}
    _write_manifest(out, "analyze", config, ["frontier.json", "metrics.json", "idmap.csv"])
    print(f"frontier {report.frontier_size} of {report.total_network_size} -> {out}")
    return 0


# ---------------------------------------------------------------------------
# Argument wiring
# ---------------------------------------------------------------------------

def _add_sim_flags(sub):
    sub.add_argument("--steps", type=int, default=400)
    sub.add_argument("--tau", type=float, default=0.005)
    sub.add_argument("--p", type=float, default=0.01)
    sub.add_argument("--dormancy-mode", dest="dormancy_mode",
                     choices=("infected_only", "all_nodes"), default="infected_only")


def build_parser() -> _Parser:
    parser = _Parser(prog="cospread", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="subcommand", required=True)

    gen = subs.add_parser("generate", help="emit a synthetic multiplex network")
    gen.add_argument("--kind", required=True,
                     choices=("dense_frontier", "fragmented_frontier",
                              "broadcaster_star", "erdos_renyi", "barabasi_albert"))
    for name, typ in [("a_size", int), ("b_size", int), ("a_density", float),
                      ("b_density", float), ("inter_density", float),
                      ("a_frontier_fraction", float), ("b_frontier_fraction", float),
                      ("overlap_fraction", float), ("satellites", int),
                      ("satellite_size", int), ("satellite_density", float),
                      ("bridges", int), ("satellite_seed_fraction", float),
                      ("detached_satellites", int), ("weak_link_count", int),
                      ("n", int), ("edge_prob", float), ("attach", int),
                      ("seed_fraction", float)]:
        gen.add_argument("--" + name.replace("_", "-"), dest=name, type=typ, default=None)
    gen.add_argument("--weak-link-mode", dest="weak_link_mode",
                     choices=("ring", "random"), default=None)
    gen.add_argument("--audience-sizes", dest="audience_sizes", default=None,
                     help="comma-separated audience sizes for broadcaster_star")
    gen.add_argument("--audience-seeds", dest="audience_seeds", default=None,
                     help="comma-separated initial converts per audience")
    gen.set_defaults(handler=_cmd_generate)

    sim = subs.add_parser("simulate", help="run diffusion on a labeled network")
    sim.add_argument("--edges", required=True)
    sim.add_argument("--labels", required=True)
    sim.add_argument("--seed-set", dest="seed_set", default=None,
                     help="file of node ids overriding the A-labeled seed set")
    sim.add_argument("--replicates", type=int, default=1)
    _add_sim_flags(sim)
    sim.set_defaults(handler=_cmd_simulate)

    swp = subs.add_parser("sweep", help="yield vs topology over a spec ensemble")
    swp.add_argument("--specs", default=None, help="JSON list of generator specs")
    swp.add_argument("--ensemble", choices=("mixed", "community"), default=None)
    swp.add_argument("--count", type=int, default=100)
    swp.add_argument("--replicates", type=int, default=100)
    _add_sim_flags(swp)
    swp.set_defaults(handler=_cmd_sweep)

    cap = subs.add_parser("capacity", help="closed-form audience capacity model")
    cap.add_argument("--model", required=True, help="AudienceModel JSON file")
    cap.set_defaults(handler=_cmd_capacity)

    prof = subs.add_parser("profile", help="score user profiles")
    prof.add_argument("--profiles", required=True, help="JSONL of user profiles")
    prof.add_argument("--edges", default=None, help="directed retweet edge list")
    prof.add_argument("--topics", default=None, help="comma-separated topic whitelist")
    prof.set_defaults(handler=_cmd_profile)

    ana = subs.add_parser("analyze", help="frontier and topology metrics")
    ana.add_argument("--edges", required=True)
    ana.add_argument("--labels", required=True)
    ana.set_defaults(handler=_cmd_analyze)

    for sub in (gen, sim, swp, cap, prof, ana):
        sub.add_argument("--out", required=True, help="output directory")
        sub.add_argument("--seed", type=int, default=0, help="master RNG seed")
        sub.add_argument("--threads", type=int, default=0,
                         help="worker cap; 0 = number of cores (results identical)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads == 0:
        args.threads = os.cpu_count() or 1
    try:
        return args.handler(args)
    except FileNotFoundError as exc:
        print(f"error: missing-file: {exc}", file=sys.stderr)
        return EXIT_MISSING_FILE
    except ParseError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CospreadError as exc:
        print(f"error: validation: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
