"""Command-line entry points.

`nise run` executes the whole pipeline; the single-phase subcommands
(stats, filter, seed, expand, propagate, eval) read the prior phase's
artifacts from the shared output directory so runs can be resumed or
mixed with externally produced files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io as nio
from .expansion import Community, expand_all
from .filtering import decompose, filter_summary
from .graph import graph_stats
from .pipeline import (PhaseError, RunConfig, configure_logging, evaluate,
                       load_graph, make_seeds, ppr_params, run_pipeline,
                       to_parent_ids)
from .propagation import certify_propagation, propagate, propagation_summary


def _float_list(text):
    try:
        vals = tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad float list: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty float list")
    return vals


def _add_input_flags(p):
    p.add_argument("--input", required=True, help="edge list path (.gz ok)")
    p.add_argument("--weighted", action="store_true",
                   help="third column holds edge weights")
    p.add_argument("--one-indexed", action="store_true",
                   help="vertex ids start at 1")


def _add_out_flag(p, default="nise_out"):
    p.add_argument("--out", default=default, help="artifact directory")


def _add_seed_flags(p):
    p.add_argument("--strategy", default="spread",
                   choices=["graclus", "spread", "lcm", "random"])
    p.add_argument("--k", type=int, default=None,
                   help="seed count (required for graclus/spread/random)")
    p.add_argument("--sigma", type=float, default=0.0,
                   help="kernel regularization")
    p.add_argument("--seed-rng", type=int, default=0, dest="seed_rng",
                   help="root rng seed")
    p.add_argument("--partition-file", default=None,
                   help="import a partition instead of computing one")


def _add_expand_flags(p):
    p.add_argument("--alpha", type=float, default=0.99)
    p.add_argument("--gammas", "--gamma-list", type=_float_list,
                   default=(10.0, 100.0, 1000.0, 10000.0, 50000.0),
                   dest="gammas", metavar="G1,G2,...")
    p.add_argument("--epsilons", type=_float_list, default=None,
                   metavar="E1,E2,...",
                   help="explicit schedule overriding --gammas")
    p.add_argument("--ranking", default="fppr", choices=["fppr", "ppr"])
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--singleton-seeds", action="store_true",
                   help="restart from the bare seed, no neighborhood")


def _add_eval_flags(p):
    p.add_argument("--ground-truth", default=None,
                   help="ground-truth communities file")
    p.add_argument("--auc-mode", default="penalize_uncovered",
                   choices=["penalize_uncovered", "truncate"])


def build_parser():
    top = argparse.ArgumentParser(
        prog="nise",
        description="Overlapping community detection by neighborhood-"
                    "inflated seed expansion")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="full pipeline")
    _add_input_flags(p)
    _add_seed_flags(p)
    _add_expand_flags(p)
    _add_eval_flags(p)
    _add_out_flag(p)

    p = sub.add_parser("stats", help="graph summary statistics")
    _add_input_flags(p)
    p.add_argument("--out", default=None,
                   help="write stats.json / degree_histogram.csv here "
                        "instead of stdout")

    p = sub.add_parser("filter", help="biconnected-core decomposition")
    _add_input_flags(p)
    _add_out_flag(p)

    p = sub.add_parser("seed", help="choose seed vertices on the core")
    _add_input_flags(p)
    _add_seed_flags(p)
    _add_out_flag(p)

    p = sub.add_parser("expand", help="grow communities from stored seeds")
    _add_input_flags(p)
    _add_expand_flags(p)
    p.add_argument("--seeds", default=None,
                   help="seeds file (default <out>/seeds.txt)")
    _add_out_flag(p)

    p = sub.add_parser("propagate", help="extend core communities into "
                                         "whiskers")
    _add_input_flags(p)
    p.add_argument("--communities", default=None,
                   help="core communities file "
                        "(default <out>/communities_core.txt)")
    p.add_argument("--threads", type=int, default=1)
    _add_out_flag(p)

    p = sub.add_parser("eval", help="score a communities file")
    _add_input_flags(p)
    p.add_argument("--communities", default=None,
                   help="communities file (default <out>/communities.txt)")
    _add_eval_flags(p)
    _add_out_flag(p)
    return top


def _config_from_args(args):
    cfg = RunConfig(input=args.input, out=args.out)
    for field in ("strategy", "k", "alpha", "gammas", "epsilons", "ranking",
                  "sigma", "threads", "ground_truth", "partition_file",
                  "weighted", "auc_mode"):
        if hasattr(args, field):
            setattr(cfg, field, getattr(args, field))
    if hasattr(args, "seed_rng"):
        cfg.rng_seed = args.seed_rng
    if hasattr(args, "singleton_seeds"):
        cfg.singleton_seeds = args.singleton_seeds
    if hasattr(args, "one_indexed"):
        cfg.one_indexed = args.one_indexed
    return cfg


def _core_graph(cfg):
    g = load_graph(cfg)
    return g, decompose(g)


def cmd_stats(args):
    cfg = _config_from_args(args)
    g = load_graph(cfg)
    stats = graph_stats(g)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        nio.write_json(os.path.join(args.out, "stats.json"), stats)
        nio.write_degree_histogram(g, os.path.join(args.out,
                                                   "degree_histogram.csv"))
    print(json.dumps(stats, indent=2, sort_keys=True))
    return 0


def cmd_filter(args):
    cfg = _config_from_args(args)
    g, decomp = _core_graph(cfg)
    os.makedirs(args.out, exist_ok=True)
    summary = filter_summary(g, decomp)
    nio.write_edge_list(decomp.core, os.path.join(args.out,
                                                  "core_edges.txt"))
    nio.write_json(os.path.join(args.out, "filter_summary.json"), summary)
    nio.write_whiskers(g, decomp, os.path.join(args.out, "whiskers.txt"))
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def cmd_seed(args):
    cfg = _config_from_args(args)
    cfg.validate()
    g, decomp = _core_graph(cfg)
    os.makedirs(args.out, exist_ok=True)
    seed_set, partition = make_seeds(cfg, g, decomp)
    if partition is not None:
        nio.write_partition(decomp.core, partition,
                            os.path.join(args.out, "partition.txt"))
    nio.write_seeds(decomp.core, seed_set,
                    os.path.join(args.out, "seeds.txt"),
                    os.path.join(args.out, "seeds.json"))
    print(f"{seed_set.k_returned} seeds ({seed_set.strategy})")
    return 0


def cmd_expand(args):
    cfg = _config_from_args(args)
    g, decomp = _core_graph(cfg)
    seeds_path = args.seeds or os.path.join(args.out, "seeds.txt")
    seeds = nio.read_seeds(decomp.core, seeds_path)
    os.makedirs(args.out, exist_ok=True)
    comms = expand_all(decomp.core, seeds, ppr_params(cfg),
                       workers=cfg.threads)
    nio.write_communities(decomp.core, comms,
                          os.path.join(args.out, "communities_core.txt"))
    nio.write_community_sidecar(decomp.core, comms,
                                os.path.join(args.out,
                                             "communities_core.json"))
    print(f"{len(comms)} communities after dedup")
    return 0


def cmd_propagate(args):
    cfg = _config_from_args(args)
    g, decomp = _core_graph(cfg)
    comm_path = args.communities or os.path.join(args.out,
                                                 "communities_core.txt")
    ext = nio.read_communities(comm_path)
    members = nio.map_external_members(decomp.core, ext, "core communities")
    core_comms = [Community(m, 0.0, None, None) for m in members]
    parent = to_parent_ids(decomp, core_comms)
    final = propagate(g, decomp, parent)
    checks = 0
    for before, after in zip(parent, final):
        certify_propagation(g, before, after, decomp)
        checks += 1
    os.makedirs(args.out, exist_ok=True)
    summary = propagation_summary(g, final, checks)
    nio.write_communities(g, final, os.path.join(args.out,
                                                 "communities.txt"))
    nio.write_json(os.path.join(args.out, "propagation.json"), summary)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def cmd_eval(args):
    cfg = _config_from_args(args)
    g = load_graph(cfg)
    comm_path = args.communities or os.path.join(args.out,
                                                 "communities.txt")
    ext = nio.read_communities(comm_path)
    members = nio.map_external_members(g, ext, "communities")
    report, curve = evaluate(cfg, g, members)
    os.makedirs(args.out, exist_ok=True)
    nio.write_json(os.path.join(args.out, "eval.json"), report)
    nio.write_curve(curve, os.path.join(args.out, "curve.csv"))
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def cmd_run(args):
    cfg = _config_from_args(args)
    report = run_pipeline(cfg)
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


_DISPATCH = {
    "run": cmd_run,
    "stats": cmd_stats,
    "filter": cmd_filter,
    "seed": cmd_seed,
    "expand": cmd_expand,
    "propagate": cmd_propagate,
    "eval": cmd_eval,
}


def main(argv=None):
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except PhaseError as exc:
        print(f"error in {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, AssertionError) as exc:
        print(f"error in {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
