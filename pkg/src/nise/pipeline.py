"""End-to-end orchestration: load, filter, seed, expand, propagate,
evaluate, with every artifact written to an output directory.

All randomness flows from one root rng seed, split per phase, so a run is
fully determined by its RunConfig; the manifest records every field.
"""

from __future__ import annotations

import dataclasses
import logging
import os
import time
from dataclasses import dataclass

import numpy as np

from . import io as nio
from .evaluation import conductance_coverage_auc, coverage, f_beta_report
from .expansion import Community, PprParams, expand_all
from .filtering import decompose, filter_summary
from .graph import graph_stats, largest_connected_component, load_edge_list
from .partition import hierarchical_partition
from .propagation import certify_propagation, propagate, propagation_summary
from .seeding import (seeds_graclus_centers, seeds_locally_minimal,
                      seeds_random, seeds_spread_hubs)

logger = logging.getLogger("nise")

STRATEGIES = ("graclus", "spread", "lcm", "random")

_PHASE_KEYS = {"partition": 0, "seeding": 1}


class PhaseError(RuntimeError):
    def __init__(self, phase, message):
        super().__init__(f"{phase}: {message}")
        self.phase = phase


@dataclass
class RunConfig:
    """Everything that determines a pipeline run."""
    input: str
    strategy: str = "spread"
    k: int = None
    alpha: float = 0.99
    gammas: tuple = (10.0, 100.0, 1000.0, 10000.0, 50000.0)
    epsilons: tuple = None
    ranking: str = "fppr"
    sigma: float = 0.0
    rng_seed: int = 0
    threads: int = 1
    out: str = "nise_out"
    ground_truth: str = None
    partition_file: str = None
    singleton_seeds: bool = False
    weighted: bool = False
    one_indexed: bool = False
    auc_mode: str = "penalize_uncovered"

    def validate(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}")
        if self.strategy in ("graclus", "spread", "random") and \
                (self.k is None or self.k < 1):
            raise ValueError(f"--k is required (>= 1) for strategy "
                             f"{self.strategy}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


def phase_seed(root, phase):
    """Deterministic child seed for a named phase."""
    seq = np.random.SeedSequence(entropy=int(root),
                                 spawn_key=(_PHASE_KEYS[phase],))
    return int(seq.generate_state(1)[0])


def configure_logging():
    level_name = os.environ.get("NISE_LOG", "WARNING").upper()
    level = getattr(logging, level_name, None)
    if level is None:
        try:
            level = int(level_name)
        except ValueError:
            level = logging.WARNING
    logging.basicConfig(level=level,
                        format="%(asctime)s %(name)s %(levelname)s "
                               "%(message)s")


def load_graph(cfg):
    g = load_edge_list(cfg.input, one_indexed=cfg.one_indexed,
                       weighted=cfg.weighted)
    lcc = largest_connected_component(g)
    logger.info("loaded %s -> lcc n=%d m=%d", cfg.input, lcc.n, lcc.m)
    return lcc


def make_seeds(cfg, g, decomp, outdir=None):
    """Seed the core per the configured strategy; returns (SeedSet, used
    Partition or None)."""
    core = decomp.core
    partition = None
    if cfg.strategy == "graclus":
        if cfg.partition_file:
            partition = nio.read_partition(core, cfg.partition_file)
        else:
            partition = hierarchical_partition(
                core, cfg.k, sigma=cfg.sigma,
                rng_seed=phase_seed(cfg.rng_seed, "partition"))
        seed_set = seeds_graclus_centers(core, partition, cfg.sigma)
    elif cfg.strategy == "spread":
        seed_set = seeds_spread_hubs(core, cfg.k)
    elif cfg.strategy == "lcm":
        seed_set = seeds_locally_minimal(core)
    else:
        seed_set = seeds_random(core, cfg.k,
                                rng_seed=phase_seed(cfg.rng_seed, "seeding"))
    return seed_set, partition


def ppr_params(cfg):
    return PprParams(alpha=cfg.alpha, gammas=tuple(cfg.gammas),
                     epsilons=tuple(cfg.epsilons) if cfg.epsilons else None,
                     ranking=cfg.ranking,
                     singleton_seeds=cfg.singleton_seeds)


def to_parent_ids(decomp, communities):
    """Core-id communities -> parent-internal-id communities."""
    out = []
    for comm in communities:
        out.append(Community(np.sort(decomp.core_vertices[comm.members]),
                             comm.conductance,
                             int(decomp.core_vertices[comm.seed])
                             if comm.seed is not None else None,
                             comm.epsilon))
    return out


def evaluate(cfg, g, communities):
    """Coverage, curve/AUC, and optional ground-truth F scores."""
    member_arrays = [np.asarray(getattr(c, "members", c), dtype=np.int64)
                     for c in communities]
    cov = coverage(member_arrays, g.n) if member_arrays else 0.0
    proper = [m for m in member_arrays if m.shape[0] < g.n]
    full_count = len(member_arrays) - len(proper)
    if proper:
        curve = conductance_coverage_auc(g, proper, mode=cfg.auc_mode)
    else:
        from .evaluation import CoverageCurve
        curve = CoverageCurve([], 1.0 if cfg.auc_mode == "penalize_uncovered"
                              else 0.0, cfg.auc_mode)
    report = {
        "coverage": cov,
        "auc": curve.auc,
        "auc_mode": curve.mode,
        "avg_f1": None,
        "avg_f2": None,
        "community_count": len(member_arrays),
        "full_graph_communities": full_count,
    }
    if cfg.ground_truth:
        gt_ext = nio.read_communities(cfg.ground_truth)
        gt = nio.map_external_members(g, gt_ext, "ground truth")
        match = f_beta_report(gt, member_arrays, beta=1.0)
        report["avg_f1"] = match.avg_f1
        report["avg_f2"] = match.avg_f2
    return report, curve


def run_pipeline(cfg):
    """Execute every phase, writing all artifacts under cfg.out.

    Returns the evaluation report dict. Raises PhaseError with the failing
    phase's tag on any error.
    """
    cfg.validate()
    os.makedirs(cfg.out, exist_ok=True)
    t0 = time.perf_counter()

    def _p(name):
        logger.info("phase %s at %.2fs", name, time.perf_counter() - t0)

    try:
        _p("load")
        g = load_graph(cfg)
        nio.write_json(os.path.join(cfg.out, "stats.json"), graph_stats(g))
        nio.write_degree_histogram(g, os.path.join(cfg.out,
                                                   "degree_histogram.csv"))
    except PhaseError:
        raise
    except Exception as exc:
        raise PhaseError("load", str(exc)) from exc
    try:
        _p("filter")
        decomp = decompose(g)
        nio.write_edge_list(decomp.core,
                            os.path.join(cfg.out, "core_edges.txt"))
        nio.write_json(os.path.join(cfg.out, "filter_summary.json"),
                       filter_summary(g, decomp))
        nio.write_whiskers(g, decomp, os.path.join(cfg.out, "whiskers.txt"))
    except Exception as exc:
        raise PhaseError("filter", str(exc)) from exc
    try:
        _p("seed")
        seed_set, partition = make_seeds(cfg, g, decomp)
        if partition is not None:
            nio.write_partition(decomp.core, partition,
                                os.path.join(cfg.out, "partition.txt"))
        nio.write_seeds(decomp.core, seed_set,
                        os.path.join(cfg.out, "seeds.txt"),
                        os.path.join(cfg.out, "seeds.json"))
        logger.info("seeding returned %d seeds", seed_set.k_returned)
    except Exception as exc:
        raise PhaseError("seed", str(exc)) from exc
    try:
        _p("expand")
        core_comms = expand_all(decomp.core, seed_set.seeds, ppr_params(cfg),
                                workers=cfg.threads)
        nio.write_communities(decomp.core, core_comms,
                              os.path.join(cfg.out, "communities_core.txt"))
        nio.write_community_sidecar(
            decomp.core, core_comms,
            os.path.join(cfg.out, "communities_core.json"))
        logger.info("expansion kept %d communities", len(core_comms))
    except Exception as exc:
        raise PhaseError("expand", str(exc)) from exc
    try:
        _p("propagate")
        parent_comms = to_parent_ids(decomp, core_comms)
        final = propagate(g, decomp, parent_comms)
        checks = 0
        for before, after in zip(parent_comms, final):
            certify_propagation(g, before, after, decomp)
            checks += 1
        nio.write_communities(g, final,
                              os.path.join(cfg.out, "communities.txt"))
        nio.write_json(os.path.join(cfg.out, "propagation.json"),
                       propagation_summary(g, final, checks))
    except Exception as exc:
        raise PhaseError("propagate", str(exc)) from exc
    try:
        _p("eval")
        report, curve = evaluate(cfg, g, final)
        nio.write_json(os.path.join(cfg.out, "eval.json"), report)
        nio.write_curve(curve, os.path.join(cfg.out, "curve.csv"))
    except Exception as exc:
        raise PhaseError("eval", str(exc)) from exc
    manifest = dataclasses.asdict(cfg)
    from . import __version__
    manifest["version"] = __version__
    nio.write_json(os.path.join(cfg.out, "manifest.json"), manifest)
    _p("done")
    return report
