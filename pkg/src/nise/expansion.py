"""Seed expansion: neighborhood-inflated personalized PageRank push plus a
conductance sweep cut, run over a schedule of accuracy values.

The diffusion itself spreads mass over the stored adjacency only (so total
mass is conserved and the residual bound is exact), while sweep prefixes
are scored with the graph's metric degrees. On an embedded core that means
candidate communities are judged by their conductance in the original
graph, bridges included.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph import conductance as _graph_conductance

DEFAULT_GAMMAS = (10.0, 100.0, 1000.0, 10000.0, 50000.0)


@dataclass
class PprParams:
    """Knobs of the push expansion.

    alpha: link-following probability in (0, 1).
    gammas: accuracy multipliers; for a restart set T the schedule is
        eps_j = 1 / (gamma_j * vol(T)). Ignored when `epsilons` is given.
    epsilons: explicit strictly decreasing schedule, optional.
    ranking: "fiedler_ppr" sweeps by x/deg, "ppr" by raw x.
    singleton_seeds: skip neighborhood inflation (restart on {s} alone).
    """
    alpha: float = 0.99
    gammas: tuple = DEFAULT_GAMMAS
    epsilons: tuple = None
    ranking: str = "fiedler_ppr"
    singleton_seeds: bool = False

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must be in (0, 1)")
        self.ranking = normalize_ranking(self.ranking)
        if self.epsilons is not None:
            eps = tuple(float(e) for e in self.epsilons)
            if any(e <= 0.0 for e in eps):
                raise ValueError("epsilons must be positive")
            if any(b >= a for a, b in zip(eps, eps[1:])):
                raise ValueError("epsilons must be strictly decreasing")
            self.epsilons = eps
        else:
            gam = tuple(float(x) for x in self.gammas)
            if any(x <= 0.0 for x in gam):
                raise ValueError("gammas must be positive")
            if any(b <= a for a, b in zip(gam, gam[1:])):
                raise ValueError("gammas must be strictly increasing")
            self.gammas = gam


def normalize_ranking(name):
    aliases = {"fppr": "fiedler_ppr", "fiedler_ppr": "fiedler_ppr",
               "ppr": "ppr"}
    if name not in aliases:
        raise ValueError(f"unknown ranking {name!r}")
    return aliases[name]


@dataclass
class Community:
    """A low-conductance vertex set grown from one seed."""
    members: np.ndarray
    conductance: float
    seed: int = None
    epsilon: float = None

    def __post_init__(self):
        self.members = np.asarray(self.members, dtype=np.int64)

    @property
    def size(self):
        return int(self.members.shape[0])


def restart_set(g, seed, singleton=False):
    """Closed neighborhood of the seed (or just {seed} when singleton)."""
    if singleton:
        return np.array([seed], dtype=np.int64)
    return np.unique(np.concatenate([[seed], g.neighbors(seed)]))


def ppr_push(g, T, alpha, epsilon):
    """Push-based personalized PageRank from the uniform distribution on T.

    Runs until r_v <= deg(v) * epsilon everywhere (adjacency degrees).
    Returns dense (x, r).
    """
    T = np.asarray(T, dtype=np.int64)
    if T.shape[0] == 0:
        raise ValueError("empty restart set")
    return _kernels.ppr_push(g.indptr, g.indices, g.weights, g.push_degrees,
                             T, float(alpha), float(epsilon))


def sweep_cut(g, x, ranking="fiedler_ppr"):
    """Minimum-conductance prefix of the score-ranked support of x.

    Ranks the support by x/deg (fiedler_ppr) or x (ppr), descending, ties
    by ascending id, then scans prefixes. Prefixes whose complement volume
    is zero are skipped; returns None when the support is empty or no
    prefix is scoreable.
    """
    ranking = normalize_ranking(ranking)
    support = np.flatnonzero(x > 0.0)
    if support.shape[0] == 0:
        return None
    if ranking == "fiedler_ppr":
        deg = g.push_degrees[support]
        scores = np.divide(x[support], deg, out=np.copy(x[support]),
                           where=deg > 0.0)
    else:
        scores = x[support]
    order = support[np.lexsort((support, -scores))]
    best_len, best_cut, best_den = _kernels.sweep_min_conductance(
        g.indptr, g.indices, g.weights, g.degrees, g.self_weight,
        order, g.total_volume)
    if best_len == 0:
        return None
    members = np.sort(order[:best_len])
    return Community(members, float(best_cut / best_den))


def _schedule(g, T, params):
    if params.epsilons is not None:
        return list(params.epsilons)
    vol_t = float(g.push_degrees[T].sum())
    if vol_t <= 0.0:
        return []
    return [1.0 / (gamma * vol_t) for gamma in params.gammas]


def expand_seed(g, seed, params=None):
    """Best community over the accuracy schedule for one seed.

    For each epsilon the push is run from scratch and swept; the candidate
    with minimum conductance wins, ties going to the smaller epsilon and
    then the smaller member count. If every epsilon yields empty support
    (isolated seed), the restart set itself is returned with conductance 1
    when the true value is undefined.
    """
    params = params or PprParams()
    T = restart_set(g, seed, params.singleton_seeds)
    best = None
    best_key = None
    for eps in _schedule(g, T, params):
        x, _ = ppr_push(g, T, params.alpha, eps)
        cand = sweep_cut(g, x, params.ranking)
        if cand is None:
            continue
        key = (cand, eps)
        if best is None or _candidate_better(key, best_key):
            best = Community(cand.members, cand.conductance, seed, eps)
            best_key = key
    if best is None:
        members = np.sort(T)
        try:
            phi = _graph_conductance(g, members)
        except ValueError:
            phi = 1.0
        return Community(members, phi, seed, None)
    return best


def _candidate_better(key, best_key):
    cand, eps = key
    cur, cur_eps = best_key
    if cand.conductance < cur.conductance:
        return True
    if cand.conductance > cur.conductance:
        return False
    if eps < cur_eps:
        return True
    if eps > cur_eps:
        return False
    return cand.size < cur.size


def expand_all(g, seeds, params=None, workers=1):
    """Expand every seed and drop exact duplicate communities.

    Results are collected into a buffer indexed by seed position before
    deduplication (first occurrence in seed order wins), so the output is
    identical for any worker count.
    """
    params = params or PprParams()
    seed_list = [int(s) for s in np.asarray(seeds, dtype=np.int64)]
    results = [None] * len(seed_list)
    if workers > 1 and len(seed_list) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(expand_seed, g, s, params): i
                       for i, s in enumerate(seed_list)}
            for fut, i in futures.items():
                results[i] = fut.result()
    else:
        for i, s in enumerate(seed_list):
            results[i] = expand_seed(g, s, params)
    seen = set()
    kept = []
    for comm in results:
        fingerprint = comm.members.tobytes()
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        kept.append(comm)
    return kept
