"""Seed selection strategies.

All four strategies take the (usually filtered) graph and return vertex
ids in that graph's id space. Tie scanning is ascending id everywhere so
runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from . import _kernels
from .partition import _cluster_arrays


@dataclass
class SeedSet:
    seeds: np.ndarray
    strategy: str
    k_requested: int = None

    def __post_init__(self):
        self.seeds = np.asarray(self.seeds, dtype=np.int64)
        if np.unique(self.seeds).shape[0] != self.seeds.shape[0]:
            raise ValueError("duplicate seeds")

    @property
    def k_returned(self):
        return int(self.seeds.shape[0])


def seeds_graclus_centers(g, partition, sigma=0.0):
    """Most-central members of each cluster of a partition.

    For every cluster, all members attaining the minimum kernel distance to
    their own cluster are taken (exact float ties are kept, matching the
    rule that tied centers are all included). Output ordered by (cluster
    index, vertex id).
    """
    assignment = partition.assignment
    k = partition.k
    counts = np.bincount(assignment, minlength=k)
    if (counts == 0).any():
        raise ValueError("partition has an empty cluster")
    deg_c, links_cc, L = _cluster_arrays(g, assignment, k)
    deg_v = g.degrees
    own_links = L[np.arange(g.n), assignment]
    with np.errstate(divide="ignore", invalid="ignore"):
        dist = (-2.0 * own_links / (deg_v * deg_c[assignment])
                + links_cc[assignment] / deg_c[assignment] ** 2
                + sigma / deg_v - sigma / deg_c[assignment])
    dist[deg_v == 0.0] = np.inf
    seeds = []
    for c in range(k):
        members = np.flatnonzero(assignment == c)
        d = dist[members]
        best = d.min()
        seeds.extend(members[d == best])
    return SeedSet(np.array(seeds, dtype=np.int64), "graclus_centers", k)


@njit(cache=True)
def _counting_sort_desc(deg_int, max_deg):
    """Vertices ordered by descending degree, ascending id within a degree."""
    n = deg_int.shape[0]
    key = max_deg - deg_int
    cnt = np.zeros(max_deg + 2, dtype=np.int64)
    for v in range(n):
        cnt[key[v] + 1] += 1
    for d in range(1, max_deg + 2):
        cnt[d] += cnt[d - 1]
    order = np.empty(n, dtype=np.int64)
    for v in range(n):
        order[cnt[key[v]]] = v
        cnt[key[v]] += 1
    return order


def seeds_spread_hubs(g, k):
    """Greedy independent set of high-degree vertices.

    Rounds: while fewer than k seeds exist and unmarked vertices remain,
    take the unmarked vertices of maximum degree, scan them in ascending
    id, and for each one still unmarked, add it as a seed and mark its
    closed neighborhood. A round of ties may push the count past k; the
    loop also stops early once every vertex is marked.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    deg = g.degrees
    deg_int = np.rint(deg).astype(np.int64)
    if np.abs(deg - deg_int).max(initial=0.0) < 1e-9:
        order = _counting_sort_desc(deg_int, int(deg_int.max(initial=0)))
        keys = deg_int[order]
    else:
        order = np.lexsort((np.arange(g.n), -deg))
        keys = deg[order]
    marked = np.zeros(g.n, dtype=bool)
    seeds = []
    i = 0
    n = g.n
    while i < n:
        if len(seeds) >= k:
            break
        round_key = keys[i]
        while i < n and keys[i] == round_key:
            v = order[i]
            i += 1
            if marked[v]:
                continue
            seeds.append(v)
            marked[v] = True
            marked[g.neighbors(v)] = True
    return SeedSet(np.array(seeds, dtype=np.int64), "spread_hubs", k)


def _closed_neighborhood_conductance(g):
    """Conductance of N[v] for every v (inf where undefined)."""
    inner = _kernels.neighborhood_edge_weight(g.indptr, g.indices, g.weights)
    n = g.n
    out = np.empty(n)
    deg = g.degrees
    for v in range(n):
        nbrs = g.neighbors(v)
        vol = deg[v] + deg[nbrs].sum()
        internal = 2.0 * (inner[v] + g.push_degrees[v]) \
            + g.self_weight[v] + g.self_weight[nbrs].sum()
        other = g.total_volume - vol
        den = min(vol, other)
        out[v] = (vol - internal) / den if den > 0.0 else np.inf
    return out


def seeds_locally_minimal(g):
    """Vertices whose closed neighborhood beats every neighbor's.

    v is a seed iff conductance(N[v]) <= conductance(N[u]) for every
    neighbor u; ties count. Returned ascending.
    """
    phi = _closed_neighborhood_conductance(g)
    seeds = []
    for v in range(g.n):
        nbrs = g.neighbors(v)
        if nbrs.shape[0] == 0 or np.all(phi[v] <= phi[nbrs]):
            seeds.append(v)
    return SeedSet(np.array(seeds, dtype=np.int64), "locally_minimal")


def seeds_random(g, k, rng_seed=0):
    """k distinct vertices, uniform without replacement."""
    if k < 1 or k > g.n:
        raise ValueError(f"k must be in [1, {g.n}], got {k}")
    rng = np.random.default_rng(rng_seed)
    picks = rng.choice(g.n, size=k, replace=False).astype(np.int64)
    return SeedSet(picks, "random", k)
