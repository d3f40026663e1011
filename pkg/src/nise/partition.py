"""Multilevel weighted kernel k-means partitioner.

Produces the disjoint k-way clustering consumed by the center-based seeder.
The objective is the normalized cut sum, optimized through its weighted
kernel k-means equivalent with kernel K = sigma*D^-1 + D^-1 A D^-1 and
vertex weights equal to degrees; the kernel is never materialized, only
the distance formula

    dist(v, C) = -2 links(v,C) / (deg(v) deg(C)) + links(C,C) / deg(C)^2
                 + sigma / deg(v) - sigma / deg(C)

is evaluated. Multilevel scheme: heavy-edge coarsening to a small graph,
region-growing bipartition there, then refinement while uncoarsening.
k-way output comes from recursive 2-way splits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .graph import Graph, induced_subgraph


@dataclass
class Partition:
    """Exhaustive assignment of every vertex to one of k clusters."""
    assignment: np.ndarray
    k: int

    def members(self, c):
        return np.flatnonzero(self.assignment == c)


def _cluster_arrays(g, assignment, k):
    """Per-cluster degree sums and internal link weights, plus the dense
    links(v, C_c) table (self weight folded into the owning column)."""
    ind = sp.csr_matrix(
        (np.ones(g.n), (np.arange(g.n), assignment)), shape=(g.n, k))
    L = np.asarray(g.to_scipy().dot(ind.toarray()))
    if g.self_weight.any():
        L[np.arange(g.n), assignment] += g.self_weight
    deg_c = np.bincount(assignment, weights=g.degrees, minlength=k)
    links_cc = np.bincount(assignment, weights=L[np.arange(g.n), assignment],
                           minlength=k)
    return deg_c, links_cc, L


def kernel_distance(g, v, C, sigma=0.0):
    """Kernel distance from vertex v to cluster C (evaluated as-is, v may
    or may not belong to C).

    Raises:
        ValueError: zero-degree vertex or empty/zero-volume cluster.
    """
    C = np.asarray(C, dtype=np.int64)
    dv = g.degrees[v]
    if C.shape[0] == 0:
        raise ValueError("empty cluster")
    deg_c = float(g.degrees[C].sum())
    if dv == 0.0 or deg_c == 0.0:
        raise ValueError("kernel distance undefined for zero degree")
    mask = np.zeros(g.n, dtype=bool)
    mask[C] = True
    lv = 0.0
    for e in range(g.indptr[v], g.indptr[v + 1]):
        if mask[g.indices[e]]:
            lv += g.weights[e]
    if mask[v]:
        lv += g.self_weight[v]
    heads = np.repeat(np.arange(g.n), np.diff(g.indptr))
    sel = mask[heads] & mask[g.indices]
    lcc = float(g.weights[sel].sum()) + float(g.self_weight[mask].sum())
    return (-2.0 * lv / (dv * deg_c) + lcc / deg_c ** 2
            + sigma / dv - sigma / deg_c)


def _distance_table(g, assignment, k, sigma):
    """Dense (n, k) distances to each cluster's frozen centroid.

    For a vertex's own cluster this equals kernel_distance; for the others
    the exact centroid expansion carries +sigma/deg(C) instead of
    -sigma/deg(C). Using the exact form keeps batch sweeps monotone when
    the kernel is positive definite; at sigma = 0 the two coincide.
    """
    deg_c, links_cc, L = _cluster_arrays(g, assignment, k)
    deg_v = g.degrees
    with np.errstate(divide="ignore", invalid="ignore"):
        D = (-2.0 * L / (deg_v[:, None] * deg_c[None, :])
             + (links_cc / deg_c ** 2)[None, :]
             + sigma / deg_v[:, None] + sigma / deg_c[None, :])
        D[np.arange(g.n), assignment] -= 2.0 * sigma / deg_c[assignment]
    D[:, deg_c == 0.0] = np.inf
    D[deg_v == 0.0, :] = np.inf
    return D, L


def refine_weighted_kernel_kmeans(g, partition, sigma=0.0, max_iters=20,
                                  boundary_only=True):
    """Batch reassignment sweeps toward lower kernel distance.

    Each sweep freezes the cluster statistics, proposes moving every
    candidate vertex to its argmin-distance cluster (ties: lowest cluster
    index), then applies the moves in ascending vertex id, skipping any
    move that would empty its source cluster. Stops when a sweep moves
    nothing or after max_iters sweeps.

    With boundary_only, only vertices with at least one cross-cluster edge
    are move candidates; pass False for full sweeps.
    """
    assignment = np.asarray(partition.assignment, dtype=np.int64).copy()
    k = partition.k
    for _ in range(max_iters):
        D, L = _distance_table(g, assignment, k, sigma)
        proposed = np.argmin(D, axis=1).astype(np.int64)
        if boundary_only:
            own_links = L[np.arange(g.n), assignment] - g.self_weight
            interior = own_links >= g.push_degrees - 1e-12
            proposed[interior] = assignment[interior]
        counts = np.bincount(assignment, minlength=k)
        moved = _kernels.apply_moves_guarded(assignment, proposed, counts)
        if moved == 0:
            break
    return Partition(assignment, k)


def coarsen(g, rng=None):
    """One level of heavy-edge matching coarsening.

    Visits vertices in random order under `rng` (ascending id when None),
    merging each unmatched vertex with its heaviest unmatched neighbor
    (ties: lowest id). Parallel edges collapse by weight addition; a merged
    edge's weight folds into the supernode's self weight, so volume is
    conserved. Returns (coarse_graph, merge_map).
    """
    if rng is None:
        visit = np.arange(g.n, dtype=np.int64)
    else:
        visit = rng.permutation(g.n).astype(np.int64)
    merge_map, nc = _kernels.heavy_edge_matching(
        g.indptr, g.indices, g.weights, visit)
    P = sp.csr_matrix((np.ones(g.n), (np.arange(g.n), merge_map)),
                      shape=(g.n, nc))
    Ac = (P.T @ g.to_scipy() @ P).tocsr()
    diag = np.asarray(Ac.diagonal())
    self_w = diag + np.bincount(merge_map, weights=g.self_weight,
                                minlength=nc)
    Ac.setdiag(0.0)
    Ac.eliminate_zeros()
    Ac.sort_indices()
    boundary = np.bincount(merge_map, weights=g.boundary_weight, minlength=nc)
    coarse = Graph(Ac.indptr.astype(np.int64), Ac.indices.astype(np.int64),
                   Ac.data.astype(np.float64), np.arange(nc, dtype=np.int64),
                   self_weight=self_w, boundary_weight=boundary,
                   total_volume=g.total_volume)
    return coarse, merge_map


def _region_grow(g, r1, r2):
    """Volume-balanced alternating BFS bipartition from two roots."""
    assignment = np.full(g.n, -1, dtype=np.int64)
    assignment[r1] = 0
    assignment[r2] = 1
    vols = [g.degrees[r1], g.degrees[r2]]
    queues = [list(g.neighbors(r1)), list(g.neighbors(r2))]
    heads = [0, 0]
    assigned = 2
    while assigned < g.n:
        side = 0 if vols[0] <= vols[1] else 1
        if heads[side] >= len(queues[side]):
            side = 1 - side
        grew = False
        while heads[side] < len(queues[side]):
            v = queues[side][heads[side]]
            heads[side] += 1
            if assignment[v] != -1:
                continue
            assignment[v] = side
            vols[side] += g.degrees[v]
            queues[side].extend(g.neighbors(v))
            assigned += 1
            grew = True
            break
        if not grew:
            # disconnected leftover: hand it to the lighter side
            v = int(np.flatnonzero(assignment == -1)[0])
            side = 0 if vols[0] <= vols[1] else 1
            assignment[v] = side
            vols[side] += g.degrees[v]
            assigned += 1
    return assignment


def _bipartition(g, sigma, rng, coarsest=64, max_iters=20):
    """2-way split: coarsen, cut the coarsest level, refine while
    uncoarsening."""
    if g.n < 2:
        return np.zeros(g.n, dtype=np.int64)
    graphs = [g]
    maps = []
    while graphs[-1].n > coarsest:
        coarse, merge_map = coarsen(graphs[-1], rng)
        if coarse.n >= graphs[-1].n or coarse.n < 2:
            break
        graphs.append(coarse)
        maps.append(merge_map)
    cur = graphs[-1]
    roots = rng.choice(cur.n, size=2, replace=False)
    assignment = _region_grow(cur, int(roots[0]), int(roots[1]))
    assignment = refine_weighted_kernel_kmeans(
        cur, Partition(assignment, 2), sigma, max_iters,
        boundary_only=False).assignment
    for level in range(len(maps) - 1, -1, -1):
        assignment = assignment[maps[level]]
        assignment = refine_weighted_kernel_kmeans(
            graphs[level], Partition(assignment, 2), sigma,
            max_iters).assignment
    return assignment


def hierarchical_partition(g, k, sigma=0.0, rng_seed=0, coarsest=64,
                           max_iters=20):
    """Top-down k-way partition by repeated 2-way splits.

    Runs ceil(log2 k) breadth-first rounds of splitting every current
    cluster (size-1 clusters are left alone), yielding up to 2^ceil(log2 k)
    leaves. Each split gets an independent generator derived from rng_seed
    and its (round, cluster) coordinates, so the result is deterministic
    regardless of execution order. Cluster indices are renumbered by each
    cluster's smallest vertex id.

    Raises:
        ValueError: k < 1 or k > n.
    """
    if k < 1 or k > g.n:
        raise ValueError(f"k must be in [1, {g.n}], got {k}")
    assignment = np.zeros(g.n, dtype=np.int64)
    if k == 1:
        return Partition(assignment, 1)
    rounds = math.ceil(math.log2(k))
    n_clusters = 1
    for rnd in range(rounds):
        next_assignment = np.full(g.n, -1, dtype=np.int64)
        next_count = 0
        for c in range(n_clusters):
            members = np.flatnonzero(assignment == c)
            if members.shape[0] < 2:
                next_assignment[members] = next_count
                next_count += 1
                continue
            sub = induced_subgraph(g, members)
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=rng_seed,
                                       spawn_key=(rnd, c)))
            halves = _bipartition(sub, sigma, rng, coarsest, max_iters)
            next_assignment[members] = next_count + halves
            next_count += 2
        assignment = next_assignment
        n_clusters = next_count
    # renumber by smallest member id
    first = np.full(n_clusters, g.n, dtype=np.int64)
    for v in range(g.n - 1, -1, -1):
        first[assignment[v]] = v
    order = np.argsort(first, kind="stable")
    relabel = np.empty(n_clusters, dtype=np.int64)
    relabel[order] = np.arange(n_clusters)
    return Partition(relabel[assignment], n_clusters)


def partition_ncut_sum(g, partition):
    """Sum of normalized cuts over the clusters (refinement diagnostic)."""
    deg_c, links_cc, _ = _cluster_arrays(g, partition.assignment, partition.k)
    total = 0.0
    for c in range(partition.k):
        if deg_c[c] > 0.0:
            total += (deg_c[c] - links_cc[c]) / deg_c[c]
    return total
