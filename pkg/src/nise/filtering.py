"""Decompose a connected graph into its biconnected core, bridges, and
whiskers.

The core is the largest connected component left after deleting every
single-edge biconnected component; a bridge is such an edge with exactly
one endpoint in the core; a whisker is a connected piece that one bridge
detaches from the core. Edge sets satisfy E = E_core + E_detached +
E_bridge, pairwise disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csgraph

from . import _kernels
from .graph import Graph, embedded_subgraph, induced_subgraph, _largest_label


@dataclass
class CoreDecomposition:
    """Result of decompose().

    All vertex ids here are the parent graph's internal ids except inside
    ``core``, which is densely relabeled (``core.external_ids`` holds the
    parent's external labels; ``core_vertices`` maps core id -> parent id).
    ``core`` is an embedded subgraph: its per-vertex boundary weight is the
    incident bridge weight and its total_volume is the parent's, so set
    metrics on it equal parent-graph values.
    """
    core: Graph
    core_vertices: np.ndarray
    core_index: np.ndarray          # parent id -> core id, -1 outside
    single_edge_components: np.ndarray   # (s, 2) parent-id pairs
    bridges: np.ndarray             # (b, 2) rows (core_vertex, whisker_vertex)
    whiskers: list = field(default_factory=list)  # arrays of parent ids
    detached_vertices: np.ndarray = None
    whisker_of_bridge: np.ndarray = None   # bridge row -> whisker index
    edge_counts: dict = field(default_factory=dict)


def _edge_uids(g):
    """Undirected edge id for every directed CSR slot, ids 0..m-1 assigned
    in ascending (min, max) endpoint order."""
    heads = np.repeat(np.arange(g.n), np.diff(g.indptr))
    lo = np.minimum(heads, g.indices)
    hi = np.maximum(heads, g.indices)
    key = lo * g.n + hi
    uniq, uid = np.unique(key, return_inverse=True)
    return uid.astype(np.int64), uniq.shape[0], heads


def biconnected_components(g):
    """Partition the edges into maximal biconnected components.

    Returns a list of (k, 2) arrays of endpoint pairs (internal ids),
    ordered by discovery. Uses an iterative depth-first search.
    """
    labels, ncomp, uid_pairs = _biconnected_labels(g)
    comps = [[] for _ in range(ncomp)]
    for eid in range(uid_pairs.shape[0]):
        comps[labels[eid]].append(uid_pairs[eid])
    return [np.array(c, dtype=np.int64) for c in comps]


def _biconnected_labels(g):
    """(label per undirected edge, component count, (m, 2) endpoint pairs)."""
    if g.m == 0:
        return (np.empty(0, dtype=np.int64), 0,
                np.empty((0, 2), dtype=np.int64))
    uid, m, heads = _edge_uids(g)
    labels, ncomp = _kernels.biconnected_edge_labels(
        g.indptr, g.indices, uid, m)
    lo = np.minimum(heads, g.indices)
    hi = np.maximum(heads, g.indices)
    pairs = np.empty((m, 2), dtype=np.int64)
    pairs[uid, 0] = lo
    pairs[uid, 1] = hi
    return labels, ncomp, pairs


def decompose(g):
    """Split a connected graph into core, bridges, and whiskers.

    Raises:
        ValueError: disconnected input (reduce to the largest connected
            component first) or empty graph.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    n_comp, _ = csgraph.connected_components(g.to_scipy(), directed=False)
    if n_comp > 1 and g.n > 1:
        raise ValueError("decompose expects a connected graph; extract the "
                         "largest connected component first")
    labels, ncomp, pairs = _biconnected_labels(g)
    if ncomp:
        sizes = np.bincount(labels, minlength=ncomp)
        single = sizes[labels] == 1
    else:
        single = np.zeros(0, dtype=bool)
    single_pairs = pairs[single]
    multi_pairs = pairs[~single]

    # core = largest component after deleting the single-edge components
    stripped = _subgraph_over_all_vertices(g, multi_pairs)
    nc, lab = csgraph.connected_components(stripped, directed=False)
    core_label = _largest_label(g, nc, lab)
    core_mask = lab == core_label
    core_vertices = np.flatnonzero(core_mask)
    core_index = np.full(g.n, -1, dtype=np.int64)
    core_index[core_vertices] = np.arange(core_vertices.shape[0])

    in_core = core_mask[single_pairs]
    ends_in_core = in_core.sum(axis=1) if single_pairs.size else \
        np.zeros(0, dtype=np.int64)
    is_bridge = ends_in_core == 1
    bridge_pairs = single_pairs[is_bridge]
    # orient rows as (core endpoint, whisker endpoint)
    if bridge_pairs.size:
        flip = ~core_mask[bridge_pairs[:, 0]]
        bridge_pairs = np.where(flip[:, None], bridge_pairs[:, ::-1],
                                bridge_pairs)

    detached = np.flatnonzero(~core_mask)
    whiskers, whisker_of_bridge = _whiskers(g, detached, bridge_pairs)

    core = embedded_subgraph(g, core_vertices)
    e_core = core.m
    e_bridge = bridge_pairs.shape[0]
    e_detached = g.m - e_core - e_bridge
    decomp = CoreDecomposition(
        core=core,
        core_vertices=core_vertices,
        core_index=core_index,
        single_edge_components=single_pairs,
        bridges=bridge_pairs,
        whiskers=whiskers,
        detached_vertices=detached,
        whisker_of_bridge=whisker_of_bridge,
        edge_counts={"total": g.m, "core": e_core, "detached": e_detached,
                     "bridge": e_bridge},
    )
    _check_conservation(g, decomp)
    return decomp


def _subgraph_over_all_vertices(g, pairs):
    import scipy.sparse as sp
    if pairs.size == 0:
        return sp.csr_matrix((g.n, g.n))
    u = np.concatenate([pairs[:, 0], pairs[:, 1]])
    v = np.concatenate([pairs[:, 1], pairs[:, 0]])
    data = np.ones(u.shape[0])
    return sp.csr_matrix((data, (u, v)), shape=(g.n, g.n))


def _whiskers(g, detached, bridge_pairs):
    """Connected components of the detached induced subgraph, each paired
    with its unique bridge."""
    if detached.shape[0] == 0:
        return [], np.empty(0, dtype=np.int64)
    sub = induced_subgraph(g, detached)
    nw, wl = csgraph.connected_components(sub.to_scipy(), directed=False)
    whiskers = [detached[wl == i] for i in range(nw)]
    # order whiskers by smallest member external id for stable output
    order = np.argsort([g.external_ids[w].min() for w in whiskers],
                       kind="stable")
    whiskers = [np.sort(whiskers[i]) for i in order]
    which = np.full(g.n, -1, dtype=np.int64)
    for i, w in enumerate(whiskers):
        which[w] = i
    whisker_of_bridge = which[bridge_pairs[:, 1]] if bridge_pairs.size else \
        np.empty(0, dtype=np.int64)
    counts = np.bincount(whisker_of_bridge, minlength=len(whiskers)) \
        if len(whiskers) else np.empty(0, dtype=np.int64)
    if len(whiskers) and not np.all(counts == 1):
        raise AssertionError("each whisker must attach by exactly one bridge")
    return whiskers, whisker_of_bridge


def _check_conservation(g, d):
    c = d.edge_counts
    if c["core"] + c["detached"] + c["bridge"] != c["total"]:
        raise AssertionError(
            f"edge conservation violated: {c['core']} + {c['detached']} + "
            f"{c['bridge']} != {c['total']}")


def filter_summary(g, decomp):
    """Core/detached counts in the shape of the reference table."""
    nw = len(decomp.whiskers)
    largest = max((w.shape[0] for w in decomp.whiskers), default=0)
    return {
        "core_vertices": int(decomp.core.n),
        "core_vertex_pct": round(100.0 * decomp.core.n / g.n, 1) if g.n else 0.0,
        "core_edges": int(decomp.edge_counts["core"]),
        "core_edge_pct": round(100.0 * decomp.edge_counts["core"] / g.m, 1)
            if g.m else 0.0,
        "detached_components": int(nw),
        "largest_detached": int(largest),
    }
