"""Undirected weighted graphs in CSR form plus the set metrics used
throughout: links, cut, normalized cut, and conductance.

A Graph can be *embedded*: a subgraph that remembers, per vertex, the edge
weight leading out of the stored adjacency (``boundary_weight``) and the
volume of the parent graph it was cut from (``total_volume``). Metrics on
an embedded graph are then measured with respect to the parent, which is
what lets communities found on the filtered core be scored against the
original graph. A plain graph is the special case of zero boundary.
"""

from __future__ import annotations

import gzip
import io
import os

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from . import _kernels


class Graph:
    """Immutable undirected weighted graph.

    Attributes:
        n: vertex count.
        m: undirected edge count (self loops excluded).
        indptr, indices, weights: CSR adjacency, both directions stored,
            neighbor lists sorted ascending.
        external_ids: original vertex labels, one per internal id.
        self_weight: per-vertex folded internal weight (ordered-pair
            convention: a folded undirected edge of weight w contributes
            2w). Used by coarsened graphs; zero elsewhere.
        boundary_weight: per-vertex weight of edges leaving the stored
            adjacency (embedded subgraphs); zero for plain graphs.
        total_volume: volume of the embedding universe. Equals the graph's
            own volume for plain graphs.
    """

    __slots__ = ("n", "m", "indptr", "indices", "weights", "external_ids",
                 "self_weight", "boundary_weight", "total_volume",
                 "push_degrees", "degrees", "volume")

    def __init__(self, indptr, indices, weights, external_ids,
                 self_weight=None, boundary_weight=None, total_volume=None):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.weights = np.asarray(weights, dtype=np.float64)
        self.external_ids = np.asarray(external_ids, dtype=np.int64)
        self.n = self.indptr.shape[0] - 1
        self.m = self.indices.shape[0] // 2
        if self_weight is None:
            self_weight = np.zeros(self.n)
        if boundary_weight is None:
            boundary_weight = np.zeros(self.n)
        self.self_weight = np.asarray(self_weight, dtype=np.float64)
        self.boundary_weight = np.asarray(boundary_weight, dtype=np.float64)
        # adjacency-only degree: what a diffusion step can actually spread over
        adj = np.zeros(self.n)
        np.add.at(adj, np.repeat(np.arange(self.n), np.diff(self.indptr)),
                  self.weights)
        self.push_degrees = adj
        self.degrees = adj + self.self_weight + self.boundary_weight
        self.volume = float(self.degrees.sum())
        self.total_volume = float(total_volume) if total_volume is not None \
            else self.volume

    def neighbors(self, v):
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def to_scipy(self):
        """Adjacency as scipy CSR (no self or boundary weight)."""
        return sp.csr_matrix((self.weights, self.indices, self.indptr),
                             shape=(self.n, self.n))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _build_csr(n, u, v, w):
    """CSR from undirected edge arrays (each edge listed once)."""
    src = np.concatenate([u, v])
    dst = np.concatenate([v, u])
    wt = np.concatenate([w, w])
    order = np.lexsort((dst, src))
    src, dst, wt = src[order], dst[order], wt[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, dst.astype(np.int64), wt.astype(np.float64)


def from_edges(edge_u, edge_v, edge_w=None, external_ids=None, n=None):
    """Graph from undirected edge arrays; no dedup, loops must be absent."""
    edge_u = np.asarray(edge_u, dtype=np.int64)
    edge_v = np.asarray(edge_v, dtype=np.int64)
    if edge_w is None:
        edge_w = np.ones(edge_u.shape[0])
    if n is None:
        n = int(max(edge_u.max(initial=-1), edge_v.max(initial=-1))) + 1
    if external_ids is None:
        external_ids = np.arange(n, dtype=np.int64)
    indptr, indices, weights = _build_csr(n, edge_u, edge_v,
                                          np.asarray(edge_w, dtype=np.float64))
    return Graph(indptr, indices, weights, external_ids)


def _read_text(source):
    if hasattr(source, "read"):
        data = source.read()
        return data.decode() if isinstance(data, bytes) else data
    path = os.fspath(source)
    if path.endswith(".gz"):
        with gzip.open(path, "rt", encoding="utf-8") as fh:
            return fh.read()
    with io.open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def load_edge_list(source, one_indexed=False, weighted=False):
    """Parse an edge-list text file into a Graph.

    Lines hold "u v" or, with weighted=True, "u v w"; `#`-prefixed comment
    lines and blank lines are skipped; separators are arbitrary whitespace
    and line endings may be LF or CRLF. Self loops are dropped. Duplicate
    and reciprocal edge lines merge: weights sum in weighted mode and
    collapse to 1 otherwise.

    Args:
        source: path (``.gz`` transparently decompressed) or file object.
        one_indexed: subtract 1 from every vertex label.
        weighted: expect and keep a third weight column.

    Returns:
        Graph with external_ids preserving the original labels.

    Raises:
        ValueError: malformed line (reported with its 1-based number) or
            input containing no edges.
    """
    text = _read_text(source)
    lines = text.splitlines()
    kept = []
    kept_no = []
    for i, line in enumerate(lines):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        kept.append(stripped)
        kept_no.append(i + 1)
    if not kept:
        raise ValueError("empty edge list: no edges found")
    want = 3 if weighted else 2
    tokens = " ".join(kept).split()
    if len(tokens) != want * len(kept):
        for line, no in zip(kept, kept_no):
            if len(line.split()) != want:
                raise ValueError(f"line {no}: expected {want} fields, "
                                 f"got {len(line.split())!r} in {line!r}")
        raise ValueError("inconsistent field counts in edge list")
    arr = np.array(tokens, dtype=object).reshape(len(kept), want)
    try:
        uv = arr[:, :2].astype(np.int64)
    except (ValueError, TypeError):
        for line, no in zip(kept, kept_no):
            parts = line.split()
            try:
                int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"line {no}: non-integer vertex id in "
                                 f"{line!r}") from None
        raise
    if weighted:
        try:
            w = arr[:, 2].astype(np.float64)
        except (ValueError, TypeError):
            for line, no in zip(kept, kept_no):
                try:
                    float(line.split()[2])
                except ValueError:
                    raise ValueError(f"line {no}: bad weight in {line!r}") \
                        from None
            raise
    else:
        w = np.ones(len(kept))
    if one_indexed:
        uv = uv - 1
    ext, dense = np.unique(uv, return_inverse=True)
    dense = dense.reshape(uv.shape)
    u, v = dense[:, 0], dense[:, 1]
    keep = u != v
    u, v, w = u[keep], v[keep], w[keep]
    if u.shape[0] == 0:
        raise ValueError("empty edge list: all lines were self loops")
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    key = lo * ext.shape[0] + hi
    uniq, inv = np.unique(key, return_inverse=True)
    if weighted:
        merged_w = np.zeros(uniq.shape[0])
        np.add.at(merged_w, inv, w)
    else:
        merged_w = np.ones(uniq.shape[0])
    mu = uniq // ext.shape[0]
    mv = uniq % ext.shape[0]
    return from_edges(mu, mv, merged_w, external_ids=ext, n=ext.shape[0])


def _members_bool(g, members):
    mask = np.zeros(g.n, dtype=bool)
    idx = np.asarray(members, dtype=np.int64)
    if idx.shape[0]:
        if idx.min() < 0 or idx.max() >= g.n:
            raise IndexError("vertex id out of range")
    mask[idx] = True
    return mask


def links(g, P, Q):
    """Total edge weight between vertex sets, Σ_{u in P, v in Q} A_uv.

    Ordered-pair convention: links(C, C) counts every internal edge twice,
    and a folded self weight counts once when its vertex is in both sets.
    """
    pmask = _members_bool(g, P)
    qmask = _members_bool(g, Q)
    heads = np.repeat(np.arange(g.n), np.diff(g.indptr))
    sel = pmask[heads] & qmask[g.indices]
    total = float(g.weights[sel].sum())
    both = pmask & qmask
    total += float(g.self_weight[both].sum())
    return total


def _vol_and_internal(g, C):
    mask = _members_bool(g, C)
    vol = float(g.degrees[mask].sum())
    heads = np.repeat(np.arange(g.n), np.diff(g.indptr))
    sel = mask[heads] & mask[g.indices]
    internal = float(g.weights[sel].sum()) + float(g.self_weight[mask].sum())
    return vol, internal, int(mask.sum())


def cut(g, C):
    """Edge weight crossing from C to its complement (boundary included)."""
    vol, internal, _ = _vol_and_internal(g, C)
    return vol - internal


def ncut(g, C):
    """cut(C) divided by the volume of C."""
    vol, internal, size = _vol_and_internal(g, C)
    if size == 0 or vol == 0.0:
        raise ValueError("normalized cut undefined for an empty set")
    if vol >= g.total_volume:
        raise ValueError("normalized cut undefined for the full vertex set")
    return (vol - internal) / vol


def conductance(g, C):
    """cut(C) divided by min(vol(C), total_volume - vol(C))."""
    vol, internal, size = _vol_and_internal(g, C)
    other = g.total_volume - vol
    den = min(vol, other)
    if size == 0 or den <= 0.0:
        raise ValueError("conductance undefined: empty set or empty "
                         "complement volume")
    return (vol - internal) / den


def connected_component_labels(g):
    return csgraph.connected_components(g.to_scipy(), directed=False)


def _largest_label(g, n_comp, labels):
    counts = np.bincount(labels, minlength=n_comp)
    best = counts.max()
    tied = np.flatnonzero(counts == best)
    if tied.shape[0] == 1:
        return int(tied[0])
    # tie: component containing the smallest original id
    best_label = -1
    best_ext = None
    for lab in tied:
        ext_min = g.external_ids[labels == lab].min()
        if best_ext is None or ext_min < best_ext:
            best_ext = ext_min
            best_label = int(lab)
    return best_label


def largest_connected_component(g):
    """Induced subgraph on the largest component.

    Ties are broken by the component containing the smallest original id.
    External ids carry through, so the result composes with the input's
    labeling.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    n_comp, labels = connected_component_labels(g)
    if n_comp == 1:
        return g
    keep = np.flatnonzero(labels == _largest_label(g, n_comp, labels))
    return induced_subgraph(g, keep)


def induced_subgraph(g, vertices):
    """Subgraph on `vertices`, relabeled densely, keeping internal edges.

    The result is a plain graph (no boundary tracking); external ids map
    back into the parent's labels.
    """
    verts = np.unique(np.asarray(vertices, dtype=np.int64))
    if verts.shape[0] and (verts[0] < 0 or verts[-1] >= g.n):
        raise IndexError("vertex id out of range")
    new_id = np.full(g.n, -1, dtype=np.int64)
    new_id[verts] = np.arange(verts.shape[0])
    heads = np.repeat(np.arange(g.n), np.diff(g.indptr))
    sel = (new_id[heads] >= 0) & (new_id[g.indices] >= 0) & \
          (heads < g.indices)
    u = new_id[heads[sel]]
    v = new_id[g.indices[sel]]
    w = g.weights[sel]
    indptr, indices, weights = _build_csr(verts.shape[0], u, v, w)
    return Graph(indptr, indices, weights, g.external_ids[verts])


def embedded_subgraph(g, vertices):
    """Like induced_subgraph but keeps parent-referenced metrics.

    Every vertex remembers the weight of its edges leaving the kept set
    (``boundary_weight``) and the subgraph inherits the parent's total
    volume, so cut/ncut/conductance on the result equal the parent-graph
    values of the corresponding sets.
    """
    sub = induced_subgraph(g, vertices)
    verts = np.unique(np.asarray(vertices, dtype=np.int64))
    parent_deg = g.degrees[verts]
    boundary = parent_deg - sub.push_degrees - g.self_weight[verts]
    boundary[np.abs(boundary) < 1e-12] = 0.0
    return Graph(sub.indptr, sub.indices, sub.weights, sub.external_ids,
                 self_weight=g.self_weight[verts], boundary_weight=boundary,
                 total_volume=g.total_volume)


def local_clustering(g):
    """Per-vertex local clustering coefficient (unit-weight convention).

    (# edges among neighbors) / (deg * (deg - 1) / 2), defined as 0 for
    degree below 2.
    """
    tri = _kernels.neighborhood_edge_weight(g.indptr, g.indices, g.weights)
    deg = np.diff(g.indptr)
    out = np.zeros(g.n)
    ok = deg >= 2
    pairs = deg[ok] * (deg[ok] - 1) / 2.0
    out[ok] = tri[ok] / pairs
    return out


def graph_stats(g):
    """Summary statistics: n, m, max/avg degree, average clustering."""
    deg = g.degrees
    max_deg = float(deg.max()) if g.n else 0.0
    if max_deg == int(max_deg):
        max_deg = int(max_deg)
    return {
        "n": int(g.n),
        "m": int(g.m),
        "max_degree": max_deg,
        "avg_degree": float(deg.mean()) if g.n else 0.0,
        "avg_cc": float(local_clustering(g).mean()) if g.n else 0.0,
    }


def degree_histogram(g):
    """(degree, count) pairs for the integer degree distribution."""
    deg = np.rint(g.degrees).astype(np.int64)
    counts = np.bincount(deg)
    present = np.flatnonzero(counts)
    return [(int(d), int(counts[d])) for d in present]
