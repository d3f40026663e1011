"""Numba kernels for the hot loops.

Everything here works on raw CSR arrays (indptr, indices, weights) so the
kernels stay independent of the Graph wrapper. All kernels are compiled
with nogil so seed expansions can run on a thread pool.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def neighborhood_edge_weight(indptr, indices, weights):
    """Per-vertex total weight of edges among the open neighborhood N(v).

    Each undirected edge inside N(v) is counted once. Used for local
    clustering coefficients and for scoring closed neighborhoods.
    """
    n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.float64)
    mark = np.full(n, -1, dtype=np.int64)
    for v in range(n):
        for e in range(indptr[v], indptr[v + 1]):
            mark[indices[e]] = v
        acc = 0.0
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            # count each u-w edge with both ends marked; halve below
            for f in range(indptr[u], indptr[u + 1]):
                if mark[indices[f]] == v:
                    acc += weights[f]
        out[v] = acc / 2.0
    return out


@njit(cache=True, nogil=True)
def biconnected_edge_labels(indptr, indices, edge_uid, m):
    """Label every undirected edge with its biconnected component id.

    Iterative depth-first search with an explicit vertex stack and an edge
    stack; recursion would overflow on large graphs. Roots are visited in
    ascending id. Returns (labels, component_count).
    """
    n = indptr.shape[0] - 1
    disc = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    parent_uid = np.full(n, -1, dtype=np.int64)
    ptr = indptr[:-1].copy()
    vstack = np.empty(n, dtype=np.int64)
    estack = np.empty(m, dtype=np.int64)
    comp = np.full(m, -1, dtype=np.int64)
    timer = 0
    ncomp = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = timer
        low[root] = timer
        timer += 1
        parent_uid[root] = -1
        sp = 0
        esp = 0
        vstack[0] = root
        while sp >= 0:
            v = vstack[sp]
            advanced = False
            while ptr[v] < indptr[v + 1]:
                e = ptr[v]
                ptr[v] += 1
                w = indices[e]
                uid = edge_uid[e]
                if uid == parent_uid[v]:
                    continue
                if disc[w] == -1:
                    estack[esp] = uid
                    esp += 1
                    disc[w] = timer
                    low[w] = timer
                    timer += 1
                    parent_uid[w] = uid
                    sp += 1
                    vstack[sp] = w
                    advanced = True
                    break
                elif disc[w] < disc[v]:
                    # back edge to an ancestor
                    estack[esp] = uid
                    esp += 1
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                # disc[w] > disc[v]: already recorded from w's side
            if advanced:
                continue
            sp -= 1
            if sp >= 0:
                u = vstack[sp]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] >= disc[u]:
                    # u is an articulation point (or root); pop one component
                    while True:
                        esp -= 1
                        uid = estack[esp]
                        comp[uid] = ncomp
                        if uid == parent_uid[v]:
                            break
                    ncomp += 1
    return comp, ncomp


@njit(cache=True, nogil=True)
def ppr_push(indptr, indices, weights, push_deg, restart, alpha, eps):
    """Personalized PageRank push with a FIFO queue of threshold violators.

    Starts from the uniform distribution on `restart` (ascending ids) and
    pushes any vertex v with r_v > push_deg[v] * eps:

        x_v += (1 - alpha) * r_v
        r_u += alpha * r_v * w(v,u) / (2 * push_deg[v])   for neighbors u
        r_v  = alpha * r_v / 2

    Vertices with zero push degree are never enqueued (their residual
    cannot be spread, and repeatedly halving it would never terminate).
    Returns dense (x, r); total mass x + r stays 1.
    """
    n = indptr.shape[0] - 1
    x = np.zeros(n, dtype=np.float64)
    r = np.zeros(n, dtype=np.float64)
    cap = n + 1
    queue = np.empty(cap, dtype=np.int64)
    in_queue = np.zeros(n, dtype=np.uint8)
    head = 0
    tail = 0
    init = 1.0 / restart.shape[0]
    for i in range(restart.shape[0]):
        r[restart[i]] = init
    for i in range(restart.shape[0]):
        v = restart[i]
        if push_deg[v] > 0.0 and r[v] > push_deg[v] * eps:
            queue[tail] = v
            tail = (tail + 1) % cap
            in_queue[v] = 1
    while head != tail:
        v = queue[head]
        head = (head + 1) % cap
        in_queue[v] = 0
        rv = r[v]
        dv = push_deg[v]
        if rv <= dv * eps:
            continue
        x[v] += (1.0 - alpha) * rv
        spread = alpha * rv / (2.0 * dv)
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            r[u] += spread * weights[e]
            if in_queue[u] == 0 and push_deg[u] > 0.0 and r[u] > push_deg[u] * eps:
                queue[tail] = u
                tail = (tail + 1) % cap
                in_queue[u] = 1
        r[v] = alpha * rv / 2.0
        if in_queue[v] == 0 and r[v] > dv * eps:
            queue[tail] = v
            tail = (tail + 1) % cap
            in_queue[v] = 1
    return x, r


@njit(cache=True, nogil=True)
def sweep_min_conductance(indptr, indices, weights, metric_deg, self_w, order,
                          total_volume):
    """Minimum-conductance prefix of `order`.

    Walks prefixes incrementally: adding a vertex updates the prefix volume
    and internal weight in O(deg). Conductance compares use cross products
    (cut1 * den2 < cut2 * den1), which is exact in float64 for integer
    weights. A prefix whose complement volume is zero is skipped. Returns
    (best_len, best_cut, best_den); best_len 0 means no valid prefix.
    """
    n = indptr.shape[0] - 1
    in_set = np.zeros(n, dtype=np.uint8)
    vol = 0.0
    internal = 0.0
    best_len = 0
    best_cut = 0.0
    best_den = 1.0
    have = False
    for i in range(order.shape[0]):
        v = order[i]
        vol += metric_deg[v]
        internal += self_w[v]
        for e in range(indptr[v], indptr[v + 1]):
            if in_set[indices[e]] == 1:
                internal += 2.0 * weights[e]
        in_set[v] = 1
        cutw = vol - internal
        other = total_volume - vol
        den = vol if vol < other else other
        if den <= 0.0:
            continue
        if not have or cutw * best_den < best_cut * den:
            have = True
            best_len = i + 1
            best_cut = cutw
            best_den = den
    return best_len, best_cut, best_den


@njit(cache=True, nogil=True)
def heavy_edge_matching(indptr, indices, weights, visit_order):
    """Greedy heavy-edge matching for coarsening.

    Visits vertices in `visit_order`; an unmatched vertex is merged with its
    unmatched neighbor of maximum edge weight (ties: lowest neighbor id),
    or kept as a singleton. Returns the fine-to-coarse map with coarse ids
    numbered in order of formation.
    """
    n = indptr.shape[0] - 1
    match = np.full(n, -1, dtype=np.int64)
    coarse = 0
    for i in range(visit_order.shape[0]):
        v = visit_order[i]
        if match[v] != -1:
            continue
        best = -1
        best_w = 0.0
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if match[u] != -1 or u == v:
                continue
            w = weights[e]
            if best == -1 or w > best_w or (w == best_w and u < best):
                best = u
                best_w = w
        match[v] = coarse
        if best != -1:
            match[best] = coarse
        coarse += 1
    return match, coarse


@njit(cache=True, nogil=True)
def apply_moves_guarded(assignment, proposed, counts):
    """Apply batch reassignments in ascending vertex id, never emptying a
    cluster. Returns the number of applied moves."""
    moved = 0
    for v in range(assignment.shape[0]):
        src = assignment[v]
        dst = proposed[v]
        if dst == src:
            continue
        if counts[src] <= 1:
            continue
        counts[src] -= 1
        counts[dst] += 1
        assignment[v] = dst
        moved += 1
    return moved
