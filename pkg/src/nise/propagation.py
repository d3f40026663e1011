"""Extend core communities over bridges into their whiskers.

For every community C and every bridge (u, w) with u in C, the whisker
containing w is unioned into C. The extension provably never hurts: the
cut drops by exactly the links between the added whisker vertices and C,
and the normalized cut never increases (strictly decreases when at least
one bridge fires). Both relations are certified by direct recomputation.
"""

from __future__ import annotations

import numpy as np

from .expansion import Community
from .graph import _vol_and_internal, links


def _attach_table(decomp):
    """core parent-vertex -> list of whisker indices reachable by a bridge."""
    table = {}
    for row in range(decomp.bridges.shape[0]):
        u = int(decomp.bridges[row, 0])
        table.setdefault(u, []).append(int(decomp.whisker_of_bridge[row]))
    return table


def propagate(g, decomp, communities):
    """Union attached whiskers into every community.

    Args:
        g: the original (parent) graph.
        decomp: its core decomposition.
        communities: Community objects whose members are parent-graph
            internal ids lying inside the core.

    Returns:
        New Community list, same order; members sorted; conductance
        recomputed on g (None when the result is the whole graph).

    Raises:
        ValueError: a community contains a non-core vertex.
    """
    attach = _attach_table(decomp)
    out = []
    for comm in communities:
        members = np.asarray(comm.members, dtype=np.int64)
        if members.shape[0] and (decomp.core_index[members] < 0).any():
            raise ValueError("community contains a vertex outside the core")
        whisker_ids = set()
        for u in members:
            for w in attach.get(int(u), ()):
                whisker_ids.add(w)
        if whisker_ids:
            pieces = [members] + [decomp.whiskers[i]
                                  for i in sorted(whisker_ids)]
            merged = np.unique(np.concatenate(pieces))
        else:
            merged = np.sort(members)
        vol, internal, size = _vol_and_internal(g, merged)
        other = g.total_volume - vol
        den = min(vol, other)
        phi = (vol - internal) / den if den > 0.0 else None
        out.append(Community(merged, phi, comm.seed, comm.epsilon))
    return out


def certify_propagation(g, before, after, decomp):
    """Check the two extension guarantees by direct metric recomputation.

    cut(after) must equal cut(before) - links(added vertices, before), and
    ncut(after) <= ncut(before) with equality exactly when no whisker was
    added. Comparisons use cross products, exact for integer weights.

    Returns a report dict; raises AssertionError on any violation.
    """
    b = np.asarray(before.members if isinstance(before, Community) else before,
                   dtype=np.int64)
    a = np.asarray(after.members if isinstance(after, Community) else after,
                   dtype=np.int64)
    added = np.setdiff1d(a, b)
    vol_b, int_b, _ = _vol_and_internal(g, b)
    vol_a, int_a, _ = _vol_and_internal(g, a)
    cut_b = vol_b - int_b
    cut_a = vol_a - int_a
    removed = links(g, added, b)
    cut_ok = abs(cut_a - (cut_b - removed)) < 1e-9
    # ncut comparison as cut_a * vol_b vs cut_b * vol_a; any added whisker
    # came over a positive-weight bridge, so the drop must be strict
    lhs = cut_a * vol_b
    rhs = cut_b * vol_a
    ncut_ok = lhs < rhs if added.shape[0] else lhs == rhs
    report = {
        "cut_before": cut_b,
        "cut_after": cut_a,
        "links_removed": removed,
        "cut_identity_ok": bool(cut_ok),
        "ncut_before": cut_b / vol_b if vol_b else None,
        "ncut_after": cut_a / vol_a if vol_a else None,
        "ncut_ok": bool(ncut_ok),
        "strict": bool(added.shape[0]),
        "whisker_vertices_added": int(added.shape[0]),
    }
    if not (cut_ok and ncut_ok):
        raise AssertionError(f"propagation certificate failed: {report}")
    return report


def propagation_summary(g, communities, checks_passed):
    covered = np.zeros(g.n, dtype=bool)
    for comm in communities:
        covered[comm.members] = True
    return {
        "coverage": float(covered.sum() / g.n) if g.n else 0.0,
        "community_count": len(communities),
        "theorem_checks_passed": int(checks_passed),
    }
