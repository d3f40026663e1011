"""Readers and writers for the pipeline's file formats.

Every output is UTF-8 with LF line endings. Identical in-memory values
always serialize to identical bytes, which is what makes the determinism
guarantees checkable at the file level.
"""

from __future__ import annotations

import json

import numpy as np


def _open_w(path):
    return open(path, "w", encoding="utf-8", newline="\n")


def write_json(path, payload):
    with _open_w(path) as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_edge_list(g, path):
    """Edge list with external ids, one "u v" (or "u v w") line per edge,
    sorted ascending; weights printed only when not all 1."""
    heads = np.repeat(np.arange(g.n), np.diff(g.indptr))
    sel = heads < g.indices
    u = g.external_ids[heads[sel]]
    v = g.external_ids[g.indices[sel]]
    w = g.weights[sel]
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    order = np.lexsort((hi, lo))
    weighted = not np.all(w == 1.0)
    with _open_w(path) as fh:
        for i in order:
            if weighted:
                fh.write(f"{lo[i]} {hi[i]} {w[i]:.12g}\n")
            else:
                fh.write(f"{lo[i]} {hi[i]}\n")


def write_degree_histogram(g, path):
    from .graph import degree_histogram
    with _open_w(path) as fh:
        fh.write("degree,count\n")
        for deg, count in degree_histogram(g):
            fh.write(f"{deg},{count}\n")


def write_whiskers(g, decomp, path):
    """One line per whisker: "whisker_id: v1 v2 ..." with external ids."""
    with _open_w(path) as fh:
        for i, w in enumerate(decomp.whiskers):
            ids = np.sort(g.external_ids[w])
            fh.write(f"{i}: " + " ".join(str(x) for x in ids) + "\n")


def write_partition(g, partition, path):
    """One "external_id cluster_index" line per vertex, ascending id."""
    order = np.argsort(g.external_ids, kind="stable")
    with _open_w(path) as fh:
        for v in order:
            fh.write(f"{g.external_ids[v]} {partition.assignment[v]}\n")


def read_partition(g, path):
    """Inverse of write_partition, mapped back onto g's internal ids."""
    from .partition import Partition
    ext_to_int = {int(e): i for i, e in enumerate(g.external_ids)}
    assignment = np.full(g.n, -1, dtype=np.int64)
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"partition file line {lineno}: expected "
                                 f"'external_id cluster_index'")
            ext, c = int(parts[0]), int(parts[1])
            if ext not in ext_to_int:
                raise ValueError(f"partition file line {lineno}: unknown "
                                 f"vertex {ext}")
            assignment[ext_to_int[ext]] = c
    if (assignment < 0).any():
        missing = int((assignment < 0).sum())
        raise ValueError(f"partition file leaves {missing} vertices "
                         f"unassigned")
    uniq = np.unique(assignment)
    dense = np.searchsorted(uniq, assignment)
    return Partition(dense.astype(np.int64), int(uniq.shape[0]))


def write_seeds(g, seed_set, path, sidecar_path=None):
    """One external seed id per line, plus a JSON sidecar with the
    strategy and requested/returned counts."""
    with _open_w(path) as fh:
        for s in seed_set.seeds:
            fh.write(f"{g.external_ids[s]}\n")
    if sidecar_path:
        write_json(sidecar_path, {
            "strategy": seed_set.strategy,
            "k_requested": seed_set.k_requested,
            "k_returned": seed_set.k_returned,
        })


def read_seeds(g, path):
    ext_to_int = {int(e): i for i, e in enumerate(g.external_ids)}
    seeds = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            ext = int(line)
            if ext not in ext_to_int:
                raise ValueError(f"seed file line {lineno}: unknown vertex "
                                 f"{ext}")
            seeds.append(ext_to_int[ext])
    return np.array(seeds, dtype=np.int64)


def write_communities(g, communities, path):
    """One line per community: member external ids, ascending, space
    separated."""
    with _open_w(path) as fh:
        for comm in communities:
            members = getattr(comm, "members", comm)
            ids = np.sort(g.external_ids[np.asarray(members, dtype=np.int64)])
            fh.write(" ".join(str(x) for x in ids) + "\n")


def write_community_sidecar(g, communities, path):
    rows = []
    for comm in communities:
        rows.append({
            "seed": int(g.external_ids[comm.seed])
                if comm.seed is not None else None,
            "epsilon": comm.epsilon,
            "conductance": comm.conductance,
            "size": comm.size,
        })
    write_json(path, rows)


def read_communities(path):
    """Communities file -> list of external-id arrays."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                members = np.array([int(t) for t in line.split()],
                                   dtype=np.int64)
            except ValueError:
                raise ValueError(f"communities file line {lineno}: "
                                 f"non-integer vertex id") from None
            out.append(members)
    return out


def map_external_members(g, member_arrays, context="communities"):
    """External-id arrays -> internal-id arrays on g."""
    ext_to_int = {int(e): i for i, e in enumerate(g.external_ids)}
    mapped = []
    for members in member_arrays:
        try:
            mapped.append(np.array([ext_to_int[int(v)] for v in members],
                                   dtype=np.int64))
        except KeyError as exc:
            raise ValueError(f"{context}: unknown vertex {exc.args[0]}") \
                from None
    return mapped


def write_curve(curve, path):
    with _open_w(path) as fh:
        fh.write("coverage,max_conductance\n")
        for cov, phi in curve.points:
            fh.write(f"{cov:.12g},{phi:.12g}\n")
