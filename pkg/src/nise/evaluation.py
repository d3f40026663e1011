"""Scoring of community sets: coverage, the conductance-vs-coverage curve
and its area, F-measures against ground truth, and size histograms."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import conductance as graph_conductance


@dataclass
class CoverageCurve:
    """Step curve of max conductance against cumulative coverage.

    points: (coverage, max_conductance) with coverage strictly increasing;
    the curve holds each conductance value on the half-open interval ending
    at its coverage. auc integrates the curve over [0, 1]; how the region
    past the final coverage is handled is recorded in `mode`.
    """
    points: list
    auc: float
    mode: str = "penalize_uncovered"


@dataclass
class MatchReport:
    avg_f1: float
    avg_f2: float
    beta: float
    per_ground_truth: list = field(default_factory=list)


def _member_arrays(communities):
    out = []
    for comm in communities:
        members = getattr(comm, "members", comm)
        out.append(np.asarray(members, dtype=np.int64))
    return out


def coverage(communities, n):
    """Fraction of the n vertices belonging to at least one community."""
    if n <= 0:
        raise ValueError("vertex count must be positive")
    covered = np.zeros(n, dtype=bool)
    for members in _member_arrays(communities):
        covered[members] = True
    return float(covered.sum() / n)


def conductance_coverage_auc(g, communities, mode="penalize_uncovered"):
    """Greedy conductance-vs-coverage curve and area.

    Communities are consumed in ascending conductance (ties: larger first,
    then input order), accumulating the covered union. Conductance is
    recomputed on g for every community; a community equal to the whole
    vertex set is a metric-undefined error.

    mode "penalize_uncovered" charges the worst conductance 1 on the
    uncovered tail; "truncate" integrates only up to the final coverage.
    """
    if mode not in ("penalize_uncovered", "truncate"):
        raise ValueError(f"unknown mode {mode!r}")
    member_arrays = _member_arrays(communities)
    for members in member_arrays:
        if members.shape[0] == 0:
            raise ValueError("empty community")
    phis = np.array([graph_conductance(g, m) for m in member_arrays])
    sizes = np.array([m.shape[0] for m in member_arrays])
    order = np.lexsort((np.arange(len(member_arrays)), -sizes, phis))
    covered = np.zeros(g.n, dtype=bool)
    points = []
    auc = 0.0
    prev_cov = 0.0
    running_max = 0.0
    for i in order:
        running_max = max(running_max, phis[i])
        covered[member_arrays[i]] = True
        cov = covered.sum() / g.n
        if cov > prev_cov:
            auc += running_max * (cov - prev_cov)
            points.append((float(cov), float(running_max)))
            prev_cov = cov
    if mode == "penalize_uncovered":
        auc += 1.0 * (1.0 - prev_cov)
    return CoverageCurve(points, float(auc), mode)


def _f_beta(precision, recall, beta):
    if precision == 0.0 and recall == 0.0:
        return 0.0
    b2 = beta * beta
    return (1.0 + b2) * precision * recall / (b2 * precision + recall)


def f_beta_report(ground_truth, communities, beta=1.0):
    """Best-match F scores of every ground-truth set.

    For each ground-truth set the community maximizing F_beta is found
    (candidates restricted through an inverted vertex-to-community index;
    a set overlapping nothing scores 0 with best_match -1). avg_f1 and
    avg_f2 are computed with independent argmaxes; per_ground_truth holds
    (best_match_index, precision, recall, f_beta) at the requested beta.
    """
    if beta <= 0.0:
        raise ValueError("beta must be positive")
    gt = _member_arrays(ground_truth)
    comms = _member_arrays(communities)
    if not gt or not comms:
        raise ValueError("ground truth and communities must be non-empty")
    for s in gt:
        if s.shape[0] == 0:
            raise ValueError("empty ground-truth set")
    sizes = np.empty(len(comms), dtype=np.int64)
    for j, c in enumerate(comms):
        if c.shape[0] == 0:
            raise ValueError("empty community")
        sizes[j] = c.shape[0]
    top = max((int(c.max()) for c in comms), default=-1)
    top = max(top, max(int(s.max()) for s in gt))
    index_ptr, index_ids = _inverted_index(comms, top + 1)
    sum_f1 = 0.0
    sum_f2 = 0.0
    per_gt = []
    for s in gt:
        hits = np.concatenate([index_ids[index_ptr[v]:index_ptr[v + 1]]
                               for v in s])
        if hits.shape[0] == 0:
            per_gt.append((-1, 0.0, 0.0, 0.0))
            continue
        overlap_counts = np.bincount(hits, minlength=len(comms))
        cand_ids = np.flatnonzero(overlap_counts)
        inter = overlap_counts[cand_ids].astype(np.float64)
        precision = inter / sizes[cand_ids]
        recall = inter / s.shape[0]
        f1 = np.array([_f_beta(p, r, 1.0)
                       for p, r in zip(precision, recall)])
        f2 = np.array([_f_beta(p, r, 2.0)
                       for p, r in zip(precision, recall)])
        fb = np.array([_f_beta(p, r, beta)
                       for p, r in zip(precision, recall)])
        sum_f1 += f1.max()
        sum_f2 += f2.max()
        jb = int(np.argmax(fb))
        per_gt.append((int(cand_ids[jb]), float(precision[jb]),
                       float(recall[jb]), float(fb[jb])))
    return MatchReport(sum_f1 / len(gt), sum_f2 / len(gt), beta, per_gt)


def _inverted_index(comms, n):
    counts = np.zeros(n + 1, dtype=np.int64)
    for c in comms:
        counts[c + 1] += 1
    ptr = np.cumsum(counts)
    ids = np.empty(int(ptr[-1]), dtype=np.int64)
    fill = ptr[:-1].copy()
    for j, c in enumerate(comms):
        for v in c:
            ids[fill[v]] = j
            fill[v] += 1
    return ptr, ids


def size_distribution(communities):
    """Histogram {community size: count}."""
    hist = {}
    for members in _member_arrays(communities):
        hist[members.shape[0]] = hist.get(members.shape[0], 0) + 1
    return hist
