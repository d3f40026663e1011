import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import build, erdos_renyi_lcc
from nise import (PprParams, decompose, expand_all, expand_seed, ppr_push,
                  restart_set, sweep_cut)
from nise.expansion import DEFAULT_GAMMAS, normalize_ranking


def test_restart_set(ga):
    assert restart_set(ga, 0).tolist() == [0, 1, 2]
    assert restart_set(ga, 3).tolist() == [2, 3, 4, 5]
    assert restart_set(ga, 0, singleton=True).tolist() == [0]


def test_params_validation():
    with pytest.raises(ValueError):
        PprParams(alpha=1.0)
    with pytest.raises(ValueError):
        PprParams(alpha=0.0)
    with pytest.raises(ValueError):
        PprParams(gammas=(10.0, 10.0))
    with pytest.raises(ValueError):
        PprParams(epsilons=(1e-4, 1e-4))
    with pytest.raises(ValueError):
        PprParams(epsilons=(1e-6, 1e-4))
    assert normalize_ranking("fppr") == "fiedler_ppr"
    assert normalize_ranking("ppr") == "ppr"
    with pytest.raises(ValueError):
        normalize_ranking("other")


def test_push_oracle_ga(ga):
    alpha = 0.99
    T = np.array([0, 1, 2])
    x, r = ppr_push(ga, T, alpha, 1e-8)
    P = oracles.dense_ppr_operator(ga, alpha)
    want = P @ oracles.uniform_restart(ga, T)
    got = x + P @ r
    assert np.abs(got - want).max() <= 1e-8


def test_push_mass_conservation(ga):
    x, r = ppr_push(ga, np.array([0, 1, 2]), 0.99, 1e-6)
    assert x.sum() + r.sum() == pytest.approx(1.0, abs=1e-12)


def test_push_residual_bound(ga):
    for eps in (1e-4, 1e-6, 1e-8):
        x, r = ppr_push(ga, np.array([2, 3]), 0.99, eps)
        deg = np.diff(ga.indptr).astype(float)
        assert np.all(r <= deg * eps + 1e-15)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6),
       eps_pow=st.sampled_from([4, 6, 8]))
def test_push_oracle_random(seed, eps_pow):
    rng = np.random.default_rng(seed)
    edges = oracles.random_connected_graph(rng, int(rng.integers(3, 50)))
    n = max(max(e) for e in edges) + 1
    g = build(edges, n=n)
    T = restart_set(g, int(rng.integers(0, n)))
    alpha = 0.99
    eps = 10.0 ** -eps_pow
    x, r = ppr_push(g, T, alpha, eps)
    P = oracles.dense_ppr_operator(g, alpha)
    lhs = x + P @ r
    rhs = P @ oracles.uniform_restart(g, T)
    assert np.abs(lhs - rhs).max() <= 1e-8
    assert x.sum() + r.sum() == pytest.approx(1.0, abs=1e-12)
    deg = np.diff(g.indptr).astype(float)
    assert np.all(r <= deg * eps + 1e-15)


def test_push_support_monotone_fixed_instances():
    # empirical property on a fixed deterministic instance set; not a
    # theorem, so any future violation here means the kernel changed
    for seed in range(10):
        rng = np.random.default_rng(seed)
        edges = oracles.random_connected_graph(rng, int(rng.integers(8, 40)))
        n = max(max(e) for e in edges) + 1
        g = build(edges, n=n)
        T = restart_set(g, int(rng.integers(0, n)))
        prev = -1
        for eps in (1e-3, 1e-4, 1e-5, 1e-6, 1e-7):
            x, _ = ppr_push(g, T, 0.99, eps)
            sup = int((x > 0).sum())
            assert sup >= prev
            prev = sup


def test_sweep_uniform_example(ga):
    x = np.zeros(6)
    x[[0, 1, 2]] = 1 / 3
    comm = sweep_cut(ga, x, "fiedler_ppr")
    assert comm.members.tolist() == [0, 1, 2]
    assert comm.conductance == pytest.approx(1 / 7, abs=0)


def test_sweep_empty_support(ga):
    assert sweep_cut(ga, np.zeros(6), "fiedler_ppr") is None


def test_sweep_ranking_modes(ga):
    x = np.array([0.5, 0.0, 0.3, 0.2, 0.0, 0.0])
    a = sweep_cut(ga, x, "fiedler_ppr")
    b = sweep_cut(ga, x, "ppr")
    assert a is not None and b is not None


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6),
       ranking=st.sampled_from(["fiedler_ppr", "ppr"]))
def test_sweep_matches_exhaustive_oracle(seed, ranking):
    rng = np.random.default_rng(seed)
    edges = oracles.random_connected_graph(rng, int(rng.integers(4, 25)))
    n = max(max(e) for e in edges) + 1
    g = build(edges, n=n)
    T = restart_set(g, int(rng.integers(0, n)))
    x, _ = ppr_push(g, T, 0.99, 1e-5)
    got = sweep_cut(g, x, ranking)
    want = oracles.sweep_oracle(g, x, ranking)
    if want is None:
        assert got is None
        return
    assert got.conductance == pytest.approx(float(want[1]), abs=1e-12)


def test_expand_seed_ga(ga):
    comm = expand_seed(ga, 0)
    assert comm.members.tolist() == [0, 1, 2]
    assert comm.conductance == pytest.approx(1 / 7, abs=0)
    assert comm.seed == 0
    assert comm.epsilon in [1.0 / (gmm * 7.0) for gmm in DEFAULT_GAMMAS]


def test_expand_seed_automorphic_twin(ga):
    comm = expand_seed(ga, 4)
    assert comm.members.tolist() == [3, 4, 5]
    assert comm.conductance == pytest.approx(1 / 7, abs=0)


def test_expand_seed_brute_force_best(ga):
    # the returned community must equal the best sweep result over the
    # dense-solved vectors at each scheduled epsilon
    alpha = 0.99
    T = restart_set(ga, 0)
    best = None
    for gmm in DEFAULT_GAMMAS:
        eps = 1.0 / (gmm * 7.0)
        x, _ = ppr_push(ga, T, alpha, eps)
        cand = oracles.sweep_oracle(ga, x, "fiedler_ppr")
        if cand is not None and (best is None or cand[1] < best[1]):
            best = cand
    got = expand_seed(ga, 0)
    assert got.members.tolist() == best[0].tolist()
    assert got.conductance == pytest.approx(float(best[1]), abs=1e-12)


def test_expand_on_embedded_core(ga):
    d = decompose(ga)
    two = int(np.flatnonzero(ga.external_ids[d.core_vertices] == 2)[0])
    comm = expand_seed(d.core, two)
    assert comm.members.tolist() == [0, 1, 2]
    assert comm.conductance == pytest.approx(1 / 7, abs=0)


def test_explicit_epsilons(ga):
    params = PprParams(epsilons=(1e-2, 1e-4))
    comm = expand_seed(ga, 0, params)
    assert comm.epsilon in (1e-2, 1e-4)


def test_singleton_params(ga):
    comm = expand_seed(ga, 0, PprParams(singleton_seeds=True))
    assert comm.members.size >= 1


def test_dedup(ga):
    comms = expand_all(ga, np.array([0, 1]))
    assert len(comms) == 1
    assert comms[0].members.tolist() == [0, 1, 2]
    assert comms[0].seed == 0


def test_expand_all_order_and_threads(ga):
    seeds = np.arange(6)
    seq = expand_all(ga, seeds, workers=1)
    par = expand_all(ga, seeds, workers=4)
    assert len(seq) == len(par)
    for a, b in zip(seq, par):
        assert a.members.tolist() == b.members.tolist()
        assert a.conductance == b.conductance
        assert a.seed == b.seed and a.epsilon == b.epsilon


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_expand_threads_agree_random(seed):
    rng = np.random.default_rng(seed)
    g = erdos_renyi_lcc(rng, 60, 0.06)
    seeds = rng.choice(g.n, size=min(6, g.n), replace=False)
    seq = expand_all(g, seeds, workers=1)
    par = expand_all(g, seeds, workers=8)
    assert [c.members.tolist() for c in seq] == \
        [c.members.tolist() for c in par]
