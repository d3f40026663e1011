import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from nise import from_edges

GA_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]
GB_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]


def build(edges, n=None):
    u = [e[0] for e in edges]
    v = [e[1] for e in edges]
    return from_edges(u, v, n=n)


@pytest.fixture
def ga():
    """Two triangles joined by the bridge (2,3)."""
    return build(GA_EDGES)


@pytest.fixture
def gb():
    """Triangle with a path whisker 2-3-4."""
    return build(GB_EDGES)


@pytest.fixture
def ga_file(tmp_path):
    p = tmp_path / "ga.txt"
    p.write_text("".join(f"{u} {v}\n" for u, v in GA_EDGES))
    return str(p)


@pytest.fixture
def gb_file(tmp_path):
    p = tmp_path / "gb.txt"
    p.write_text("".join(f"{u} {v}\n" for u, v in GB_EDGES))
    return str(p)


def data_dir():
    env = os.environ.get("NISE_DATA")
    if env:
        return env
    return os.path.join(os.path.dirname(os.path.dirname(
        os.path.abspath(__file__))), "data")


def dataset_path(name):
    return os.path.join(data_dir(), name)


def require_dataset(name):
    path = dataset_path(name)
    if not os.path.exists(path):
        pytest.skip(f"dataset {name} not present (run "
                    f"scripts/fetch_datasets.py on a networked host or set "
                    f"NISE_DATA)")
    return path


def erdos_renyi_lcc(rng, n, p):
    """LCC of G(n, p) as a Graph."""
    from nise import largest_connected_component
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.shape[0]) < p
    u, v = iu[keep], ju[keep]
    if u.size == 0:
        u, v = np.array([0]), np.array([1])
    g = from_edges(u, v, n=n)
    return largest_connected_component(g)
