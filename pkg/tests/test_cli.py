import json
import os

import numpy as np
import pytest

from conftest import build
from nise import cli, decompose, load_edge_list
from nise import io as nio
from nise.partition import Partition


def run_cli(*argv):
    return cli.main(list(argv))


def read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def test_run_ga_spread(ga_file, tmp_path):
    out = str(tmp_path / "out")
    rc = run_cli("run", "--input", ga_file, "--strategy", "spread",
                 "--k", "1", "--out", out)
    assert rc == 0
    report = json.loads(read(os.path.join(out, "eval.json")))
    assert report["coverage"] == 1.0
    assert report["community_count"] == 1
    assert read(os.path.join(out, "communities.txt")) == "0 1 2 3 4 5\n"
    prop = json.loads(read(os.path.join(out, "propagation.json")))
    assert prop == {"coverage": 1.0, "community_count": 1,
                    "theorem_checks_passed": 1}
    core = json.loads(read(os.path.join(out, "communities_core.json")))
    assert core[0]["size"] == 3
    assert core[0]["conductance"] == pytest.approx(1 / 7)
    for name in ("stats.json", "degree_histogram.csv", "core_edges.txt",
                 "filter_summary.json", "whiskers.txt", "seeds.txt",
                 "seeds.json", "communities_core.txt", "curve.csv",
                 "manifest.json"):
        assert os.path.exists(os.path.join(out, name)), name


def test_run_twice_identical(ga_file, tmp_path):
    a = str(tmp_path / "a")
    b = str(tmp_path / "b")
    for out in (a, b):
        assert run_cli("run", "--input", ga_file, "--strategy", "graclus",
                       "--k", "2", "--seed-rng", "5", "--out", out) == 0
    for name in sorted(os.listdir(a)):
        if name == "manifest.json":
            continue
        assert read(os.path.join(a, name)) == read(os.path.join(b, name)), \
            name


def test_filter_gb(gb_file, tmp_path, capsys):
    out = str(tmp_path / "out")
    assert run_cli("filter", "--input", gb_file, "--out", out) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["core_vertices"] == 3
    assert summary["core_edges"] == 3
    assert summary["detached_components"] == 1
    assert summary["largest_detached"] == 2
    assert read(os.path.join(out, "whiskers.txt")) == "0: 3 4\n"
    assert read(os.path.join(out, "core_edges.txt")) == "0 1\n0 2\n1 2\n"


def test_phase_chain(ga_file, tmp_path):
    out = str(tmp_path / "out")
    assert run_cli("seed", "--input", ga_file, "--strategy", "spread",
                   "--k", "1", "--out", out) == 0
    assert read(os.path.join(out, "seeds.txt")) == "2\n"
    side = json.loads(read(os.path.join(out, "seeds.json")))
    assert side == {"strategy": "spread_hubs", "k_requested": 1,
                    "k_returned": 1}
    assert run_cli("expand", "--input", ga_file, "--out", out) == 0
    assert read(os.path.join(out, "communities_core.txt")) == "0 1 2\n"
    assert run_cli("propagate", "--input", ga_file, "--out", out) == 0
    assert read(os.path.join(out, "communities.txt")) == "0 1 2 3 4 5\n"
    assert run_cli("eval", "--input", ga_file, "--out", out) == 0
    report = json.loads(read(os.path.join(out, "eval.json")))
    assert report["coverage"] == 1.0


def test_eval_self_ground_truth(ga_file, tmp_path):
    out = str(tmp_path / "out")
    comms = tmp_path / "c.txt"
    comms.write_text("0 1 2\n3 4 5\n")
    assert run_cli("eval", "--input", ga_file, "--communities", str(comms),
                   "--ground-truth", str(comms), "--out", out) == 0
    report = json.loads(read(os.path.join(out, "eval.json")))
    assert report["avg_f1"] == 1.0
    assert report["avg_f2"] == 1.0


def test_seed_with_partition_file(ga_file, tmp_path):
    out = str(tmp_path / "out")
    g = load_edge_list(ga_file)
    d = decompose(g)
    pfile = tmp_path / "part.txt"
    lines = []
    for i, v in enumerate(d.core.external_ids):
        lines.append(f"{int(v)} {0 if i < 2 else 1}")
    pfile.write_text("".join(s + "\n" for s in lines))
    assert run_cli("seed", "--input", ga_file, "--strategy", "graclus",
                   "--k", "2", "--partition-file", str(pfile),
                   "--out", out) == 0
    assert os.path.exists(os.path.join(out, "seeds.txt"))


def test_partition_file_round_trip(tmp_path):
    g = build([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    part = Partition(np.array([0, 0, 1, 1]), 2)
    path = str(tmp_path / "p.txt")
    nio.write_partition(g, part, path)
    back = nio.read_partition(g, path)
    assert back.assignment.tolist() == part.assignment.tolist()
    path2 = str(tmp_path / "p2.txt")
    nio.write_partition(g, back, path2)
    assert read(path) == read(path2)


def test_missing_input_fails(tmp_path, capsys):
    out = str(tmp_path / "out")
    rc = run_cli("run", "--input", str(tmp_path / "absent.txt"),
                 "--strategy", "lcm", "--out", out)
    assert rc == 1
    assert "load" in capsys.readouterr().err


def test_k_required(ga_file, tmp_path, capsys):
    rc = run_cli("run", "--input", ga_file, "--strategy", "spread",
                 "--out", str(tmp_path / "out"))
    assert rc == 1
    assert "--k" in capsys.readouterr().err


def test_bad_communities_file(ga_file, tmp_path, capsys):
    bad = tmp_path / "c.txt"
    bad.write_text("0 1 nope\n")
    rc = run_cli("eval", "--input", ga_file, "--communities", str(bad),
                 "--out", str(tmp_path / "out"))
    assert rc == 1


def test_unknown_vertex_in_communities(ga_file, tmp_path):
    bad = tmp_path / "c.txt"
    bad.write_text("0 99\n")
    rc = run_cli("eval", "--input", ga_file, "--communities", str(bad),
                 "--out", str(tmp_path / "out"))
    assert rc == 1


def test_nise_log_env(ga_file, tmp_path, monkeypatch):
    monkeypatch.setenv("NISE_LOG", "DEBUG")
    out = str(tmp_path / "out")
    assert run_cli("stats", "--input", ga_file, "--out", out) == 0
    assert os.path.exists(os.path.join(out, "stats.json"))


def test_outputs_use_lf_only(ga_file, tmp_path):
    out = str(tmp_path / "out")
    run_cli("run", "--input", ga_file, "--strategy", "lcm", "--out", out)
    for name in os.listdir(out):
        with open(os.path.join(out, name), "rb") as fh:
            assert b"\r" not in fh.read(), name


def test_expand_epsilons_flag(ga_file, tmp_path):
    out = str(tmp_path / "out")
    run_cli("seed", "--input", ga_file, "--strategy", "spread", "--k", "1",
            "--out", out)
    assert run_cli("expand", "--input", ga_file, "--epsilons", "0.01,0.0001",
                   "--out", out) == 0
    side = json.loads(read(os.path.join(out, "communities_core.json")))
    assert side[0]["epsilon"] in (0.01, 0.0001)


def test_expand_gamma_list_alias(ga_file, tmp_path):
    out = str(tmp_path / "out")
    run_cli("seed", "--input", ga_file, "--strategy", "spread", "--k", "1",
            "--out", out)
    assert run_cli("expand", "--input", ga_file, "--gamma-list",
                   "10,100", "--out", out) == 0
