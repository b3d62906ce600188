import json

import numpy as np
import pytest

from abcdlab import theory
from abcdlab.cli import main
from abcdlab.graphio import MalformedFileError, read_communities, read_edges
from conftest import make_params

CONFIG = """\
# gamma = 2.5 parameter set, desk sized
n = 4096
gamma = 2.5
delta = 5
zeta = 0.4
beta = 1.5
s = 50
tau = 0.6
xi = 0.5
"""


@pytest.fixture
def cfg(tmp_path):
    path = tmp_path / "abcd.cfg"
    path.write_text(CONFIG)
    return path


def test_generate_writes_consistent_files(tmp_path, cfg):
    prefix = tmp_path / "out" / "g"
    assert main(["generate", "--config", str(cfg), "--seed", "1", "--out", str(prefix)]) == 0
    summary = json.loads((tmp_path / "out" / "g.summary.json").read_text())
    edges = read_edges(f"{prefix}.edges")
    membership = read_communities(f"{prefix}.communities")
    assert len(membership) == 4096
    assert np.all(edges[:, 0] < edges[:, 1])
    hist = summary["degree_histogram"]
    assert 2 * len(edges) == sum(int(k) * v for k, v in hist.items())
    assert summary["L"] == len(np.unique(membership))
    assert summary["params"]["seed"] == 1
    assert set(summary["seconds"]) >= {"degrees", "rewiring"}
    lines = (tmp_path / "out" / "g.edges").read_text().splitlines()
    pairs = [tuple(map(int, l.split("\t"))) for l in lines]
    assert pairs == sorted(pairs)
    # community ids follow size-descending order
    sizes = np.bincount(membership)
    assert np.all(np.diff(sizes) <= 0)


def test_generate_deterministic_across_workers(tmp_path, cfg):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["generate", "--config", str(cfg), "--seed", "5", "--out", str(a)])
    main(["generate", "--config", str(cfg), "--seed", "5", "--out", str(b), "--workers", "4"])
    for ext in (".edges", ".communities"):
        assert (tmp_path / f"a{ext}").read_bytes() == (tmp_path / f"b{ext}").read_bytes()


def test_phase4_only_keeps_collisions(tmp_path, cfg):
    prefix = tmp_path / "raw"
    main(["generate", "--config", str(cfg), "--out", str(prefix), "--phase4-only"])
    summary = json.loads((tmp_path / "raw.summary.json").read_text())
    assert summary["rewired"] is False
    edges = read_edges(f"{prefix}.edges")
    assert np.any(edges[:, 0] == edges[:, 1]) or len(np.unique(edges, axis=0)) < len(edges)


def test_flags_override_config(tmp_path, cfg, capsys):
    assert main(["predict", "--config", str(cfg), "--n", "8192"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["params"]["n"] == 8192


def test_predict(cfg, capsys):
    assert main(["predict", "--config", str(cfg)]) == 0
    out = json.loads(capsys.readouterr().out)
    p = make_params(**{k: out["params"][k] for k in out["params"]})
    assert out["expectedL"] == pytest.approx(theory.expected_L(p))
    assert out["regime"]["gamma_beta_above_4"] is False
    assert 0 < out["phi"] < 1


def test_stats_round_trip(tmp_path, cfg, capsys):
    prefix = tmp_path / "g"
    main(["generate", "--config", str(cfg), "--seed", "3", "--out", str(prefix)])
    summary = json.loads((tmp_path / "g.summary.json").read_text())
    capsys.readouterr()
    assert main(["stats", f"{prefix}.edges", f"{prefix}.communities", "--config", str(cfg)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["census"] == {"loops": 0, "multi_pairs_intra": 0, "multi_pairs_inter": 0}
    assert rep["n"] == summary["n"] and rep["L"] == summary["L"]
    assert rep["degree_histogram"] == summary["degree_histogram"]
    assert all(b["predicted"] is not None for b in rep["volume_buckets"])


def test_stats_reports_bad_line(tmp_path, caplog):
    (tmp_path / "x.edges").write_text("1\t2\n2\tthree\n")
    (tmp_path / "x.communities").write_text("1\t1\n2\t1\n3\t1\n")
    assert main(["stats", str(tmp_path / "x.edges"), str(tmp_path / "x.communities")]) == 1
    assert "x.edges:2" in caplog.text


def test_read_communities_requires_all_nodes(tmp_path):
    (tmp_path / "c").write_text("1\t1\n3\t1\n")
    with pytest.raises(MalformedFileError):
        read_communities(tmp_path / "c")


def test_experiment_collisions(tmp_path, cfg, capsys):
    prefix = tmp_path / "exp"
    rc = main(["experiment", "collisions", "--config", str(cfg), "--out", str(prefix),
               "--n-list", "2048,4096", "--seeds", "2", "--no-plots"])
    assert rc == 0
    text = (tmp_path / "exp_collisions.csv").read_text()
    assert text.startswith("# params: ")
    assert '"gamma": 2.5' in text.splitlines()[0]
    assert len(json.loads(capsys.readouterr().out)) == 2


def test_experiment_ccdf_and_volumes(tmp_path, cfg):
    assert main(["experiment", "ccdf", "--config", str(cfg), "--out", str(tmp_path / "c")]) == 0
    assert (tmp_path / "c_ccdf.png").exists()
    assert main(["experiment", "volumes", "--config", str(cfg), "--out", str(tmp_path / "v")]) == 0
    assert (tmp_path / "v_volumes.csv").exists()


def test_unknown_experiment(cfg):
    with pytest.raises(SystemExit):
        main(["experiment", "bogus", "--config", str(cfg), "--out", "x"])


def test_invalid_params_exit_nonzero(cfg, caplog):
    assert main(["predict", "--config", str(cfg), "--gamma", "3.0"]) == 1
    assert "gamma out of (2,3)" in caplog.text
