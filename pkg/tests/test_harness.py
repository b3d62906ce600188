import pytest

from abcdlab import harness
from conftest import PAPER_CCDF, PAPER_COLLISIONS, make_params


@pytest.fixture
def p_small():
    return make_params(n=2**13, gamma=2.5, beta=1.5, seed=2, **PAPER_CCDF)


def _read(path):
    return path.read_bytes()


def _columns(path):
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    rows = [l.split(",") for l in lines[1:]]
    return {h: [r[i] for r in rows] for i, h in enumerate(header)}


def test_ccdf_files(tmp_path, p_small):
    panels = harness.exp_ccdf(p_small, tmp_path / "run")
    assert len(panels) == 3
    for tag in ("whole", "smallest", "largest"):
        text = (tmp_path / f"run_ccdf_{tag}.csv").read_text()
        assert text.startswith("# params: {")
        assert "k,empirical,theory" in text
    assert (tmp_path / "run_ccdf.png").stat().st_size > 0
    whole = panels[0]
    assert whole.sup_distance < 0.05


def test_ccdf_theory_columns_shared_across_seeds(tmp_path, p_small):
    harness.exp_ccdf(p_small, tmp_path / "a", plot=False)
    harness.exp_ccdf(p_small.replace(seed=9), tmp_path / "b", plot=False)
    a = _columns(tmp_path / "a_ccdf_whole.csv")
    b = _columns(tmp_path / "b_ccdf_whole.csv")
    assert a["theory"] == b["theory"]
    assert a["empirical"] != b["empirical"]


def test_volumes_file(tmp_path, p_small):
    buckets = harness.exp_volumes(p_small, tmp_path / "v")
    assert len(buckets) == 10
    rows = (tmp_path / "v_volumes.csv").read_text().strip().splitlines()
    assert sum(1 for r in rows if not r.startswith("#")) == 11
    assert (tmp_path / "v_volumes.png").exists()


def test_collisions_single_cell(tmp_path):
    p = make_params(n=2**12, gamma=2.9, beta=1.9, seed=0, **PAPER_COLLISIONS)
    cells, summary = harness.exp_collisions(p, [2**12], 1, tmp_path / "c", plot=False)
    assert len(cells) == 1 and len(summary) == 1
    lines = [l for l in (tmp_path / "c_collisions.csv").read_text().splitlines() if not l.startswith("#")]
    assert len(lines) == 2
    header = lines[0].split(",")
    row = dict(zip(header, lines[1].split(",")))
    assert row["S_c/L_std"] == ""


def test_collisions_byte_identical(tmp_path):
    p = make_params(n=2**12, gamma=2.5, beta=1.5, seed=0, **PAPER_COLLISIONS)
    harness.exp_collisions(p, [2**11, 2**12], 2, tmp_path / "x", plot=False)
    harness.exp_collisions(p, [2**11, 2**12], 2, tmp_path / "y", workers=2, plot=False)
    for suffix in ("_collisions.csv", "_collisions_cells.csv"):
        assert _read(tmp_path / f"x{suffix}") == _read(tmp_path / f"y{suffix}")


def test_collisions_never_rewire(monkeypatch):
    import abcdlab.pipeline as pipeline

    def boom(*a, **k):
        raise AssertionError("rewiring called")

    monkeypatch.setattr(pipeline, "rewire_all", boom)
    p = make_params(n=2**11, gamma=2.5, beta=1.5, seed=0, **PAPER_COLLISIONS)
    cells, _ = harness.exp_collisions(p, [2**11], 1, plot=False)
    assert cells[0]["S_c"] > 0


def test_collisions_require_ascending():
    p = make_params(n=2**12, gamma=2.5, beta=1.5, seed=0, **PAPER_COLLISIONS)
    with pytest.raises(ValueError):
        harness.exp_collisions(p, [2**12, 2**11], 1)
