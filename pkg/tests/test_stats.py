import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from abcdlab.powerlaw import TruncPowerLaw
from abcdlab.stats import (
    bucket_sizes,
    bucket_volumes,
    empirical_ccdf,
    graph_report,
    sup_distance,
)


class TestEmpiricalCcdf:
    def test_constant(self):
        e = empirical_ccdf([5, 5, 5])
        assert e.support.tolist() == [5] and e.values.tolist() == [1.0]

    def test_two_values(self):
        e = empirical_ccdf([5, 6])
        assert e.values.tolist() == [1.0, 0.5]
        assert e.at(7) == 0.0 and e.at(1) == 1.0

    def test_empty(self):
        with pytest.raises(ValueError):
            empirical_ccdf([])

    @given(st.lists(st.integers(1, 30), min_size=1), st.lists(st.integers(1, 30), min_size=1))
    def test_concatenation_is_weighted_average(self, a, b):
        both = empirical_ccdf(a + b)
        k = np.arange(0, 32)
        mix = (len(a) * empirical_ccdf(a).at(k) + len(b) * empirical_ccdf(b).at(k)) / (len(a) + len(b))
        assert np.allclose(both.at(k), mix)

    @given(st.lists(st.integers(1, 30), min_size=1))
    def test_non_increasing_from_one(self, a):
        e = empirical_ccdf(a)
        assert e.values[0] == 1.0
        assert np.all(np.diff(e.values) < 0)


class TestSupDistance:
    def test_large_sample(self):
        law = TruncPowerLaw(2.5, 5, 64)
        x = law.sample(np.random.default_rng(3), 10**6)
        assert sup_distance(empirical_ccdf(x), law) <= 0.005

    def test_exact_sample(self):
        law = TruncPowerLaw(2.5, 1, 1)
        assert sup_distance(empirical_ccdf([1, 1]), law) == 0.0

    def test_different_exponents(self):
        a = TruncPowerLaw(2.1, 5, 64)
        b = TruncPowerLaw(2.9, 5, 64)
        k = a.support
        gap = np.max(np.abs(a.ccdf(k) - b.ccdf(k)))  # closed form: 0.1716 at k = 9
        assert gap == pytest.approx(0.17156, abs=1e-4)
        x = a.sample(np.random.default_rng(0), 200_000)
        assert sup_distance(empirical_ccdf(x), b) == pytest.approx(gap, abs=0.01)


class TestBuckets:
    def test_sizes(self):
        assert bucket_sizes(25) == [3, 3, 3, 3, 3, 2, 2, 2, 2, 2]
        assert bucket_sizes(10) == [1] * 10

    def test_one_per_bucket(self):
        b = bucket_volumes(np.arange(10, 0, -1), np.arange(10.0), np.ones(10))
        assert [x.communities for x in b] == [1] * 10
        assert [x.size_lo for x in b] == list(range(1, 11))

    def test_contiguous_ranges(self):
        rng = np.random.default_rng(0)
        sizes = rng.integers(50, 500, size=37)
        b = bucket_volumes(sizes, rng.random(37), rng.random(37))
        assert sum(x.communities for x in b) == 37
        for lo, hi in zip(b, b[1:]):
            assert lo.size_hi <= hi.size_lo

    def test_identical_communities(self):
        b = bucket_volumes(np.full(20, 60), np.full(20, 7.0), np.full(20, 7.5))
        assert {x.predicted for x in b} == {7.5}

    def test_too_few(self):
        with pytest.raises(ValueError):
            bucket_volumes([1] * 9, [1.0] * 9, [1.0] * 9)


def test_graph_report_intra_inter():
    edges = np.array([[0, 1], [0, 1], [2, 3], [2, 3], [1, 1]])
    membership = np.array([0, 0, 1, 2])
    r = graph_report(edges, membership)
    assert r["census"] == {"loops": 1, "multi_pairs_intra": 1, "multi_pairs_inter": 1}
    assert r["n"] == 4 and r["L"] == 3
    assert r["degree_histogram"] == {"2": 3, "4": 1}
