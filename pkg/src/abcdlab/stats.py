"""Empirical summaries: degree ccdfs, distances to a law, bucketed community volumes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from abcdlab.powerlaw import TruncPowerLaw


@dataclass
class EmpiricalCcdf:
    support: np.ndarray
    values: np.ndarray
    sample: np.ndarray  # sorted ascending

    def at(self, k):
        """Fraction of observations >= k, for any integer k."""
        k = np.asarray(k)
        n = len(self.sample)
        out = (n - np.searchsorted(self.sample, k, side="left")) / n
        return float(out) if out.ndim == 0 else out


def empirical_ccdf(degrees) -> EmpiricalCcdf:
    x = np.sort(np.asarray(degrees, dtype=np.int64))
    if len(x) == 0:
        raise ValueError("empirical ccdf of an empty sample")
    support = np.unique(x)
    values = (len(x) - np.searchsorted(x, support, side="left")) / len(x)
    return EmpiricalCcdf(support, values, x)


def ccdf_gap(emp: EmpiricalCcdf, law: TruncPowerLaw) -> np.ndarray:
    """empirical minus theoretical ccdf at every k in the law's support."""
    k = law.support
    return emp.at(k) - law.ccdf(k)


def sup_distance(emp: EmpiricalCcdf, law: TruncPowerLaw) -> float:
    return float(np.max(np.abs(ccdf_gap(emp, law))))


def bucket_sizes(count: int, buckets: int = 10) -> list[int]:
    """Split ``count`` items into ``buckets`` near-equal groups; extras go first."""
    base, extra = divmod(count, buckets)
    return [base + (1 if i < extra else 0) for i in range(buckets)]


@dataclass
class Bucket:
    index: int
    communities: int
    size_lo: int
    size_hi: int
    mean_degree: float
    std_degree: float
    predicted: float


def bucket_volumes(sizes, mean_degrees, predicted, buckets: int = 10) -> list[Bucket]:
    """Sort communities by size ascending, cut into near-equal contiguous buckets,
    and summarize each bucket's community average degrees and predictions."""
    sizes = np.asarray(sizes)
    if len(sizes) < buckets:
        raise ValueError(f"need at least {buckets} communities, got {len(sizes)}")
    mean_degrees = np.asarray(mean_degrees, dtype=float)
    predicted = np.asarray(predicted, dtype=float)
    order = np.argsort(sizes, kind="stable")
    out = []
    start = 0
    for i, cnt in enumerate(bucket_sizes(len(sizes), buckets)):
        idx = order[start : start + cnt]
        start += cnt
        md = mean_degrees[idx]
        out.append(
            Bucket(
                index=i + 1,
                communities=cnt,
                size_lo=int(sizes[idx].min()),
                size_hi=int(sizes[idx].max()),
                mean_degree=float(md.mean()),
                std_degree=float(md.std()),
                predicted=float(predicted[idx].mean()),
            )
        )
    return out


def graph_report(edges: np.ndarray, membership: np.ndarray, predicted_by_size=None) -> dict:
    """Summary of an edge list plus community labels (0-based arrays).

    Without a phase record, background and community edges cannot be told
    apart; collisions are split into intra- and inter-community instead.
    """
    from abcdlab.edgegen import edge_keys

    n = len(membership)
    labels, sizes = np.unique(membership, return_counts=True)
    deg = np.bincount(edges.ravel(), minlength=n) if len(edges) else np.zeros(n, dtype=np.int64)
    is_loop = edges[:, 0] == edges[:, 1]
    intra = membership[edges[:, 0]] == membership[edges[:, 1]]

    def pairs(mask):
        _, counts = np.unique(edge_keys(edges[mask & ~is_loop]), return_counts=True)
        return int(np.sum(counts * (counts - 1) // 2))

    emp = empirical_ccdf(deg)
    report = {
        "n": int(n),
        "L": int(len(labels)),
        "edges": int(len(edges)),
        "degree_histogram": {str(k): int(c) for k, c in enumerate(np.bincount(deg)) if c},
        "ccdf": {"k": emp.support.tolist(), "ccdf": emp.values.tolist()},
        "census": {
            "loops": int(is_loop.sum()),
            "multi_pairs_intra": pairs(intra),
            "multi_pairs_inter": pairs(~intra),
        },
        "intra_edge_fraction": float(intra.mean()) if len(edges) else 0.0,
    }
    if len(labels) >= 10:
        index = np.searchsorted(labels, membership)
        mean_deg = np.bincount(index, weights=deg, minlength=len(labels)) / sizes
        pred = (
            [predicted_by_size(int(z)) for z in sizes]
            if predicted_by_size is not None
            else np.full(len(sizes), np.nan)
        )
        report["volume_buckets"] = [
            {k: (None if isinstance(v, float) and np.isnan(v) else v) for k, v in b.__dict__.items()}
            for b in bucket_volumes(sizes, mean_deg, pred)
        ]
    return report
