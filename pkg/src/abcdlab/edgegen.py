"""Half-edge split, configuration-model multigraphs and collision counting."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from abcdlab.sequences import FeasibilityError


@dataclass
class MultiGraph:
    """Edge multiset on a node set; rows of ``edges`` are (u, v) with u <= v."""

    nodes: np.ndarray
    edges: np.ndarray

    @classmethod
    def from_pairs(cls, nodes, pairs) -> MultiGraph:
        e = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        e = np.sort(e, axis=1)
        return cls(np.asarray(nodes, dtype=np.int64), e)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self, n_total: int) -> np.ndarray:
        """Degree of every node 0..n_total-1; a loop adds 2."""
        return np.bincount(self.edges.ravel(), minlength=n_total)

    def loops(self) -> int:
        return int(np.sum(self.edges[:, 0] == self.edges[:, 1]))


@dataclass
class CollisionCensus:
    S_c: int = 0
    M_c: int = 0
    S_b: int = 0
    M_b: int = 0
    M_bc: int = 0

    def to_dict(self) -> dict[str, int]:
        return asdict(self)

    def total(self) -> int:
        return self.S_c + self.M_c + self.S_b + self.M_b + self.M_bc


def split(d, xi: float, rng: np.random.Generator):
    """Random rounding of (1 - xi) * d into community half-edges Y; Z = d - Y."""
    d = np.asarray(d, dtype=np.int64)
    target = (1.0 - xi) * d
    base = np.floor(target)
    frac = target - base
    y = base.astype(np.int64) + (rng.random(d.shape) < frac)
    return y, d - y


def parity_fix(nodes, y: np.ndarray, z: np.ndarray, d: np.ndarray) -> int | None:
    """Make sum(y[nodes]) even by moving one background half-edge into the community.

    Picks the highest-degree node (smallest label on ties) that still has a
    background half-edge. Mutates ``y`` and ``z``; returns the node changed.
    """
    nodes = np.asarray(nodes)
    if int(y[nodes].sum()) % 2 == 0:
        return None
    order = nodes[np.lexsort((nodes, -d[nodes]))]
    for u in order:
        if z[u] >= 1:
            y[u] += 1
            z[u] -= 1
            return int(u)
    raise FeasibilityError("odd community half-edge sum and no node has a background half-edge")


def config_model(nodes, degrees, rng: np.random.Generator) -> MultiGraph:
    """Uniform perfect matching of half-edges: shuffle stubs, pair neighbours."""
    nodes = np.asarray(nodes, dtype=np.int64)
    degrees = np.asarray(degrees, dtype=np.int64)
    if int(degrees.sum()) % 2:
        raise ValueError("configuration model needs an even degree sum")
    stubs = np.repeat(nodes, degrees)
    rng.shuffle(stubs)
    return MultiGraph(nodes, np.sort(stubs.reshape(-1, 2), axis=1))


KEY_SHIFT = 32


def edge_keys(edges: np.ndarray) -> np.ndarray:
    """Pack canonical (u, v) rows into one int64 per edge."""
    return (edges[:, 0] << KEY_SHIFT) | edges[:, 1]


def edge_key(u: int, v: int) -> int:
    return (u << KEY_SHIFT) | v if u <= v else (v << KEY_SHIFT) | u


def _loops_and_pairs(edges: np.ndarray):
    """Loop count, and unique non-loop keys with multiplicities."""
    is_loop = edges[:, 0] == edges[:, 1]
    keys, counts = np.unique(edge_keys(edges[~is_loop]), return_counts=True)
    return int(is_loop.sum()), keys, counts


def _multi_pairs(counts: np.ndarray) -> int:
    return int(np.sum(counts * (counts - 1) // 2))


def census(community_graphs, background: MultiGraph) -> CollisionCensus:
    """Count loops, parallel-edge pairs (C(m,2) per node pair) and
    background/community coincidences."""
    if community_graphs:
        comm_edges = np.concatenate([g.edges for g in community_graphs])
    else:
        comm_edges = np.empty((0, 2), dtype=np.int64)
    # community graphs have disjoint node sets, so pooling keeps multiplicities per graph
    s_c, c_keys, c_counts = _loops_and_pairs(comm_edges)
    s_b, b_keys, b_counts = _loops_and_pairs(background.edges)
    _, ci, bi = np.intersect1d(c_keys, b_keys, assume_unique=True, return_indices=True)
    return CollisionCensus(
        S_c=s_c,
        M_c=_multi_pairs(c_counts),
        S_b=s_b,
        M_b=_multi_pairs(b_counts),
        M_bc=int(np.sum(c_counts[ci] * b_counts[bi])),
    )
