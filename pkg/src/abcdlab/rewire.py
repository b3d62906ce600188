"""Rewiring of loops and multi-edges into a simple graph."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from abcdlab.edgegen import CollisionCensus, MultiGraph, edge_key, edge_keys

BACKGROUND_RETRIES = 100


class RewireStall(RuntimeError):
    """A rewiring pass cannot run: fewer than two edges but collisions remain."""


class NonSimpleOutputError(RuntimeError):
    def __init__(self, message: str, residual: CollisionCensus):
        super().__init__(message)
        self.residual = residual


def _as_key_array(external) -> np.ndarray:
    if external is None:
        return np.empty(0, dtype=np.int64)
    if isinstance(external, MultiGraph):
        return np.unique(edge_keys(external.edges))
    return np.unique(np.fromiter(external, dtype=np.int64))


def _recycle_indices(edges: np.ndarray, ext_keys: np.ndarray) -> list[int]:
    if len(edges) == 0:
        return []
    keys = edge_keys(edges)
    _, inverse, counts = np.unique(keys, return_inverse=True, return_counts=True)
    bad = (edges[:, 0] == edges[:, 1]) | (counts[inverse] > 1)
    if len(ext_keys):
        bad |= np.isin(keys, ext_keys)
    return np.flatnonzero(bad).tolist()


def build_recycle(g: MultiGraph, external=None) -> list[int]:
    """Indices (into ``g.edges``) of every loop, every member of a parallel
    class, and every edge whose pair also appears in ``external``.

    ``external`` may be a MultiGraph or an iterable of packed edge keys.
    """
    return _recycle_indices(g.edges, _as_key_array(external))


class _Work:
    """Mutable edge list plus multiplicity counter for one graph."""

    def __init__(self, g: MultiGraph, external):
        self.nodes = g.nodes
        self.edges: list[tuple[int, int]] = [tuple(e) for e in g.edges.tolist()]
        self.count = Counter(edge_key(u, v) for u, v in self.edges)
        self.ext_keys = _as_key_array(external)
        self.ext = set(self.ext_keys.tolist())

    def graph(self) -> MultiGraph:
        return MultiGraph(self.nodes, np.array(self.edges, dtype=np.int64).reshape(-1, 2))

    def recycle(self) -> list[int]:
        return _recycle_indices(np.array(self.edges, dtype=np.int64).reshape(-1, 2), self.ext_keys)

    def run_pass(self, recycle: list[int], rng: np.random.Generator) -> int:
        m = len(self.edges)
        if recycle and m < 2:
            raise RewireStall("fewer than two edges left to rewire against")
        edges, count, ext = self.edges, self.count, self.ext
        order = rng.permutation(np.asarray(recycle, dtype=np.int64)).tolist()
        snapshot = {i: edges[i] for i in order}
        partners = rng.integers(0, m - 1, size=len(order)).tolist()
        coins = (rng.random(len(order)) < 0.5).tolist()
        accepted = 0
        for idx, j, coin in zip(order, partners, coins):
            if edges[idx] != snapshot[idx]:
                continue
            if j >= idx:
                j += 1
            a, b = edges[idx]
            c, d = edges[j]
            if coin:
                p, q = (a, c), (b, d)
            else:
                p, q = (a, d), (b, c)
            if p[0] == p[1] or q[0] == q[1]:
                continue
            kp, kq = edge_key(*p), edge_key(*q)
            if kp == kq:
                continue
            ke, kf = edge_key(a, b), edge_key(c, d)
            if count[kp] - (kp == ke) - (kp == kf) > 0:
                continue
            if count[kq] - (kq == ke) - (kq == kf) > 0:
                continue
            if kp in ext or kq in ext:
                continue
            count[ke] -= 1
            count[kf] -= 1
            count[kp] += 1
            count[kq] += 1
            edges[idx] = (min(p), max(p))
            edges[j] = (min(q), max(q))
            accepted += 1
        return accepted


def rewire_pass(
    g: MultiGraph, recycle: list[int], external, rng: np.random.Generator
) -> tuple[MultiGraph, list[int]]:
    """One shuffled sweep over ``recycle``; returns the new graph and its fresh recycle list."""
    if not recycle:
        return g, []
    work = _Work(g, external)
    work.run_pass(recycle, rng)
    return work.graph(), work.recycle()


@dataclass
class RewireResult:
    graph: MultiGraph
    leftovers: np.ndarray = field(default_factory=lambda: np.empty((0, 2), dtype=np.int64))
    passes: int = 0
    stalled: bool = False


def _residual(work: _Work, recycle: list[int]) -> CollisionCensus:
    edges = np.array(work.edges, dtype=np.int64).reshape(-1, 2)
    loops = int(np.sum(edges[:, 0] == edges[:, 1]))
    keys = edge_keys(edges[edges[:, 0] != edges[:, 1]])
    _, counts = np.unique(keys, return_counts=True)
    m_bc = int(np.sum(np.isin(keys, work.ext_keys))) if len(work.ext_keys) else 0
    return CollisionCensus(S_b=loops, M_b=int(np.sum(counts * (counts - 1) // 2)), M_bc=m_bc)


def rewire_graph(
    g: MultiGraph,
    external,
    rng: np.random.Generator,
    mode: str = "community",
    forced: list[int] | None = None,
    max_retries: int = BACKGROUND_RETRIES,
) -> RewireResult:
    """Rewire until simple.

    Passes repeat while the recycle list strictly shrinks. On a stall,
    community mode strips the remaining bad edges and hands them back as
    leftovers; background mode tries ``max_retries`` more passes and then
    raises :class:`NonSimpleOutputError`. ``forced`` edge indices join the
    first recycle list regardless of their status.
    """
    if mode not in ("community", "background"):
        raise ValueError(f"unknown mode {mode!r}")
    work = _Work(g, external)
    recycle = work.recycle()
    if forced:
        recycle = sorted(set(recycle) | set(int(i) for i in forced))
    result = RewireResult(g)
    while recycle:
        try:
            work.run_pass(recycle, rng)
        except RewireStall:
            fresh = recycle
        else:
            result.passes += 1
            fresh = work.recycle()
        if len(fresh) < len(recycle):
            recycle = fresh
            continue
        recycle = fresh
        result.stalled = True
        break

    if recycle and mode == "community":
        bad = np.zeros(len(work.edges), dtype=bool)
        bad[recycle] = True
        edges = np.array(work.edges, dtype=np.int64).reshape(-1, 2)
        result.leftovers = edges[bad]
        result.graph = MultiGraph(work.nodes, edges[~bad])
        return result

    if recycle:
        for _ in range(max_retries):
            try:
                work.run_pass(recycle, rng)
            except RewireStall:
                break
            result.passes += 1
            recycle = work.recycle()
            if not recycle:
                break
        if recycle:
            raise NonSimpleOutputError(
                f"background graph still has {len(recycle)} colliding edges "
                f"after {max_retries} extra passes",
                _residual(work, recycle),
            )
    result.graph = work.graph()
    return result
