"""End-to-end ABCD generation: degrees, communities, assignment, edges, rewiring."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from abcdlab.assignment import assign
from abcdlab.edgegen import CollisionCensus, MultiGraph, census, config_model, edge_keys, parity_fix, split
from abcdlab.params import Params
from abcdlab.rewire import rewire_graph
from abcdlab.sequences import CommunityPartition, gen_communities, gen_degrees, phi


class Stage(IntEnum):
    DEGREES = 1
    COMMUNITIES = 2
    ASSIGN = 3
    SPLIT = 4
    CONFIG = 5
    REWIRE = 6


def substream(seed: int, stage: Stage, j: int = 0) -> np.random.Generator:
    """Independent generator for (seed, stage, j); j = 0 is the background graph,
    j >= 1 community j."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(int(stage), j)))


@dataclass
class ABCDGraph:
    params: Params
    degrees: np.ndarray
    partition: CommunityPartition
    y: np.ndarray
    z: np.ndarray
    community_graphs: list[MultiGraph]
    background: MultiGraph
    census: CollisionCensus
    rewired: bool = False
    leftovers: int = 0
    rewire_passes: int = 0
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def L(self) -> int:
        return self.partition.L

    @property
    def phi(self) -> float:
        return phi(self.partition.sizes)

    @property
    def membership(self) -> np.ndarray:
        return self.partition.membership

    def edges(self) -> np.ndarray:
        parts = [g.edges for g in self.community_graphs] + [self.background.edges]
        return np.concatenate(parts)

    def community_edges(self) -> np.ndarray:
        if not self.community_graphs:
            return np.empty((0, 2), dtype=np.int64)
        return np.concatenate([g.edges for g in self.community_graphs])

    def summary(self) -> dict:
        sizes = self.partition.sizes
        hist = np.bincount(self.degrees)
        return {
            "params": self.params.to_dict(),
            "n": self.n,
            "L": self.L,
            "phi": self.phi,
            "community_sizes": sizes.tolist(),
            "oversized_communities": self.partition.oversized,
            "edges": int(len(self.edges())),
            "degree_histogram": {str(k): int(c) for k, c in enumerate(hist) if c},
            "census_before_rewiring": self.census.to_dict(),
            "rewired": self.rewired,
            "leftovers_to_background": self.leftovers,
            "rewire_passes": self.rewire_passes,
            "seconds": {k: round(v, 6) for k, v in self.timings.items()},
        }


def _pool_map(fn, items, workers: int) -> list:
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def build_phase4(params: Params, workers: int = 1) -> ABCDGraph:
    """Phases 1-4: the raw configuration-model multigraphs and their census."""
    seed = params.seed
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    degrees = gen_degrees(params, substream(seed, Stage.DEGREES))
    t1 = time.perf_counter()
    timings["degrees"] = t1 - t0

    partition = gen_communities(params, substream(seed, Stage.COMMUNITIES))
    t2 = time.perf_counter()
    timings["communities"] = t2 - t1

    partition.membership = assign(degrees, partition, params.xi, substream(seed, Stage.ASSIGN))
    t3 = time.perf_counter()
    timings["assignment"] = t3 - t2

    y, z = split(degrees, params.xi, substream(seed, Stage.SPLIT))
    members = partition.members()
    for nodes in members:
        parity_fix(nodes, y, z, degrees)

    def community(j: int) -> MultiGraph:
        nodes = members[j]
        return config_model(nodes, y[nodes], substream(seed, Stage.CONFIG, j + 1))

    graphs = _pool_map(community, range(partition.L), workers)
    background = config_model(np.arange(params.n), z, substream(seed, Stage.CONFIG, 0))
    before = census(graphs, background)
    t4 = time.perf_counter()
    timings["edges"] = t4 - t3

    return ABCDGraph(params, degrees, partition, y, z, graphs, background, before, timings=timings)


def rewire_all(graph: ABCDGraph, workers: int = 1) -> ABCDGraph:
    """Phase 5, in place: communities independently, then the background."""
    seed = graph.params.seed
    t0 = time.perf_counter()

    def community(j: int):
        return rewire_graph(
            graph.community_graphs[j], None, substream(seed, Stage.REWIRE, j + 1), "community"
        )

    results = _pool_map(community, range(graph.L), workers)
    graph.community_graphs = [r.graph for r in results]
    moved = [r.leftovers for r in results if len(r.leftovers)]
    passes = sum(r.passes for r in results)

    bg_edges = graph.background.edges
    forced: list[int] = []
    if moved:
        extra = np.concatenate(moved)
        forced = list(range(len(bg_edges), len(bg_edges) + len(extra)))
        bg_edges = np.concatenate([bg_edges, extra])
    background = MultiGraph(graph.background.nodes, bg_edges)
    external = np.unique(edge_keys(graph.community_edges()))
    res = rewire_graph(background, external, substream(seed, Stage.REWIRE, 0), "background", forced)
    graph.background = res.graph
    graph.leftovers = len(forced)
    graph.rewire_passes = passes + res.passes
    graph.rewired = True
    graph.timings["rewiring"] = time.perf_counter() - t0
    return graph


def generate_graph(params: Params, workers: int = 1, phase4_only: bool = False) -> ABCDGraph:
    graph = build_phase4(params, workers)
    if phase4_only:
        return graph
    return rewire_all(graph, workers)
