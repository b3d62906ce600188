"""Degree sequence and community-size sequence generation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from abcdlab.params import Params
from abcdlab.powerlaw import TruncPowerLaw

_COMMUNITY_BATCH = 256


class FeasibilityError(RuntimeError):
    pass


def _sort_desc(values: np.ndarray) -> np.ndarray:
    # stable so equal draws keep draw order
    order = np.argsort(-values, kind="stable")
    return values[order]


def gen_degrees(params: Params, rng: np.random.Generator) -> np.ndarray:
    """n i.i.d. degrees from P(gamma, delta, floor(n^zeta)), sorted non-increasing, even sum."""
    law = TruncPowerLaw(params.gamma, params.delta, params.max_degree)
    d = _sort_desc(law.sample(rng, params.n))
    if d.sum() % 2 == 1:
        d[0] -= 1
        d = _sort_desc(d)
    return d


@dataclass
class CommunityPartition:
    """Community sizes (non-increasing) and, once assigned, node membership."""

    sizes: np.ndarray
    membership: np.ndarray | None = None
    # communities pushed past floor(n^tau) by the deficit repair
    oversized: int = 0
    deleted_last: bool = field(default=False)

    @property
    def L(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return int(self.sizes.sum())

    def members(self) -> list[np.ndarray]:
        if self.membership is None:
            raise ValueError("membership not assigned yet")
        order = np.argsort(self.membership, kind="stable")
        bounds = np.cumsum(self.sizes)[:-1]
        return np.split(order, bounds)


def phi(sizes) -> float:
    sizes = np.asarray(sizes, dtype=float)
    n = sizes.sum()
    return float(1.0 - np.sum(sizes**2) / n**2)


def settle_sizes(
    draws, n: int, s: int, rng: np.random.Generator, max_size: int | None = None
) -> CommunityPartition:
    """Turn raw draws whose total first reaches >= n into sizes summing to n.

    With overshoot k and last draw c: if c >= k + s the last community shrinks
    by k; otherwise it is dropped and c - k distinct earlier communities each
    grow by one (evenly spread if there are fewer than c - k of them).
    """
    sizes = np.array(draws, dtype=np.int64)
    total = int(sizes.sum())
    if total < n or (len(sizes) > 1 and int(sizes[:-1].sum()) >= n):
        raise ValueError("draws must first reach n at the final element")
    k = total - n
    deleted = False
    if k > 0:
        c = int(sizes[-1])
        if c >= k + s:
            sizes[-1] -= k
        else:
            sizes = sizes[:-1]
            deficit = c - k
            if not len(sizes):
                raise FeasibilityError("no earlier community to absorb the deficit")
            # fewer communities than the deficit: spread it as evenly as possible
            rounds, rest = divmod(deficit, len(sizes))
            sizes += rounds
            picks = rng.choice(len(sizes), size=rest, replace=False)
            sizes[picks] += 1
            deleted = True
    oversized = 0 if max_size is None else int(np.sum(sizes > max_size))
    return CommunityPartition(_sort_desc(sizes), oversized=oversized, deleted_last=deleted)


def gen_communities(params: Params, rng: np.random.Generator) -> CommunityPartition:
    law = TruncPowerLaw(params.beta, params.s, params.max_comm_size)
    chunks: list[np.ndarray] = []
    total = 0
    while total < params.n:
        batch = law.sample(rng, _COMMUNITY_BATCH)
        csum = total + np.cumsum(batch)
        hit = np.searchsorted(csum, params.n, side="left")
        if hit < len(batch):
            chunks.append(batch[: hit + 1])
            total = int(csum[hit])
        else:
            chunks.append(batch)
            total = int(csum[-1])
    draws = np.concatenate(chunks)
    return settle_sizes(draws, params.n, params.s, rng, params.max_comm_size)
