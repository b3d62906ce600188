"""Assign degrees to nodes under the community-locking rule."""

from __future__ import annotations

import numpy as np

from abcdlab.sequences import CommunityPartition, FeasibilityError, phi


class FenwickTree:
    """Prefix sums over non-negative integer weights with O(log n) sampling."""

    def __init__(self, size: int):
        self.size = size
        self.tree = [0] * (size + 1)
        self.total = 0
        top = 1
        while top * 2 <= size:
            top *= 2
        self._top = top

    def add(self, index: int, delta: int) -> None:
        self.total += delta
        i = index + 1
        tree, size = self.tree, self.size
        while i <= size:
            tree[i] += delta
            i += i & -i

    def prefix(self, index: int) -> int:
        """Sum of weights[0:index]."""
        s = 0
        i = index
        while i > 0:
            s += self.tree[i]
            i -= i & -i
        return s

    def find(self, target: int) -> int:
        """Smallest index whose inclusive prefix sum exceeds ``target``."""
        pos = 0
        step = self._top
        tree, size = self.tree, self.size
        while step:
            nxt = pos + step
            if nxt <= size and tree[nxt] <= target:
                pos = nxt
                target -= tree[nxt]
            step >>= 1
        return pos


def admissible(degree, size, xi: float, phi_value: float):
    """Whether a node of this degree may live in a community of this size."""
    return np.asarray(degree) * (1.0 - xi * phi_value) <= np.asarray(size) - 1


def lock_threshold(degree: int, xi: float, phi_value: float) -> int:
    """Smallest community size that can host ``degree``."""
    return int(np.ceil(degree * (1.0 - xi * phi_value) + 1))


def assign(
    degrees: np.ndarray,
    partition: CommunityPartition,
    xi: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Return the community index of node i (0-based, node i gets degrees[i]).

    Node-uniform choice among unassigned nodes of unlocked communities is
    realized as a community draw weighted by its unassigned count. Sizes are
    non-increasing and degrees non-increasing, so unlocked communities always
    form a growing prefix.
    """
    sizes = np.asarray(partition.sizes)
    if np.any(np.diff(sizes) > 0):
        raise ValueError("community sizes must be sorted non-increasing")
    if np.any(np.diff(degrees) > 0):
        raise ValueError("degrees must be sorted non-increasing")
    n, L = len(degrees), len(sizes)
    ph = phi(sizes)
    tree = FenwickTree(L)
    unlocked = 0
    out = np.empty(n, dtype=np.int64)
    sizes_list = sizes.tolist()
    # sizes descending, so -(size-1) ascending: count communities with size-1 >= d*factor
    neg_room = -(sizes - 1).astype(float)
    reach = np.searchsorted(neg_room, -(degrees * (1.0 - xi * ph)), side="right")
    u = rng.random(n)
    for i in range(n):
        r = int(reach[i])
        while unlocked < r:
            tree.add(unlocked, sizes_list[unlocked])
            unlocked += 1
        if tree.total == 0:
            raise FeasibilityError(
                f"no admissible node for degree {int(degrees[i])} at step {i + 1}; "
                f"largest community has size {int(sizes[0])}"
            )
        j = tree.find(int(u[i] * tree.total))
        tree.add(j, -1)
        out[i] = j
    return out
