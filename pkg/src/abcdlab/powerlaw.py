"""Discrete truncated power law P(gamma, lo, hi).

Mass at integer k is proportional to the integral of x**-gamma over [k, k+1),
so every quantity below is a ratio of differences of the antiderivative
x**(1-gamma).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class TruncPowerLaw:
    gamma: float
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        # gamma == 1 needs a log antiderivative; no valid model parameter reaches it
        assert self.gamma != 1.0, "gamma == 1 is not supported"
        if self.lo < 1 or self.hi < self.lo:
            raise ValueError(f"need 1 <= lo <= hi, got lo={self.lo}, hi={self.hi}")

    def _anti(self, x):
        return np.power(np.asarray(x, dtype=float), 1.0 - self.gamma)

    @cached_property
    def _norm(self) -> float:
        return float(self._anti(self.lo) - self._anti(self.hi + 1))

    @cached_property
    def support(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    @cached_property
    def probs(self) -> np.ndarray:
        """pmf over ``support``."""
        k = self.support
        return (self._anti(k) - self._anti(k + 1)) / self._norm

    def pmf(self, k):
        k = np.asarray(k)
        inside = (k >= self.lo) & (k <= self.hi)
        kk = np.where(inside, k, self.lo)
        out = np.where(inside, (self._anti(kk) - self._anti(kk + 1)) / self._norm, 0.0)
        return float(out) if out.ndim == 0 else out

    def ccdf(self, k):
        """P(X >= k) for lo <= k <= hi."""
        k = np.asarray(k)
        if np.any((k < self.lo) | (k > self.hi)):
            raise ValueError(f"ccdf argument outside support [{self.lo}, {self.hi}]")
        out = (self._anti(k) - self._anti(self.hi + 1)) / self._norm
        return float(out) if out.ndim == 0 else out

    def moment(self, ell: int) -> float:
        """Exact E[X**ell] as a finite sum over the support."""
        return float(np.sum(self.support.astype(float) ** ell * self.probs))

    def integral_moment(self, ell: int) -> float:
        """Continuous analogue: int x^(ell-gamma) / int x^(-gamma) over [lo, hi+1]."""
        a, b = float(self.lo), float(self.hi + 1)
        p = ell + 1.0 - self.gamma
        num = (b**p - a**p) / p if p != 0 else np.log(b / a)
        return float(num * (self.gamma - 1.0) / self._norm)

    def conditioned(self, lo: int, hi: int) -> np.ndarray:
        """pmf of this law restricted to [lo, hi] and renormalized."""
        if not self.lo <= lo <= hi <= self.hi:
            raise ValueError("conditioning window must lie inside the support")
        p = self.probs[lo - self.lo : hi - self.lo + 1]
        return p / p.sum()

    def sample(self, rng: np.random.Generator, size=None):
        """Inverse-transform draw(s).

        The continuous variable with density proportional to x**-gamma on
        [lo, hi+1) floors to exactly this pmf.
        """
        u = rng.random(size)
        return self.from_uniform(u)

    def from_uniform(self, u):
        a = 1.0 - self.gamma
        top = self._anti(self.lo)
        y = np.power(top - np.asarray(u) * self._norm, 1.0 / a)
        k = np.clip(np.floor(y), self.lo, self.hi).astype(np.int64)
        return int(k) if k.ndim == 0 else k
