"""Closed-form predictions for community counts, community degree laws,
volumes and configuration-model collision counts.

Asymptotic statements are exposed at leading order; any O(.) or o(1)
slack is left to the caller's tolerance.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from abcdlab.params import Params
from abcdlab.powerlaw import TruncPowerLaw


def delta_z(z: int, params: Params, phi: float) -> float:
    """Effective maximum degree min{(z-1)/(1-xi*phi), n^zeta} in a size-z community."""
    return min((z - 1) / (1.0 - params.xi * phi), params.n**params.zeta)


def delta_z_floor(z: int, params: Params, phi: float) -> int:
    # tolerate pow() rounding just below an integer, never exceed the degree cap
    return min(math.floor(delta_z(z, params, phi) + 1e-9), params.max_degree)


def community_law(z: int, params: Params, phi: float) -> TruncPowerLaw:
    return TruncPowerLaw(params.gamma, params.delta, max(params.delta, delta_z_floor(z, params, phi)))


def epsilon(params: Params) -> float:
    return params.n ** (-(params.tau - params.zeta) * (2.0 - params.beta) / 2.0)


@dataclass
class BoundLaws:
    support: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    epsilon: float

    def lower_ccdf(self) -> np.ndarray:
        return np.cumsum(self.lower[::-1])[::-1]

    def upper_ccdf(self) -> np.ndarray:
        return np.cumsum(self.upper[::-1])[::-1]


def bound_laws(z: int, params: Params, phi: float, eps: float | None = None) -> BoundLaws:
    """Stochastic lower and upper laws for the degrees of a size-z community.

    The upper law removes a fraction ``eps`` of the mass at delta and
    renormalizes.
    """
    law = community_law(z, params, phi)
    eps = epsilon(params) if eps is None else eps
    k = law.support
    w = law.probs * law._norm  # unnormalized antiderivative differences
    wu = w.copy()
    wu[0] *= 1.0 - eps
    return BoundLaws(k, law.probs.copy(), wu / wu.sum(), eps)


def c_hat(params: Params) -> float:
    b = params.beta
    return (2.0 - b) / ((b - 1.0) * params.s ** (b - 1.0))


def expected_L(params: Params) -> float:
    return c_hat(params) * params.n ** (1.0 - params.tau * (2.0 - params.beta))


def expected_volume(z: int, params: Params, phi: float) -> float:
    """Leading-order expected average degree in a community of size z."""
    return community_law(z, params, phi).moment(1)


def cm_expected_loops(q: Sequence[int], exact: bool = False):
    """Exact expected loop count of the configuration model on degrees ``q``."""
    q = [int(x) for x in q]
    total = sum(q)
    if not q or total < 2:
        raise ValueError("need a non-empty degree list with sum >= 2")
    num = sum(x * (x - 1) for x in q)
    if exact:
        return Fraction(num, 2 * (total - 1))
    return num / (2.0 * (total - 1))


def cm_expected_multi_upper(q: Sequence[int], exact: bool = False):
    """First upper bound on the expected number of parallel-edge pairs."""
    q = [int(x) for x in q]
    total = sum(q)
    if total <= 3:
        raise ValueError("multi-edge bound needs degree sum >= 4")
    a = [x * (x - 1) for x in q]
    s1 = sum(a)
    pair_sum = (s1 * s1 - sum(x * x for x in a)) // 2
    den = 2 * (total - 1) * (total - 3)
    if exact:
        return Fraction(pair_sum, den)
    return pair_sum / den


def lemma_constant(gamma: float, delta: int) -> float:
    return (gamma - 1.0) * delta ** (gamma - 2.0) / (2.0 * (3.0 - gamma))


def lemma_bounds(gamma: float, delta: int, Delta: float) -> tuple[float, float]:
    """Leading-order bounds (c*Delta^(3-gamma), c^2*Delta^(6-2gamma)) on expected
    loops and multi-edges of a configuration model with i.i.d. P(gamma, delta, Delta) degrees."""
    if not 2 < gamma < 3:
        raise ValueError("lemma bounds need 2 < gamma < 3")
    c = lemma_constant(gamma, delta)
    return c * Delta ** (3.0 - gamma), c * c * Delta ** (6.0 - 2.0 * gamma)


@dataclass
class Regime:
    gamma_beta_above_4: bool
    background_bounded: bool
    exp_S_c: float
    exp_M_c: float
    exp_S_b: float
    exp_M_b: float
    exp_L: float


def collision_regime(params: Params) -> Regime:
    """Regime flags and predicted growth exponents (in n) of collision counts."""
    g, b, zt, t = params.gamma, params.beta, params.zeta, params.tau
    exp_L = 1.0 - t * (2.0 - b)
    return Regime(
        gamma_beta_above_4=g + b > 4,
        background_bounded=2 * zt * (3 - g) + t * (2 - b) <= 1,
        exp_S_c=exp_L + max(0.0, zt * (4 - g - b)),
        exp_M_c=exp_L + max(0.0, zt * (7 - 2 * g - b)),
        exp_S_b=zt * (3 - g),
        exp_M_b=zt * (6 - 2 * g),
        exp_L=exp_L,
    )


@dataclass
class Predictions:
    phi: float
    deltaZ: dict[int, float]
    cHat: float
    expectedL: float
    expectedVolumePerNode: float
    epsilon: float
    regime: dict
    cmLoopMean: float
    cmMultiUpper: float
    lemmaLoopBound: float
    lemmaMultiBound: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["deltaZ"] = {str(k): v for k, v in self.deltaZ.items()}
        return d


def predict(params: Params, phi: float, degrees: np.ndarray | None = None) -> Predictions:
    """All predictions for one parameter set.

    ``phi`` comes from a realized community partition. The configuration-model
    entries use expected background degrees xi*d of ``degrees`` when given.
    """
    Delta = params.n**params.zeta
    deg_law = TruncPowerLaw(params.gamma, params.delta, params.max_degree)
    zs = sorted({params.s, params.max_comm_size})
    cm_loop = cm_multi = float("nan")
    if degrees is not None:
        q = params.xi * np.asarray(degrees, dtype=float)
        tot = q.sum()
        a = q * (q - 1)
        cm_loop = float(a.sum() / (2 * (tot - 1)))
        cm_multi = float((a.sum() ** 2 - np.sum(a * a)) / 2 / (2 * (tot - 1) * (tot - 3)))
    loop_b, multi_b = lemma_bounds(params.gamma, params.delta, Delta)
    return Predictions(
        phi=phi,
        deltaZ={z: delta_z(z, params, phi) for z in zs},
        cHat=c_hat(params),
        expectedL=expected_L(params),
        expectedVolumePerNode=deg_law.moment(1),
        epsilon=epsilon(params),
        regime=asdict(collision_regime(params)),
        cmLoopMean=cm_loop,
        cmMultiUpper=cm_multi,
        lemmaLoopBound=loop_b,
        lemmaMultiBound=multi_b,
    )
