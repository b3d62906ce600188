"""Model parameters and their validation."""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from typing import Any, Mapping

FIELDS = ("n", "gamma", "delta", "zeta", "beta", "s", "tau", "xi")
_INT_FIELDS = {"n", "delta", "s", "seed"}

# guards floor(n**x) against pow() landing just under an exact integer
_FLOOR_EPS = 1e-9


class ParamError(ValueError):
    """A parameter lies outside its admissible range."""


class InfeasibleConfigError(ParamError):
    """Parameters are individually valid but cannot produce a graph."""


class ParamWarning(UserWarning):
    pass


def ifloor_pow(n: int, exponent: float) -> int:
    return math.floor(n**exponent + _FLOOR_EPS)


@dataclass(frozen=True)
class Params:
    n: int
    gamma: float
    delta: int
    zeta: float
    beta: float
    s: int
    tau: float
    xi: float
    seed: int = 0

    @property
    def max_degree(self) -> int:
        return ifloor_pow(self.n, self.zeta)

    @property
    def max_comm_size(self) -> int:
        return ifloor_pow(self.n, self.tau)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def replace(self, **changes: Any) -> Params:
        raw = self.to_dict()
        raw.update(changes)
        return validate(raw)


def _coerce(name: str, value: Any) -> int | float:
    if name in _INT_FIELDS:
        if isinstance(value, int):
            return value
        try:
            return int(str(value).strip())
        except ValueError:
            pass
        as_float = float(value)
        if not as_float.is_integer():
            raise ParamError(f"{name} must be an integer, got {value!r}")
        return int(as_float)
    return float(value)


def validate(raw: Mapping[str, Any]) -> Params:
    """Build a :class:`Params` from a mapping, enforcing every range constraint.

    Raises :class:`ParamError` naming the violated constraint, or
    :class:`InfeasibleConfigError` when the derived maximum degree or maximum
    community size falls below its minimum.
    """
    missing = [f for f in FIELDS if f not in raw]
    if missing:
        raise ParamError(f"missing parameters: {', '.join(missing)}")
    unknown = set(raw) - set(FIELDS) - {"seed"}
    if unknown:
        raise ParamError(f"unknown parameters: {', '.join(sorted(unknown))}")

    v = {f: _coerce(f, raw[f]) for f in FIELDS}
    seed = _coerce("seed", raw.get("seed", 0))

    n, gamma, delta = v["n"], v["gamma"], v["delta"]
    zeta, beta, s, tau, xi = v["zeta"], v["beta"], v["s"], v["tau"], v["xi"]

    if n < 1:
        raise ParamError("n must be a positive integer")
    if not 2 < gamma < 3:
        raise ParamError("gamma out of (2,3)")
    if delta < 1:
        raise ParamError("delta must be >= 1")
    if not zeta > 0:
        raise ParamError("zeta must be > 0")
    if zeta > 1 / (gamma - 1):
        # the published experiments themselves run zeta=0.6 with gamma=2.9
        warnings.warn(
            f"zeta={zeta} exceeds 1/(gamma-1)={1 / (gamma - 1):.4f}",
            ParamWarning,
            stacklevel=2,
        )
    if not 1 < beta < 2:
        raise ParamError("beta out of (1,2)")
    if s <= delta:
        raise ParamError("s must exceed delta")
    if not zeta < tau < 1:
        raise ParamError("tau out of (zeta,1)")
    if not 0 < xi < 1:
        raise ParamError("xi out of (0,1)")
    if not 0 <= seed < 2**64:
        raise ParamError("seed must be an unsigned 64-bit integer")

    if ifloor_pow(n, zeta) < delta:
        raise InfeasibleConfigError(
            f"floor(n^zeta) = {ifloor_pow(n, zeta)} < delta = {delta}"
        )
    if ifloor_pow(n, tau) < s:
        raise InfeasibleConfigError(
            f"floor(n^tau) = {ifloor_pow(n, tau)} < s = {s}"
        )
    return Params(n, gamma, delta, zeta, beta, s, tau, xi, seed)


def parse_config(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParamError(f"config line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ParamError(f"config line {lineno}: empty key")
        out[key] = value
    return out
