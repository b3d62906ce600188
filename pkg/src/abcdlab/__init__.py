"""Generator and verification laboratory for ABCD community benchmark graphs."""

from abcdlab.params import Params, ParamError, InfeasibleConfigError, validate
from abcdlab.powerlaw import TruncPowerLaw
from abcdlab.pipeline import ABCDGraph, generate_graph

__all__ = [
    "ABCDGraph",
    "InfeasibleConfigError",
    "ParamError",
    "Params",
    "TruncPowerLaw",
    "generate_graph",
    "validate",
]

__version__ = "0.1.0"
