"""Exact combinatorics of isoresidual fibers of two-zero strata on the sphere.

Submodules: ``core`` (strata, residue forms), ``counting`` (fiber degree and
residueless counts), ``boundary`` (singularity profile), ``fiber`` (global
invariants), ``chambers`` (walls of the pattern space), ``realgraphs``
(decorated graphs of real fibers) and ``cli``.
"""

from .core import (
    DegreeMismatch,
    IndexOutOfRange,
    NonPositiveOrder,
    ResidueForm,
    ResourceLimit,
    Stratum,
    StratumError,
    WrongZeroCount,
    canonicalize,
    parse_stratum,
    validate,
)
from .counting import XiQuery, f, xi, xi_closed, xi_oracle, xi_recursion_rhs
from .boundary import profile
from .fiber import FiberProfile, euler_characteristic, num_components

__version__ = "0.1.0"

__all__ = [
    "DegreeMismatch", "IndexOutOfRange", "NonPositiveOrder", "ResidueForm", "ResourceLimit",
    "Stratum", "StratumError", "WrongZeroCount", "canonicalize", "parse_stratum", "validate",
    "XiQuery", "f", "xi", "xi_closed", "xi_oracle", "xi_recursion_rhs",
    "profile", "FiberProfile", "euler_characteristic", "num_components", "__version__",
]
