"""Numerics for cone-weighted spaces of entire functions.

Desk-scale machinery: admissible index-function profiles, exact cone
geometry under the uniform norm, the cone weights and their norms,
plurisubharmonic envelope surrogates with certified bounds, a weighted
one-variable dbar solver, and the partition / dbar-correction pipelines
that decompose test functions across cones and approximate them by
globally normed ones.
"""

__version__ = "0.1.0"

from .cones import Cone, arc, cone_distance, cone_membership  # noqa: F401
from .profiles import CANONICAL_PROFILE, Profile, power_profile  # noqa: F401
from .weights import TestFunction, WeightSpec, rho_eval  # noqa: F401
