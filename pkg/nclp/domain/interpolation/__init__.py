"""Complex interpolation on the strip and Kosaki L^p."""

from nclp.domain.interpolation.change_of_state import change_of_state, cocycle
from nclp.domain.interpolation.couples import (
    BoundaryNorm,
    CoupleKind,
    DerivativeBound,
    InterpolationCouple,
    boundary_norm,
    calderon_norm_search,
    derivative_bound_check,
    rw_pair,
)
from nclp.domain.interpolation.kosaki import (
    StateDensity,
    beta,
    fan_defect,
    kosaki_derivation_left,
    kosaki_derivation_right,
    kosaki_duality_pairing,
    kosaki_extremal,
    kosaki_norm,
)
from nclp.domain.interpolation.strip import (
    ConformalMultiple,
    StripFunction,
    conformal_derivative,
    conformal_factor,
    power_function,
    random_kernel_function,
)

__all__ = [
    "change_of_state",
    "cocycle",
    "BoundaryNorm",
    "CoupleKind",
    "DerivativeBound",
    "InterpolationCouple",
    "boundary_norm",
    "calderon_norm_search",
    "derivative_bound_check",
    "rw_pair",
    "StateDensity",
    "beta",
    "fan_defect",
    "kosaki_derivation_left",
    "kosaki_derivation_right",
    "kosaki_duality_pairing",
    "kosaki_extremal",
    "kosaki_norm",
    "ConformalMultiple",
    "StripFunction",
    "conformal_derivative",
    "conformal_factor",
    "power_function",
    "random_kernel_function",
]
