"""Noncommutative centralizers and their constants."""

from nclp.domain.centralizers.commutant import commutant_correction
from nclp.domain.centralizers.constants import (
    ConstantEstimate,
    estimate_C,
    estimate_C_trace,
    estimate_Q,
    estimate_Q_trace,
)
from nclp.domain.centralizers.nc_centralizer import (
    NCCentralizer,
    NCKind,
    kp_lipschitz,
    lift_centralizer,
    omega_p,
    phi_pm,
)
from nclp.domain.centralizers.scalar_functions import LipschitzFunction

__all__ = [
    "commutant_correction",
    "ConstantEstimate",
    "estimate_C",
    "estimate_C_trace",
    "estimate_Q",
    "estimate_Q_trace",
    "NCCentralizer",
    "NCKind",
    "kp_lipschitz",
    "lift_centralizer",
    "omega_p",
    "phi_pm",
    "LipschitzFunction",
]
