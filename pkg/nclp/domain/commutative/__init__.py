"""Commutative L^p model on step functions."""

from nclp.domain.commutative.centralizers import (
    CommCentralizer,
    CommKind,
    LogRankExpression,
    TwoVariableExpression,
    TwoVariableFunction,
    atom_average,
    kalton_peck,
    kp_two_variable,
    laziness_project,
    phi_sign,
    real_decomposition,
    symmetry_defect,
)
from nclp.domain.commutative.step_function import (
    RankPiece,
    StepFunction,
    level_sets,
    rank_function,
    rearrangement,
)

__all__ = [
    "CommCentralizer",
    "CommKind",
    "LogRankExpression",
    "TwoVariableExpression",
    "TwoVariableFunction",
    "atom_average",
    "kalton_peck",
    "kp_two_variable",
    "laziness_project",
    "phi_sign",
    "real_decomposition",
    "symmetry_defect",
    "RankPiece",
    "StepFunction",
    "level_sets",
    "rank_function",
    "rearrangement",
]
