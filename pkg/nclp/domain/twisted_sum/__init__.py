"""Twisted sums: quasi-norms, witnesses and duality."""

from nclp.domain.twisted_sum.duality import (
    DualityBound,
    InequalityResult,
    duality_pairing,
    elementary_inequality_check,
    inequality_ratio,
    sigma_elementary_duality_bound,
)
from nclp.domain.twisted_sum.twisted_pair import (
    TwistedPair,
    module_action,
    module_bound,
    quasi_norm,
)
from nclp.domain.twisted_sum.witness import Witness, nontriviality_witness, witness_weights

__all__ = [
    "DualityBound",
    "InequalityResult",
    "duality_pairing",
    "elementary_inequality_check",
    "inequality_ratio",
    "sigma_elementary_duality_bound",
    "TwistedPair",
    "module_action",
    "module_bound",
    "quasi_norm",
    "Witness",
    "nontriviality_witness",
    "witness_weights",
]
