"""
witness.py
Nontriviality witnesses for the Kalton-Peck centralizer: on a diagonal
algebra with projection traces w_i, the distance of Omega_p from the best
diagonal linear morphism is exactly log n on f = sum (n w_i)^(-1/p) e_i.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from nclp.app.exceptions import ConfigError, PreconditionError
from nclp.domain.algebra.algebra import Algebra, Element
from nclp.domain.algebra.spectral import lp_norm
from nclp.domain.centralizers.nc_centralizer import omega_p


@dataclass(frozen=True)
class Witness:
    f: Element
    ratio: float

    @property
    def n(self) -> int:
        return self.f.algebra.total_dim

    @property
    def expected(self) -> float:
        return math.log(self.n)


def nontriviality_witness(weights: Sequence[float], p: float) -> Witness:
    n = len(weights)
    if n == 0:
        raise PreconditionError("a witness needs at least one projection", "n >= 1")
    if not (1 < p < math.inf):
        raise PreconditionError(f"p must lie in (1, inf), got {p}", "p in (1, inf)")
    algebra = Algebra.diagonal(weights)
    w = np.asarray(weights, dtype=float)
    f = algebra.diag((n * w) ** (-1.0 / p))
    # optimal diagonal morphism phi_i = -log tau(e_i)
    morphism = algebra.diag(-np.log(w))
    ratio = lp_norm(omega_p(f, p) - morphism @ f, p) / lp_norm(f, p)
    return Witness(f, ratio)


def witness_weights(
    n: int, rule: str, rng: Optional[np.random.Generator] = None
) -> np.ndarray:
    """Weight profiles: uniform (all 1), geometric (2^i), random (log-uniform on [0.1, 10])."""
    if n < 1:
        raise PreconditionError("n must be >= 1", "n >= 1")
    if rule == "uniform":
        return np.ones(n)
    if rule == "geometric":
        return 2.0 ** np.arange(n)
    if rule == "random":
        if rng is None:
            raise PreconditionError("random weights need a generator")
        return np.exp(rng.uniform(np.log(0.1), np.log(10.0), size=n))
    raise ConfigError(f"unknown weight rule '{rule}'")
