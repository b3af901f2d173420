"""
duality.py
The pairing between the Kalton-Peck twisted sums of L^q and L^p, the
elementary inequality behind its boundedness, and the sigma-elementary
duality bound.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from nclp.app.exceptions import PreconditionError
from nclp.app.utils.logger import get_logger
from nclp.config import CONJUGATE_ATOL, NORMALIZATION_RTOL
from nclp.domain.algebra.algebra import Element
from nclp.domain.algebra.spectral import lp_norm
from nclp.domain.centralizers.nc_centralizer import kp_lipschitz
from nclp.domain.centralizers.scalar_functions import LipschitzFunction
from nclp.domain.twisted_sum.twisted_pair import TwistedPair
from nclp.utils import conjugate_exponent, log_spaced

logger = get_logger()


def _check_conjugate(p: float, q: float) -> None:
    if abs(1.0 / p + 1.0 / q - 1.0) > CONJUGATE_ATOL:
        raise PreconditionError(
            f"exponents {p} and {q} are not conjugate", "1/p + 1/q = 1"
        )


def duality_pairing(xy: TwistedPair, vw: TwistedPair) -> complex:
    """<(x, y), (v, w)> = tau(x w - y v) for (x, y) in Z_q and (v, w) in Z_p."""
    _check_conjugate(xy.p, vw.p)
    x, y = xy.g, xy.f
    v, w = vw.g, vw.f
    return (x @ w - y @ v).trace()


def inequality_ratio(t: float, s: float, p: float, constant: float) -> float:
    """|t s log(|t|^q/|s|^p)| / (constant (|t|^q + |s|^p)), with 0 log 0 = 0."""
    q = conjugate_exponent(p)
    t, s = abs(t), abs(s)
    if t == 0.0 or s == 0.0:
        return 0.0
    a, b = t ** q, s ** p
    return abs(t * s * math.log(a / b)) / (constant * (a + b))


@dataclass(frozen=True)
class InequalityResult:
    p: float
    max_ratio: float
    violations: int
    points: int
    stated_max_ratio: float
    stated_violations: int
    argmax: Tuple[float, float]


def elementary_inequality_check(
    p: float, lo: float = 1e-6, hi: float = 1e6, points: int = 1000
) -> InequalityResult:
    """Max over a log-spaced points x points grid of the normalized inequality ratio.

    The constant used is max(p, q)/e; the ratio under p/e is reported alongside.
    """
    if not (1 < p < math.inf):
        raise PreconditionError(f"p must lie in (1, inf), got {p}", "p in (1, inf)")
    q = conjugate_exponent(p)
    axis = np.asarray(log_spaced(lo, hi, points))
    t = axis[:, None]
    s = axis[None, :]
    a = t ** q
    b = s ** p
    raw = np.abs(t * s * (q * np.log(t) - p * np.log(s))) / (a + b)
    constant = max(p, q) / math.e
    ratio = raw / constant
    stated = raw / (p / math.e)
    i, j = np.unravel_index(int(np.argmax(ratio)), ratio.shape)
    result = InequalityResult(
        p=p,
        max_ratio=float(ratio[i, j]),
        violations=int(np.count_nonzero(ratio > 1.0)),
        points=int(ratio.size),
        stated_max_ratio=float(stated.max()),
        stated_violations=int(np.count_nonzero(stated > 1.0)),
        argmax=(float(axis[i]), float(axis[j])),
    )
    logger.debug(f"inequality grid p={p}: max ratio {result.max_ratio:.6f}")
    return result


@dataclass(frozen=True)
class DualityBound:
    lhs: float
    rhs: float
    stated_rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1.0 + 1e-12)


def _is_diagonal_positive(x: Element) -> bool:
    for b in x.blocks:
        if np.any(np.abs(b - np.diag(np.diag(b))) > 0):
            return False
        d = np.diag(b)
        if np.any(np.abs(d.imag) > 0) or np.any(d.real < 0):
            return False
    return True


def sigma_elementary_duality_bound(
    y: Element, w: Element, p: float, phi: LipschitzFunction
) -> DualityBound:
    """|tau(Phi_q(y) w - y Phi_p(w))| against 2 max(p, q) L / e.

    y, w diagonal positive with ||y||_q = ||w||_p = 1 and 1 < p <= 2.
    """
    if not (1 < p <= 2):
        raise PreconditionError(f"p must lie in (1, 2], got {p}", "1 < p <= 2")
    q = conjugate_exponent(p)
    if not (_is_diagonal_positive(y) and _is_diagonal_positive(w)):
        raise PreconditionError("y and w must be diagonal and positive")
    if abs(lp_norm(y, q) - 1.0) > NORMALIZATION_RTOL or abs(lp_norm(w, p) - 1.0) > NORMALIZATION_RTOL:
        raise PreconditionError(
            "inputs are not normalized; normalize first", "||y||_q = ||w||_p = 1"
        )
    lhs = abs((kp_lipschitz(y, q, phi) @ w - y @ kp_lipschitz(w, p, phi)).trace())
    rhs = 2.0 * max(p, q) * phi.lipschitz / math.e
    return DualityBound(lhs, rhs, 2.0 * p * phi.lipschitz / math.e)
