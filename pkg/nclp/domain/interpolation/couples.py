"""
couples.py
Interpolation couples over one algebra, Calderon boundary norms of strip
functions, the derivative bound on ker delta_theta, Rochberg-Weiss pairs and
a brute-force Calderon norm oracle for diagonal elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from nclp.app.exceptions import ConfigError, PreconditionError
from nclp.app.utils.logger import get_logger
from nclp.config import DEFAULT_T_MAX, DEFAULT_T_STEP, KERNEL_RTOL
from nclp.domain.algebra.algebra import Algebra, Element
from nclp.domain.interpolation.kosaki import StateDensity
from nclp.domain.interpolation.strip import (
    AnalyticStripFunction,
    StripFunction,
    conformal_derivative,
)
from nclp.domain.twisted_sum.twisted_pair import Centralizer, TwistedPair

logger = get_logger()


class CoupleKind(Enum):
    M_L1 = "M_L1"
    KOSAKI_LEFT = "kosaki_left"
    KOSAKI_RIGHT = "kosaki_right"


def _batch_singular_values(blocks: Sequence[np.ndarray]) -> List[np.ndarray]:
    return [np.linalg.svd(b, compute_uv=False) for b in blocks]


@dataclass(frozen=True)
class InterpolationCouple:
    """Two norms on one algebra and the norm of their complex interpolation space.

    M_L1: (M, ||.||_inf) and L^1(tau); the theta-space is L^{1/theta}.
    kosaki_left: densities x = a d with ||x d^-1||_inf and ||x||_1; the theta-norm
    is ||x d^{theta-1}||_{1/theta}. kosaki_right mirrors the side.
    """

    kind: CoupleKind
    algebra: Algebra
    density: Optional[StateDensity] = None

    def __post_init__(self) -> None:
        if self.kind is not CoupleKind.M_L1:
            if self.density is None:
                raise PreconditionError(f"{self.kind.value} couple needs a state density")
            if self.density.algebra != self.algebra:
                raise PreconditionError("density lives in a different algebra")

    @classmethod
    def named(
        cls, name: str, algebra: Algebra, density: Optional[StateDensity] = None
    ) -> InterpolationCouple:
        try:
            kind = CoupleKind(name)
        except ValueError:
            raise ConfigError(f"unknown couple '{name}'") from None
        return cls(kind, algebra, density)

    def _twist(self, blocks: Sequence[np.ndarray], exponent: float) -> List[np.ndarray]:
        """Multiply each batched block by d^exponent on the couple's side."""
        if self.kind is CoupleKind.M_L1:
            return list(blocks)
        assert self.density is not None
        factor = self.density.power(exponent)
        if self.kind is CoupleKind.KOSAKI_LEFT:
            return [b @ f for b, f in zip(blocks, factor.blocks)]
        return [f @ b for b, f in zip(blocks, factor.blocks)]

    def _schatten(self, blocks: Sequence[np.ndarray], p: float) -> np.ndarray:
        svals = _batch_singular_values(blocks)
        if math.isinf(p):
            return np.max(np.stack([s.max(axis=1) for s in svals]), axis=0)
        total = sum(w * np.sum(s ** p, axis=1) for w, s in zip(self.algebra.weights, svals))
        return np.asarray(total) ** (1.0 / p)

    def endpoint_norms(self, j: int, blocks: Sequence[np.ndarray]) -> np.ndarray:
        """||.||_j of a batch given as (T, d, d) arrays per block."""
        if j == 0:
            return self._schatten(self._twist(blocks, -1.0), math.inf)
        return self._schatten(blocks, 1.0)

    def endpoint_norm(self, j: int, x: Element) -> float:
        return float(self.endpoint_norms(j, [b[None] for b in x.blocks])[0])

    def theta_norm(self, x: Element, theta: float) -> float:
        if not (0 < theta < 1):
            raise PreconditionError(f"theta must lie in (0, 1), got {theta}")
        twisted = self._twist([b[None] for b in x.blocks], theta - 1.0)
        return float(self._schatten(twisted, 1.0 / theta)[0])

    def batch_norm(self, j: int) -> Callable[[Sequence[np.ndarray]], np.ndarray]:
        return lambda blocks: self.endpoint_norms(j, blocks)


@dataclass(frozen=True)
class BoundaryNorm:
    sampled: float
    tail: float

    @property
    def value(self) -> float:
        return max(self.sampled, self.tail)


def t_grid(t_max: float, t_step: float) -> np.ndarray:
    """Symmetric grid on [-t_max, t_max] containing 0."""
    if t_max < 0 or t_step <= 0:
        raise PreconditionError("t_max must be >= 0 and t_step > 0")
    half = int(round(t_max / t_step))
    return np.linspace(-t_max, t_max, 2 * half + 1)


def boundary_norm(
    F: AnalyticStripFunction,
    couple: InterpolationCouple,
    t_max: float = DEFAULT_T_MAX,
    t_step: float = DEFAULT_T_STEP,
    allow_nondecaying: bool = False,
) -> BoundaryNorm:
    """sup_{j, t} ||F(j + it)||_j from sampling on [-t_max, t_max] plus the tail envelope.

    For |t| > t_max, ||F(j+it)||_j <= exp(lam (j^2 - t_max^2)) sum_i e^{r_i j} ||a_i||_j.
    """
    if F.lam <= 0 and not allow_nondecaying:
        raise PreconditionError(
            "boundary sup needs a decaying function", "lambda > 0 for sup computation"
        )
    ts = t_grid(t_max, t_step)
    sampled = 0.0
    tail = 0.0
    for j in (0, 1):
        values = couple.endpoint_norms(j, F.boundary_values(j, ts))
        sampled = max(sampled, float(values.max()))
        if F.lam > 0:
            decay = math.exp(F.lam * (j * j - t_max * t_max))
            tail = max(tail, decay * F.envelope(j, couple.batch_norm(j)))
    logger.debug(f"boundary norm: sampled {sampled:.6g}, tail {tail:.3e} over {ts.size} points")
    return BoundaryNorm(sampled, tail)


@dataclass(frozen=True)
class DerivativeBound:
    lhs: float
    rhs: float

    def holds(self, slack: float = 1e-3) -> bool:
        return self.lhs <= self.rhs * (1.0 + slack)


def derivative_bound_check(
    F: AnalyticStripFunction,
    couple: InterpolationCouple,
    theta: float,
    t_max: float = DEFAULT_T_MAX,
    t_step: float = DEFAULT_T_STEP,
    allow_nondecaying: bool = False,
) -> DerivativeBound:
    """(||F'(theta)||_theta, pi/(2 sin(pi theta)) ||F||) for F with F(theta) = 0."""
    bn = boundary_norm(F, couple, t_max, t_step, allow_nondecaying).value
    at_theta = couple.theta_norm(F.eval(theta), theta)
    if at_theta > KERNEL_RTOL * bn:
        raise PreconditionError(
            f"F(theta) has norm {at_theta:.3e}, not in ker delta_theta", "F(theta) = 0"
        )
    if bn == 0.0:
        return DerivativeBound(0.0, 0.0)
    lhs = couple.theta_norm(F.deriv(theta), theta)
    rhs = abs(conformal_derivative(theta, theta)) * bn
    return DerivativeBound(lhs, rhs)


def rw_pair(F: AnalyticStripFunction, omega: Centralizer, theta: float) -> TwistedPair:
    """(F'(theta), F(theta)) as a point of the twisted sum at p = 1/theta."""
    if not (0 < theta < 1):
        raise PreconditionError(f"theta must lie in (0, 1), got {theta}")
    return TwistedPair(F.deriv(theta), F.eval(theta), omega, 1.0 / theta)


@dataclass(frozen=True)
class CalderonSearch:
    value: float
    rates: np.ndarray
    evaluations: int


def _diagonal_family(x: Element, theta: float, rates: np.ndarray) -> StripFunction:
    """F(z) = sum_i e^{c_i (z - theta)} x_ii E_ii, so F(theta) = x."""
    algebra = x.algebra
    diag = x.diagonal()
    terms = []
    for i, (c, v) in enumerate(zip(rates, diag)):
        values = np.zeros(algebra.total_dim, dtype=complex)
        values[i] = v * math.exp(-c * theta)
        terms.append((float(c), algebra.diag(values)))
    return StripFunction(0.0, tuple(terms))


def calderon_norm_search(
    x: Element, couple: InterpolationCouple, theta: float, max_iter: int = 4000
) -> CalderonSearch:
    """Upper bound of the Calderon norm of a diagonal x over diagonal exponential families.

    Real rates and lam = 0 make every boundary norm constant in t, so the
    objective is the larger endpoint norm at t = 0, minimized by Nelder-Mead.
    """
    if not all(np.array_equal(b, np.diag(np.diag(b))) for b in x.blocks):
        raise PreconditionError("calderon_norm_search needs a diagonal element")

    def objective(rates: np.ndarray) -> float:
        F = _diagonal_family(x, theta, rates)
        return boundary_norm(F, couple, t_max=0.0, t_step=1.0, allow_nondecaying=True).value

    n = x.algebra.total_dim
    start = np.zeros(n)
    simplex = np.vstack([start, start + np.eye(n)])
    result = minimize(
        objective,
        start,
        method="Nelder-Mead",
        options={
            "xatol": 1e-10,
            "fatol": 1e-13,
            "maxiter": max_iter,
            "maxfev": 4 * max_iter,
            "initial_simplex": simplex,
        },
    )
    logger.debug(f"calderon search: {result.fun:.10g} after {result.nfev} evaluations")
    return CalderonSearch(float(result.fun), np.asarray(result.x), int(result.nfev))

