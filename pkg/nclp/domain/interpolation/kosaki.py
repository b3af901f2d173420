"""
kosaki.py
Kosaki L^p spaces of a faithful positive functional phi = tau(d .), their
closed-form extremal strip functions, the left and right derivations they
induce, the duality pairing beta(a phi, phi b) = phi(ba) and the Fan-type
estimate relating the two derivations.

Elements of the predual are represented by densities: a phi is a d on the
left, phi b is d b on the right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import List, Tuple

import numpy as np

from nclp.app.exceptions import AdmissibilityError, PreconditionError
from nclp.app.utils.logger import get_logger
from nclp.config import (
    CONJUGATE_ATOL,
    DENSITY_MASS_RTOL,
    EXTREMAL_BOUNDARY_SLACK,
    EXTREMAL_INTERIOR_ATOL,
)
from nclp.domain.algebra.algebra import Algebra, Element
from nclp.domain.algebra.spectral import SpectralData, lp_norm, polar, spectral_decomposition
from nclp.domain.interpolation.strip import StripFunction, exp_sum_product, spectral_power_terms
from nclp.utils import conjugate_exponent

logger = get_logger()

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True, eq=False)
class StateDensity:
    """Positive definite d with tau(d) = mass; phi(x) = tau(d x)."""

    d: Element
    mass: float = 1.0

    def __post_init__(self) -> None:
        if not self.d.is_hermitian():
            raise PreconditionError("a density must be Hermitian", "d = d* > 0")
        if min(self.spectrum.values) <= 0:
            raise PreconditionError("density is singular; phi must be faithful", "d > 0")
        if not self.mass > 0:
            raise PreconditionError(f"mass must be > 0, got {self.mass}")
        trace = self.d.trace().real
        if abs(trace - self.mass) > DENSITY_MASS_RTOL * self.mass * max(1.0, self.d.algebra.total_dim):
            raise PreconditionError(
                f"tau(d) = {trace!r} does not match the declared mass {self.mass!r}",
                "tau(d) = mass",
            )

    @classmethod
    def normalized(cls, x: Element, mass: float = 1.0) -> StateDensity:
        """Rescale a positive definite x to trace `mass`."""
        return cls(x * (mass / x.trace().real), mass)

    @classmethod
    def tracial(cls, algebra: Algebra) -> StateDensity:
        """d = 1/tau(1): the normalized trace."""
        return cls(algebra.scalar(1.0 / algebra.total_trace), 1.0)

    @property
    def algebra(self) -> Algebra:
        return self.d.algebra

    @cached_property
    def spectrum(self) -> SpectralData:
        return spectral_decomposition(self.d)

    def power(self, z: complex) -> Element:
        return self.spectrum.apply(lambda t: complex(np.exp(z * math.log(t))))

    def log(self) -> Element:
        return self.spectrum.apply(math.log)

    def power_terms(self, scale: float, shift: float = 0.0) -> List[Tuple[float, Element]]:
        """d^{scale z + shift} as exponential-sum terms."""
        return [
            (scale * math.log(v), e * v ** shift)
            for v, e in zip(self.spectrum.values, self.spectrum.projections)
        ]

    def same_as(self, other: StateDensity) -> bool:
        return self.d == other.d


def _check_side(side: str) -> None:
    if side not in (LEFT, RIGHT):
        raise PreconditionError(f"side must be 'left' or 'right', got {side!r}")


def kosaki_norm(a: Element, d: StateDensity, p: float, side: str = LEFT) -> float:
    """||a d^{1/p}||_p (left) or ||d^{1/p} a||_p (right); ||a||_inf at p = inf."""
    _check_side(side)
    if not (p >= 1 or math.isinf(p)):
        raise PreconditionError(f"p must be >= 1 or inf, got {p}", "p in [1, inf]")
    if math.isinf(p):
        return lp_norm(a, math.inf)
    factor = d.power(1.0 / p)
    return lp_norm(a @ factor if side == LEFT else factor @ a, p)


@dataclass(frozen=True)
class KosakiExtremal:
    """Extremal G for the normalized input and the norm it was scaled by."""

    G: StripFunction
    norm: float
    theta: float
    side: str


def _check_p(p: float) -> None:
    if not (1 < p < math.inf):
        raise PreconditionError(f"p must lie in (1, inf), got {p}", "p in (1, inf)")


def kosaki_extremal(a: Element, d: StateDensity, p: float, side: str = LEFT) -> KosakiExtremal:
    """G(z) = v |k|^{pz} d^{1-z} with k = a d^{1/p} / ||.|| = v|k| (left side).

    Right side: G(z) = d^{1-z} |k*|^{pz} w with k = d^{1/p} a / ||.|| = |k*| w.
    G(1/p) is the normalized density a d (resp. d a).
    """
    _check_p(p)
    _check_side(side)
    norm = kosaki_norm(a, d, p, side)
    if norm == 0.0:
        raise PreconditionError("the extremal of 0 is undefined", "a != 0")
    factor = d.power(1.0 / p)
    d_terms = d.power_terms(-1.0, shift=1.0)
    if side == LEFT:
        k = (a @ factor) / norm
        v, k_abs = polar(k)
        left = [(r, v @ e) for r, e in spectral_power_terms(k_abs, p)]
        G = exp_sum_product(left, d_terms)
    else:
        k = (factor @ a) / norm
        w, k_abs = polar(k)
        k_star_abs = w @ k_abs @ w.adjoint()
        right = [(r, e @ w) for r, e in spectral_power_terms(k_star_abs, p)]
        G = exp_sum_product(d_terms, right)
    return KosakiExtremal(G, norm, 1.0 / p, side)


def check_extremal(
    extremal: KosakiExtremal,
    a: Element,
    d: StateDensity,
    t_max: float = 8.0,
    t_step: float = 1.0 / 16,
) -> None:
    """Runtime admissibility: G(theta) reproduces the normalized density and the boundary norms stay <= 1."""
    from nclp.domain.interpolation.couples import InterpolationCouple, boundary_norm

    target = (a @ d.d if extremal.side == LEFT else d.d @ a) / extremal.norm
    gap = (extremal.G.eval(extremal.theta) - target).max_abs()
    if gap > EXTREMAL_INTERIOR_ATOL * max(1.0, target.max_abs()):
        raise AdmissibilityError(f"extremal misses its interior value by {gap:.3e}")
    couple = InterpolationCouple.named("kosaki_" + extremal.side, d.algebra, d)
    bn = boundary_norm(extremal.G, couple, t_max, t_step, allow_nondecaying=True)
    if bn.sampled > 1.0 + EXTREMAL_BOUNDARY_SLACK:
        raise AdmissibilityError(f"extremal boundary norm {bn.sampled:.12g} exceeds 1")
    logger.debug(f"extremal admissible: interior gap {gap:.2e}, boundary {bn.sampled:.12g}")


def _derivation(a: Element, d: StateDensity, p: float, side: str, check: bool) -> Element:
    _check_p(p)
    if kosaki_norm(a, d, p, side) == 0.0:
        return a.algebra.zero()
    extremal = kosaki_extremal(a, d, p, side)
    if check:
        check_extremal(extremal, a, d)
    return extremal.G.deriv(extremal.theta) * extremal.norm


def kosaki_derivation_left(a: Element, d: StateDensity, p: float, check: bool = True) -> Element:
    """Omega^l_p(a phi) = ||a||_{p,d} G'(1/p) as a left density.

    For the normalized k = v|k|: G'(1/p) = v (p log|k|) |k| d^{1-1/p} - v |k| (log d) d^{1-1/p}.
    """
    return _derivation(a, d, p, LEFT, check)


def kosaki_derivation_right(b: Element, d: StateDensity, q: float, check: bool = True) -> Element:
    """Omega^r_q(phi b) from the mirrored extremal d^{1-z} |k*|^{qz} w, as a right density."""
    return _derivation(b, d, q, RIGHT, check)


def beta(left_density: Element, right_density: Element, d: StateDensity) -> complex:
    """beta(a phi, phi b) = tau(d b a) for left density a d and right density d b."""
    return (right_density @ left_density @ d.power(-1.0)).trace()


def _check_conjugate(p: float, q: float) -> None:
    if abs(1.0 / p + 1.0 / q - 1.0) > CONJUGATE_ATOL:
        raise PreconditionError(f"exponents {p} and {q} are not conjugate", "1/p + 1/q = 1")


def kosaki_duality_pairing(
    f_pair: Tuple[Element, Element],
    g_pair: Tuple[Element, Element],
    d: StateDensity,
    p: float,
    q: float,
) -> complex:
    """u(g', g)(f', f) = beta(f, g') + beta(f', g); f-pair left densities, g-pair right densities."""
    _check_conjugate(p, q)
    f_prime, f = f_pair
    g_prime, g = g_pair
    return beta(f, g_prime, d) + beta(f_prime, g, d)


@dataclass(frozen=True)
class FanDefect:
    defect: float
    scale: float
    bound: float

    @property
    def ratio(self) -> float:
        return self.defect / self.scale if self.scale else 0.0

    @property
    def holds(self) -> bool:
        return self.ratio <= self.bound * (1.0 + 1e-12)


def fan_defect(a: Element, b: Element, d: StateDensity, p: float) -> FanDefect:
    """|beta(Omega^l_p f, g) - beta(f, Omega^r_q g)| against (pi / sin(pi/p)) ||f||_p ||g||_q.

    f = a phi in the left L^p, g = phi b in the right L^q.
    """
    _check_p(p)
    q = conjugate_exponent(p)
    f = a @ d.d
    g = d.d @ b
    defect = abs(
        beta(kosaki_derivation_left(a, d, p), g, d) - beta(f, kosaki_derivation_right(b, d, q), d)
    )
    scale = kosaki_norm(a, d, p, LEFT) * kosaki_norm(b, d, q, RIGHT)
    return FanDefect(defect, scale, math.pi / math.sin(math.pi / p))
