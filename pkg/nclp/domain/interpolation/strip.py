"""
strip.py
Analytic functions on the strip S = {0 <= Re z <= 1} from the dense class
F(z) = exp(lam z^2) sum_i exp(r_i z) a_i (lam >= 0), the conformal map of S
onto the disc sending theta to 0, and products phi_theta^k G.

|exp(lam z^2)| = exp(lam (x^2 - t^2)) at z = x + it, so lam > 0 gives
Gaussian decay along both boundary lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Protocol, Sequence, Tuple

import numpy as np

from nclp.app.exceptions import AlgebraMismatchError, PreconditionError
from nclp.config import KERNEL_RTOL
from nclp.domain.algebra.algebra import Algebra, Element
from nclp.domain.algebra.sampling import random_element
from nclp.domain.algebra.spectral import spectral_decomposition

STRIP_SLACK = 1e-12


def _check_in_strip(z: complex) -> None:
    if not (-STRIP_SLACK <= complex(z).real <= 1 + STRIP_SLACK):
        raise PreconditionError(f"z = {z} lies outside the strip", "0 <= Re z <= 1")


def _check_theta(theta: float) -> None:
    if not (0 < theta < 1):
        raise PreconditionError(f"theta must lie in (0, 1), got {theta}", "theta in (0, 1)")


class BatchNorm(Protocol):
    """Norm of a batch of elements given as (T, d, d) arrays per block; returns shape (T,)."""

    def __call__(self, blocks: Sequence[np.ndarray]) -> np.ndarray:
        ...


class AnalyticStripFunction(Protocol):
    @property
    def algebra(self) -> Algebra:
        ...

    @property
    def lam(self) -> float:
        ...

    def eval(self, z: complex) -> Element:
        ...

    def deriv(self, z: complex) -> Element:
        ...

    def boundary_values(self, j: int, ts: np.ndarray) -> List[np.ndarray]:
        ...

    def envelope(self, j: int, norm: BatchNorm) -> float:
        ...


@dataclass(frozen=True)
class StripFunction:
    lam: float
    terms: Tuple[Tuple[float, Element], ...]

    def __post_init__(self) -> None:
        if not (self.lam >= 0 and math.isfinite(self.lam)):
            raise PreconditionError(f"lambda must be >= 0, got {self.lam}", "lambda >= 0")
        if not self.terms:
            raise PreconditionError("a strip function needs at least one term")
        algebra = self.terms[0][1].algebra
        if any(a.algebra != algebra for _, a in self.terms):
            raise AlgebraMismatchError("strip function coefficients live in different algebras")
        object.__setattr__(self, "terms", tuple((float(r), a) for r, a in self.terms))

    @classmethod
    def constant(cls, a: Element, lam: float = 0.0) -> StripFunction:
        """a exp(lam z^2); lam = 0 gives the constant a."""
        return cls(lam, ((0.0, a),))

    @property
    def algebra(self) -> Algebra:
        return self.terms[0][1].algebra

    @property
    def rates(self) -> np.ndarray:
        return np.array([r for r, _ in self.terms])

    def _combine(self, weights: Sequence[complex]) -> Element:
        out = self.algebra.zero()
        for w, (_, a) in zip(weights, self.terms):
            out = out + a * complex(w)
        return out

    def eval(self, z: complex) -> Element:
        _check_in_strip(z)
        z = complex(z)
        gauss = np.exp(self.lam * z * z)
        return self._combine([gauss * np.exp(r * z) for r, _ in self.terms])

    def deriv(self, z: complex) -> Element:
        _check_in_strip(z)
        z = complex(z)
        gauss = np.exp(self.lam * z * z)
        return self._combine(
            [gauss * (r + 2 * self.lam * z) * np.exp(r * z) for r, _ in self.terms]
        )

    def boundary_values(self, j: int, ts: np.ndarray) -> List[np.ndarray]:
        """F(j + i t) for every t, as one (len(ts), d, d) array per block."""
        z = j + 1j * np.asarray(ts, dtype=float)
        weights = np.exp(self.lam * z[:, None] ** 2 + z[:, None] * self.rates[None, :])
        out = []
        for k in range(len(self.algebra.blocks)):
            coeffs = np.stack([a.blocks[k] for _, a in self.terms])
            out.append(np.einsum("tn,nij->tij", weights, coeffs))
        return out

    def envelope(self, j: int, norm: BatchNorm) -> float:
        """sum_i exp(r_i j) ||a_i||_j, the t-independent part of the tail envelope."""
        total = 0.0
        for r, a in self.terms:
            total += math.exp(r * j) * float(norm([b[None] for b in a.blocks])[0])
        return total

    def scale(self, c: complex) -> StripFunction:
        return StripFunction(self.lam, tuple((r, a * c) for r, a in self.terms))


def conformal_factor(z: complex, theta: float) -> complex:
    """(e^{i pi z} - e^{i pi theta}) / (e^{i pi z} - e^{-i pi theta}); maps S to the disc, theta to 0."""
    _check_theta(theta)
    w = np.exp(1j * math.pi * complex(z))
    return complex((w - np.exp(1j * math.pi * theta)) / (w - np.exp(-1j * math.pi * theta)))


def conformal_derivative(z: complex, theta: float) -> complex:
    """-2 pi sin(pi theta) e^{i pi z} / (e^{i pi z} - e^{-i pi theta})^2."""
    _check_theta(theta)
    w = np.exp(1j * math.pi * complex(z))
    den = w - np.exp(-1j * math.pi * theta)
    return complex(-2 * math.pi * math.sin(math.pi * theta) * w / den ** 2)


def _conformal_batch(z: np.ndarray, theta: float) -> np.ndarray:
    w = np.exp(1j * math.pi * z)
    return (w - np.exp(1j * math.pi * theta)) / (w - np.exp(-1j * math.pi * theta))


@dataclass(frozen=True)
class ConformalMultiple:
    """phi_theta(z)^k G(z); lies in ker delta_theta for k >= 1."""

    base: StripFunction
    theta: float
    k: int = 1

    def __post_init__(self) -> None:
        _check_theta(self.theta)
        if self.k < 0:
            raise PreconditionError(f"k must be >= 0, got {self.k}")

    @property
    def algebra(self) -> Algebra:
        return self.base.algebra

    @property
    def lam(self) -> float:
        return self.base.lam

    def eval(self, z: complex) -> Element:
        return self.base.eval(z) * conformal_factor(z, self.theta) ** self.k

    def deriv(self, z: complex) -> Element:
        phi = conformal_factor(z, self.theta)
        out = self.base.deriv(z) * phi ** self.k
        if self.k:
            dphi = conformal_derivative(z, self.theta)
            out = out + self.base.eval(z) * (self.k * phi ** (self.k - 1) * dphi)
        return out

    def boundary_values(self, j: int, ts: np.ndarray) -> List[np.ndarray]:
        z = j + 1j * np.asarray(ts, dtype=float)
        factor = _conformal_batch(z, self.theta) ** self.k
        return [b * factor[:, None, None] for b in self.base.boundary_values(j, ts)]

    def envelope(self, j: int, norm: BatchNorm) -> float:
        # |phi_theta| <= 1 on the strip
        return self.base.envelope(j, norm)


def exp_sum_product(
    left: Sequence[Tuple[float, Element]], right: Sequence[Tuple[float, Element]], lam: float = 0.0
) -> StripFunction:
    """(sum_l e^{alpha_l z} A_l)(sum_j e^{beta_j z} B_j) as one exponential sum."""
    terms = [(a + b, A @ B) for a, A in left for b, B in right]
    return StripFunction(lam, tuple(terms))


def spectral_power_terms(x: Element, scale: float, shift: float = 0.0) -> List[Tuple[float, Element]]:
    """x^{scale z + shift} = sum_j e^{z scale log l_j} (l_j^shift e_j) over the nonzero spectrum of x >= 0.

    The kernel of x contributes 0 (0^w := 0).
    """
    sd = spectral_decomposition(x)
    terms = []
    for value, e in sd.nonzero():
        if value < 0:
            raise PreconditionError("spectral powers need a positive element", "x >= 0")
        terms.append((scale * math.log(value), e * value ** shift))
    return terms


def power_function(f: Element, p: float) -> StripFunction:
    """F(z) = f^{pz} for positive f: F(1/p) = f and F'(1/p) = p f log f."""
    if not (1 < p < math.inf):
        raise PreconditionError(f"p must lie in (1, inf), got {p}", "p in (1, inf)")
    terms = spectral_power_terms(f, p)
    if not terms:
        raise PreconditionError("power_function needs a nonzero element", "f != 0")
    return StripFunction(0.0, tuple(terms))


def random_kernel_function(
    algebra: Algebra,
    theta: float,
    rng: np.random.Generator,
    n_terms: int = 3,
    lam: float = 1.0,
    rate_scale: float = 2.0,
) -> StripFunction:
    """Random F in the dense class with F(theta) = 0.

    The last coefficient is -e^{-r_k theta} sum_{i<k} e^{r_i theta} a_i.
    """
    _check_theta(theta)
    if n_terms < 2:
        raise PreconditionError("a kernel function needs at least two terms", "n_terms >= 2")
    rates = rng.uniform(-rate_scale, rate_scale, size=n_terms)
    coeffs = [random_element(algebra, rng) for _ in range(n_terms - 1)]
    partial = algebra.zero()
    for r, a in zip(rates[:-1], coeffs):
        partial = partial + a * math.exp(r * theta)
    coeffs.append(partial * (-math.exp(-rates[-1] * theta)))
    F = StripFunction(lam, tuple(zip(rates.tolist(), coeffs)))
    check = F.eval(theta).max_abs()
    scale = math.exp(lam * theta ** 2) * sum(
        math.exp(r * theta) * a.max_abs() for r, a in zip(rates, coeffs)
    )
    if check > KERNEL_RTOL * scale:
        raise PreconditionError(f"kernel construction left |F(theta)| = {check:.3e}")
    return F

