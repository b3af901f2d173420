"""
spectral.py
Spectral decompositions, functional calculus, polar decomposition, L^p norms
and generalized singular value functions for Elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np
import scipy.linalg as la

from nclp.app.exceptions import NotHermitianError, PreconditionError
from nclp.config import SPECTRAL_GROUPING_RTOL
from nclp.domain.algebra.algebra import Element

ScalarFunction = Callable[[float], complex]


@dataclass(frozen=True)
class SpectralData:
    """Distinct (merged) eigenvalues of a Hermitian element and their projections."""

    values: Tuple[float, ...]
    projections: Tuple[Element, ...]
    tolerance: float
    resolutions: Tuple[float, ...] = ()

    def nonzero(self) -> List[Tuple[float, Element]]:
        """(value, projection) pairs whose value is resolved away from 0."""
        resolutions = self.resolutions or (self.tolerance,) * len(self.values)
        return [
            (value, e)
            for value, e, res in zip(self.values, self.projections, resolutions)
            if abs(value) > res
        ]

    def reconstruct(self) -> Element:
        return self.apply(lambda t: t)

    def apply(self, f: ScalarFunction) -> Element:
        out = self.projections[0] * complex(f(self.values[0]))
        for value, e in zip(self.values[1:], self.projections[1:]):
            out = out + e * complex(f(value))
        return out

    def traces(self) -> Tuple[float, ...]:
        return tuple(float(e.trace().real) for e in self.projections)


@dataclass(frozen=True)
class MuFunction:
    """Right-continuous decreasing step function t -> mu(x)(t) on R+."""

    steps: Tuple[Tuple[float, float], ...]

    def __post_init__(self) -> None:
        values = [v for v, _ in self.steps]
        if any(w <= 0 for _, w in self.steps):
            raise PreconditionError("mu widths must be positive")
        if any(a <= b for a, b in zip(values, values[1:])):
            raise PreconditionError("mu values must be strictly decreasing")

    @property
    def support(self) -> float:
        return float(sum(w for _, w in self.steps))

    def __call__(self, t: float) -> float:
        edge = 0.0
        for value, width in self.steps:
            edge += width
            if t < edge:
                return value
        return 0.0

    def distribution(self, lam: float) -> float:
        """d(lam) = tau(e^{|x|}(lam, inf))."""
        return float(sum(w for v, w in self.steps if v > lam))

    def lp_norm(self, p: float) -> float:
        if not self.steps:
            return 0.0
        if math.isinf(p):
            return self.steps[0][0]
        return float(sum(w * v ** p for v, w in self.steps)) ** (1.0 / p)


def _check_p(p: float) -> None:
    if not (p >= 1 or math.isinf(p)):
        raise PreconditionError(f"p must be >= 1 or inf, got {p}", "p >= 1 or p = inf")


def singular_values(x: Element) -> List[np.ndarray]:
    return [np.linalg.svd(b, compute_uv=False) for b in x.blocks]


def lp_norm(x: Element, p: float) -> float:
    """(tau(|x|^p))^(1/p); the operator norm for p = inf."""
    _check_p(p)
    svals = singular_values(x)
    if math.isinf(p):
        return float(max(float(s.max()) if s.size else 0.0 for s in svals))
    total = sum(w * float(np.sum(s ** p)) for w, s in zip(x.algebra.weights, svals))
    return float(total) ** (1.0 / p)


def _cluster(
    values: np.ndarray, weights: np.ndarray, scales: np.ndarray, rtol: float
) -> List[Tuple[float, np.ndarray, float]]:
    """Group sorted entries whose consecutive gaps are within rtol of their block scale.

    Returns (trace-weighted mean, member indices, resolution) per cluster, ascending.
    """
    order = np.argsort(values, kind="stable")
    clusters: List[List[int]] = []
    for idx in order:
        if clusters:
            last = clusters[-1][-1]
            if values[idx] - values[last] <= rtol * max(scales[idx], scales[last]):
                clusters[-1].append(int(idx))
                continue
        clusters.append([int(idx)])
    out = []
    for members in clusters:
        m = np.asarray(members)
        mean = float(np.sum(weights[m] * values[m]) / np.sum(weights[m]))
        out.append((mean, m, rtol * float(np.max(scales[m]))))
    return out


def spectral_decomposition(x: Element, rtol: float = SPECTRAL_GROUPING_RTOL) -> SpectralData:
    """Merged spectral decomposition of a Hermitian element.

    Eigenvalues of block k are resolved to rtol * ||x_k||; within a single
    block this is the rtol * ||x||_inf grouping rule.
    """
    if not x.is_hermitian():
        raise NotHermitianError("spectral decomposition needs a Hermitian element", "x = x*")
    algebra = x.algebra
    eigvals: List[float] = []
    weights: List[float] = []
    scales: List[float] = []
    owners: List[Tuple[int, int]] = []
    vectors: List[np.ndarray] = []
    for k, (b, block) in enumerate(zip(x.blocks, algebra.blocks)):
        w, v = la.eigh((b + b.conj().T) / 2)
        vectors.append(v)
        scale = float(np.max(np.abs(w)))
        for col, lam in enumerate(w):
            eigvals.append(float(lam))
            weights.append(block.weight)
            scales.append(scale)
            owners.append((k, col))
    vals = np.asarray(eigvals)
    values: List[float] = []
    projections: List[Element] = []
    resolutions: List[float] = []
    for mean, members, resolution in _cluster(vals, np.asarray(weights), np.asarray(scales), rtol):
        blocks = [np.zeros((d, d), dtype=complex) for d in algebra.dims]
        for idx in members:
            k, col = owners[idx]
            vec = vectors[k][:, col]
            blocks[k] = blocks[k] + np.outer(vec, vec.conj())
        values.append(mean)
        projections.append(Element(algebra, tuple(blocks)))
        resolutions.append(resolution)
    tol = rtol * (float(np.max(np.abs(vals))) if vals.size else 0.0)
    return SpectralData(tuple(values), tuple(projections), tol, tuple(resolutions))


def func_calc(x: Element, f: ScalarFunction) -> Element:
    """f(x) = sum_i f(lambda_i) e_i over the merged spectral data of x."""
    return spectral_decomposition(x).apply(f)


def polar(x: Element) -> Tuple[Element, Element]:
    """x = u|x| with u a partial isometry vanishing on ker|x|."""
    u_blocks = []
    m_blocks = []
    for b, d in zip(x.blocks, x.algebra.dims):
        w, s, vh = np.linalg.svd(b)
        cutoff = d * np.finfo(float).eps * (float(s.max()) if s.size else 0.0)
        r = int(np.count_nonzero(s > cutoff))
        u_blocks.append(w[:, :r] @ vh[:r, :])
        m = (vh.conj().T * s) @ vh
        m_blocks.append((m + m.conj().T) / 2)
    return Element(x.algebra, tuple(u_blocks)), Element(x.algebra, tuple(m_blocks))


def absolute_value(x: Element) -> Element:
    return polar(x)[1]


def mu(x: Element, rtol: float = SPECTRAL_GROUPING_RTOL) -> MuFunction:
    """Generalized singular value function: distinct singular values, widths tau(e_j)."""
    svals = singular_values(x)
    values = np.concatenate(svals)
    weights = np.concatenate([np.full(s.shape, w) for s, w in zip(svals, x.algebra.weights)])
    scales = np.concatenate([np.full(s.shape, s.max() if s.size else 0.0) for s in svals])
    steps = []
    for mean, members, resolution in reversed(_cluster(values, weights, scales, rtol)):
        if mean <= resolution:
            continue
        steps.append((mean, float(np.sum(weights[members]))))
    return MuFunction(tuple(steps))


def power(x: Element, z: complex) -> Element:
    """x^z for positive definite x (principal branch)."""
    sd = spectral_decomposition(x)
    if min(sd.values) <= 0:
        raise PreconditionError("complex powers need a positive definite element", "x > 0")
    return sd.apply(lambda t: complex(np.exp(z * math.log(t))))


def split_at_level(x: Element, level: float = 1.0) -> Tuple[Element, Element]:
    """Split a positive x into x*1[0,level](x) and x*1(level,inf)(x)."""
    sd = spectral_decomposition(x)
    below = sd.apply(lambda t: t if t <= level else 0.0)
    above = sd.apply(lambda t: t if t > level else 0.0)
    return below, above


def is_positive(x: Element, rtol: float = SPECTRAL_GROUPING_RTOL) -> bool:
    if not x.is_hermitian():
        return False
    sd = spectral_decomposition(x)
    return min(sd.values) >= -sd.tolerance - rtol * x.max_abs()


def normalize(x: Element, p: float) -> Element:
    norm = lp_norm(x, p)
    if norm == 0.0:
        raise PreconditionError("cannot normalize the zero element", "x != 0")
    return x / norm

