"""
sampling.py
Seeded random samplers for algebras and elements. Every sampler draws from an
explicit numpy Generator; per-trial substreams come from trial_rng.
"""

from typing import Optional, Sequence

import numpy as np
from scipy.stats import unitary_group

from nclp.app.exceptions import PreconditionError
from nclp.domain.algebra.algebra import Algebra, Element


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent substream for trial `index` of a run seeded with `seed`."""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def _ginibre(rng: np.random.Generator, dim: int) -> np.ndarray:
    return (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)


def random_element(algebra: Algebra, rng: np.random.Generator) -> Element:
    """Complex Gaussian (Ginibre) blocks."""
    return Element(algebra, tuple(_ginibre(rng, d) for d in algebra.dims))


def random_hermitian(algebra: Algebra, rng: np.random.Generator) -> Element:
    return random_element(algebra, rng).real_part()


def random_positive(
    algebra: Algebra, rng: np.random.Generator, floor: float = 0.0
) -> Element:
    """g*g (+ floor) for a Ginibre g; positive definite almost surely."""
    g = random_element(algebra, rng)
    out = g.adjoint() @ g
    if floor:
        out = out + algebra.scalar(floor)
    return out.real_part()


def random_unitary(algebra: Algebra, rng: np.random.Generator) -> Element:
    """Haar unitary per block."""
    blocks = []
    for d in algebra.dims:
        if d == 1:
            blocks.append(np.array([[np.exp(2j * np.pi * rng.random())]]))
        else:
            blocks.append(unitary_group.rvs(d, random_state=rng))
    return Element(algebra, tuple(blocks))


def random_contraction(algebra: Algebra, rng: np.random.Generator) -> Element:
    """A random element rescaled to operator norm rng.uniform(0, 1]."""
    x = random_element(algebra, rng)
    scale = max(float(np.linalg.norm(b, 2)) for b in x.blocks)
    return x * (float(1.0 - rng.random()) / scale)


def random_density(
    algebra: Algebra, rng: np.random.Generator, mass: float = 1.0, floor: float = 0.05
) -> Element:
    """Positive definite d with tau(d) = mass."""
    d = random_positive(algebra, rng, floor=floor)
    return d * (mass / d.trace().real)


def random_normal(
    algebra: Algebra, rng: np.random.Generator, positive: bool = False
) -> Element:
    """u diag(lambda) u* with Haar u; complex spectrum unless `positive`."""
    u = random_unitary(algebra, rng)
    n = algebra.total_dim
    if positive:
        values = rng.exponential(size=n) + 1e-3
    else:
        values = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return u @ algebra.diag(values) @ u.adjoint()


def random_positive_diagonal(algebra: Algebra, rng: np.random.Generator) -> Element:
    return algebra.diag(rng.exponential(size=algebra.total_dim) + 1e-3)


def random_weights(n: int, rng: np.random.Generator, low: float = 0.1, high: float = 10.0) -> np.ndarray:
    """Log-uniform positive weights."""
    return np.exp(rng.uniform(np.log(low), np.log(high), size=n))


def random_algebra(
    rng: np.random.Generator,
    max_blocks: int = 3,
    max_dim: int = 4,
    dims: Optional[Sequence[int]] = None,
) -> Algebra:
    """Random block structure with log-uniform weights."""
    if dims is None:
        n_blocks = int(rng.integers(1, max_blocks + 1))
        dims = [int(rng.integers(1, max_dim + 1)) for _ in range(n_blocks)]
    if not dims:
        raise PreconditionError("random_algebra needs at least one block")
    weights = random_weights(len(dims), rng)
    return Algebra.from_pairs(zip(dims, weights))


def permutation_unitary(algebra: Algebra, perm: Sequence[int]) -> Element:
    """Permutation matrix U e_i = e_perm(i) in a single-block algebra."""
    if len(algebra.blocks) != 1:
        raise PreconditionError("permutation unitaries need a single matrix block")
    n = algebra.total_dim
    if sorted(perm) != list(range(n)):
        raise PreconditionError("not a permutation of the coordinates")
    matrix = np.zeros((n, n), dtype=complex)
    for i, j in enumerate(perm):
        matrix[j, i] = 1.0
    return Element(algebra, (matrix,))
