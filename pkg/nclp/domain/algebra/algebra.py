"""
algebra.py
Finite-dimensional semifinite von Neumann algebras: a direct sum of complex
matrix blocks with a faithful trace tau(x) = sum_k weight_k * Tr(x_k).
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Tuple, Union

import numpy as np

from nclp.app.exceptions import AlgebraMismatchError, PreconditionError
from nclp.config import HERMITIAN_RTOL, MAX_BLOCK_DIM

Scalar = Union[int, float, complex, np.number]


@dataclass(frozen=True)
class Block:
    dim: int
    weight: float

    def __post_init__(self) -> None:
        if int(self.dim) != self.dim or self.dim < 1:
            raise PreconditionError(f"block dimension must be a positive integer, got {self.dim}")
        if self.dim > MAX_BLOCK_DIM:
            raise PreconditionError(f"block dimension {self.dim} exceeds {MAX_BLOCK_DIM}")
        if not np.isfinite(self.weight) or self.weight <= 0:
            raise PreconditionError(
                f"block weight must be > 0, got {self.weight}", "every weight > 0"
            )


@dataclass(frozen=True)
class Algebra:
    """Ordered direct sum of matrix blocks; the weights define the trace."""

    blocks: Tuple[Block, ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise PreconditionError("an algebra needs at least one block", "total dimension >= 1")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, float]]) -> Algebra:
        return cls(tuple(Block(int(dim), float(weight)) for dim, weight in pairs))

    @classmethod
    def diagonal(cls, weights: Sequence[float]) -> Algebra:
        """The commutative algebra of len(weights) one-dimensional blocks."""
        return cls.from_pairs((1, w) for w in weights)

    @classmethod
    def matrix(cls, dim: int, weight: float = 1.0) -> Algebra:
        return cls((Block(dim, weight),))

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(b.dim for b in self.blocks)

    @property
    def weights(self) -> Tuple[float, ...]:
        return tuple(b.weight for b in self.blocks)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def total_trace(self) -> float:
        """tau(1)."""
        return float(sum(b.dim * b.weight for b in self.blocks))

    @property
    def min_projection_trace(self) -> float:
        """Smallest trace of a nonzero projection (a rank-one projection in the lightest block)."""
        return min(self.weights)

    def element(self, blocks: Sequence[np.ndarray]) -> Element:
        return Element(self, tuple(np.asarray(b) for b in blocks))

    def zero(self) -> Element:
        return Element(self, tuple(np.zeros((d, d), dtype=complex) for d in self.dims))

    def identity(self) -> Element:
        return Element(self, tuple(np.eye(d, dtype=complex) for d in self.dims))

    def scalar(self, c: Scalar) -> Element:
        return self.identity() * c

    def diag(self, values: Sequence[Scalar]) -> Element:
        """Block-diagonal element whose concatenated diagonal is `values`."""
        flat = np.asarray(values, dtype=complex)
        if flat.shape != (self.total_dim,):
            raise PreconditionError(f"expected {self.total_dim} diagonal values, got {flat.shape}")
        out = []
        offset = 0
        for d in self.dims:
            out.append(np.diag(flat[offset:offset + d]))
            offset += d
        return Element(self, tuple(out))

    def summand(self, indices: Sequence[int]) -> Algebra:
        """The direct summand made of the listed blocks (restricted weights)."""
        return Algebra(tuple(self.blocks[i] for i in indices))

    def describe(self) -> str:
        return " + ".join(f"M{b.dim}(w={b.weight:g})" for b in self.blocks)


@dataclass(frozen=True, eq=False)
class Element:
    """A block-diagonal complex matrix living in one Algebra. Immutable."""

    algebra: Algebra
    blocks: Tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.blocks) != len(self.algebra.blocks):
            raise PreconditionError(
                f"expected {len(self.algebra.blocks)} blocks, got {len(self.blocks)}"
            )
        frozen = []
        for arr, block in zip(self.blocks, self.algebra.blocks):
            a = np.array(arr, dtype=complex, copy=True)
            if a.shape != (block.dim, block.dim):
                raise PreconditionError(f"block shape {a.shape} does not match dim {block.dim}")
            a.setflags(write=False)
            frozen.append(a)
        object.__setattr__(self, "blocks", tuple(frozen))

    def _check(self, other: Element) -> None:
        if other.algebra != self.algebra:
            raise AlgebraMismatchError("elements live in different algebras")

    def _map(self, fn: Callable[[np.ndarray], np.ndarray]) -> Element:
        return Element(self.algebra, tuple(fn(b) for b in self.blocks))

    def __add__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self) -> Element:
        return self._map(lambda b: -b)

    def __mul__(self, c: Scalar) -> Element:
        if not isinstance(c, (numbers.Number, np.number)):
            return NotImplemented
        return self._map(lambda b: b * c)

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> Element:
        return self * (1.0 / c)

    def __matmul__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.algebra, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return other.algebra == self.algebra and all(
            np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks)
        )

    __hash__ = None  # type: ignore[assignment]

    def adjoint(self) -> Element:
        return self._map(lambda b: b.conj().T)

    def trace(self) -> complex:
        return trace(self)

    def real_part(self) -> Element:
        """(x + x*)/2."""
        return (self + self.adjoint()) * 0.5

    def imag_part(self) -> Element:
        """(x - x*)/2i."""
        return (self - self.adjoint()) * (-0.5j)

    def commutator(self, other: Element) -> Element:
        return self @ other - other @ self

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(b))) if b.size else 0.0 for b in self.blocks)

    def is_hermitian(self, rtol: float = HERMITIAN_RTOL) -> bool:
        scale = self.max_abs()
        if scale == 0.0:
            return True
        return (self - self.adjoint()).max_abs() <= rtol * scale

    def is_zero(self) -> bool:
        return all(not np.any(b) for b in self.blocks)

    def diagonal(self) -> np.ndarray:
        """Concatenated block diagonals."""
        return np.concatenate([np.diag(b) for b in self.blocks])

    def allclose(self, other: Element, atol: float = 1e-10) -> bool:
        self._check(other)
        return (self - other).max_abs() <= atol


def trace(x: Element) -> complex:
    """tau(x) = sum_k weight_k * Tr(x_k)."""
    return complex(sum(b.weight * np.trace(a) for b, a in zip(x.algebra.blocks, x.blocks)))


def restrict(x: Element, indices: Sequence[int]) -> Element:
    """Compression of x to the direct summand made of the listed blocks."""
    return Element(x.algebra.summand(indices), tuple(x.blocks[i] for i in indices))


def embed(x: Element, algebra: Algebra, indices: Sequence[int]) -> Element:
    """Inclusion of a summand element into `algebra`, zero on the other blocks."""
    if algebra.summand(indices) != x.algebra:
        raise AlgebraMismatchError("summand does not match the element's algebra")
    out = [np.zeros((d, d), dtype=complex) for d in algebra.dims]
    for src, i in enumerate(indices):
        out[i] = x.blocks[src]
    return Element(algebra, tuple(out))
