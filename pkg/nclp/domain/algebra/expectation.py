"""
expectation.py
Trace-preserving conditional expectations onto the span of a partition of projections.
"""

from typing import List, Sequence

import numpy as np

from nclp.app.exceptions import AlgebraMismatchError, PreconditionError
from nclp.config import PROJECTION_ATOL
from nclp.domain.algebra.algebra import Algebra, Element


def _check_partition(partition: Sequence[Element]) -> None:
    if not partition:
        raise PreconditionError("partition must contain at least one projection")
    algebra = partition[0].algebra
    for i, e in enumerate(partition):
        if e.algebra != algebra:
            raise AlgebraMismatchError("partition projections live in different algebras")
        if not (e @ e).allclose(e, PROJECTION_ATOL) or not e.is_hermitian():
            raise PreconditionError(f"partition entry {i} is not a projection", "e = e* = e^2")
        if e.trace().real <= PROJECTION_ATOL:
            raise PreconditionError(f"partition entry {i} has zero trace", "tau(e_i) > 0")
        for j in range(i):
            if (e @ partition[j]).max_abs() > PROJECTION_ATOL:
                raise PreconditionError(
                    f"partition entries {j} and {i} overlap", "e_i e_j = 0 for i != j"
                )


def conditional_expectation(x: Element, partition: Sequence[Element]) -> Element:
    """E(x) = sum_i (tau(x e_i)/tau(e_i)) e_i."""
    _check_partition(partition)
    if partition[0].algebra != x.algebra:
        raise AlgebraMismatchError("partition and element live in different algebras")
    out = x.algebra.zero()
    for e in partition:
        out = out + e * ((x @ e).trace() / e.trace().real)
    return out


def diagonal_partition(algebra: Algebra) -> List[Element]:
    """Rank-one diagonal projections, the finest diagonal partition of the unit."""
    out = []
    for i in range(algebra.total_dim):
        values = np.zeros(algebra.total_dim)
        values[i] = 1.0
        out.append(algebra.diag(values))
    return out


def block_partition(algebra: Algebra) -> List[Element]:
    """Central projections: the unit of each block."""
    out = []
    for k in range(len(algebra.blocks)):
        blocks = [
            np.eye(d, dtype=complex) if i == k else np.zeros((d, d), dtype=complex)
            for i, d in enumerate(algebra.dims)
        ]
        out.append(Element(algebra, tuple(blocks)))
    return out


def spectral_partition(projections: Sequence[Element]) -> List[Element]:
    """Completes a family of orthogonal projections with 1 - sum e_i when that is nonzero."""
    algebra = projections[0].algebra
    rest = algebra.identity()
    for e in projections:
        rest = rest - e
    out = list(projections)
    if rest.trace().real > PROJECTION_ATOL:
        out.append(rest)
    return out
