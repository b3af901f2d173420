"""Finite-dimensional algebras, elements and their spectral calculus.

An Algebra is a direct sum of matrix blocks with a weighted trace; every
operation here is pure and works on immutable Elements.
"""

from nclp.domain.algebra.algebra import Algebra, Block, Element, embed, restrict, trace
from nclp.domain.algebra.expectation import (
    block_partition,
    conditional_expectation,
    diagonal_partition,
)
from nclp.domain.algebra.spectral import (
    MuFunction,
    SpectralData,
    absolute_value,
    func_calc,
    lp_norm,
    mu,
    normalize,
    polar,
    power,
    spectral_decomposition,
    split_at_level,
)

__all__ = [
    "Algebra",
    "Block",
    "Element",
    "embed",
    "restrict",
    "trace",
    "block_partition",
    "conditional_expectation",
    "diagonal_partition",
    "MuFunction",
    "SpectralData",
    "absolute_value",
    "func_calc",
    "lp_norm",
    "mu",
    "normalize",
    "polar",
    "power",
    "spectral_decomposition",
    "split_at_level",
]
