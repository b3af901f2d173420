"""
step_function.py
Finite step functions on R+ (atoms laid end to end from 0), their rank
functions and decreasing rearrangements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from nclp.app.exceptions import PreconditionError


@dataclass(frozen=True)
class StepFunction:
    """sum_i value_i * 1_{A_i}, |A_i| = measure_i, atoms consecutive in list order."""

    atoms: Tuple[Tuple[complex, float], ...]

    def __post_init__(self) -> None:
        clean = []
        for value, measure in self.atoms:
            if not (measure > 0 and math.isfinite(measure)):
                raise PreconditionError(f"atom measure must be > 0, got {measure}", "measures > 0")
            clean.append((complex(value), float(measure)))
        object.__setattr__(self, "atoms", tuple(clean))

    @classmethod
    def from_lists(cls, values: Sequence[complex], measures: Sequence[float]) -> StepFunction:
        if len(values) != len(measures):
            raise PreconditionError("values and measures differ in length")
        return cls(tuple(zip((complex(v) for v in values), (float(m) for m in measures))))

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.atoms], dtype=complex)

    @property
    def measures(self) -> np.ndarray:
        return np.array([m for _, m in self.atoms], dtype=float)

    @property
    def starts(self) -> np.ndarray:
        """Left endpoint of every atom."""
        m = self.measures
        return np.concatenate([[0.0], np.cumsum(m)[:-1]]) if m.size else m

    @property
    def support(self) -> float:
        return float(self.measures.sum())

    def __len__(self) -> int:
        return len(self.atoms)

    def is_zero(self) -> bool:
        return all(v == 0 for v, _ in self.atoms)

    def lp_norm(self, p: float) -> float:
        if not (p >= 1 or math.isinf(p)):
            raise PreconditionError(f"p must be >= 1 or inf, got {p}")
        if not self.atoms:
            return 0.0
        mags = np.abs(self.values)
        if math.isinf(p):
            return float(mags.max())
        return float(np.sum(mags ** p * self.measures) ** (1.0 / p))

    def with_values(self, values: Iterable[complex]) -> StepFunction:
        """Same atom structure, new values."""
        vals = list(values)
        if len(vals) != len(self.atoms):
            raise PreconditionError("value count does not match the atom structure")
        return StepFunction(tuple((complex(v), m) for v, (_, m) in zip(vals, self.atoms)))

    def _check_structure(self, other: StepFunction) -> None:
        if len(other) != len(self) or not np.array_equal(other.measures, self.measures):
            raise PreconditionError("step functions have different atom structures")

    def __add__(self, other: StepFunction) -> StepFunction:
        self._check_structure(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: StepFunction) -> StepFunction:
        self._check_structure(other)
        return self.with_values(self.values - other.values)

    def __mul__(self, c: complex) -> StepFunction:
        return self.with_values(self.values * c)

    __rmul__ = __mul__

    def abs(self) -> StepFunction:
        return self.with_values(np.abs(self.values))

    def real(self) -> StepFunction:
        return self.with_values(self.values.real)

    def imag(self) -> StepFunction:
        return self.with_values(self.values.imag)

    def permute(self, perm: Sequence[int]) -> StepFunction:
        """f o perm: atom i takes the value of atom perm[i]; measures must match."""
        check_measure_preserving(self, perm)
        vals = self.values
        return self.with_values(vals[list(perm)])

    def allclose(self, other: StepFunction, atol: float = 1e-12) -> bool:
        self._check_structure(other)
        return bool(np.all(np.abs(self.values - other.values) <= atol))


def check_measure_preserving(f: StepFunction, perm: Sequence[int]) -> None:
    n = len(f)
    if sorted(perm) != list(range(n)):
        raise PreconditionError("not a permutation of the atoms")
    m = f.measures
    for i, j in enumerate(perm):
        if m[i] != m[j]:
            raise PreconditionError(
                f"atoms {i} and {j} have different measures",
                "perm permutes only atoms of equal measure",
            )


@dataclass(frozen=True)
class RankPiece:
    """r_f(t) = offset + (t - start) for t in [start, start + measure)."""

    offset: float
    start: float
    measure: float

    @property
    def right_value(self) -> float:
        return self.offset + self.measure


def rank_function(f: StepFunction) -> List[RankPiece]:
    """Per-atom offsets m_i = |{|f| > |v_i|}| + measure of earlier atoms with equal |v_i|."""
    mags = np.abs(f.values)
    measures = f.measures
    starts = f.starts
    pieces = []
    for i, level in enumerate(mags):
        above = float(np.sum(measures[mags > level]))
        earlier = float(np.sum(measures[:i][mags[:i] == level]))
        pieces.append(RankPiece(above + earlier, float(starts[i]), float(measures[i])))
    return pieces


def level_sets(f: StepFunction) -> List[List[int]]:
    """Atom indices grouped by exact equality of value (the atoms of sigma(f)), in order of first appearance."""
    groups: dict[complex, List[int]] = {}
    for i, (value, _) in enumerate(f.atoms):
        groups.setdefault(value, []).append(i)
    return list(groups.values())


def rearrangement(f: StepFunction) -> StepFunction:
    """Decreasing rearrangement of |f|, equal values merged."""
    merged: dict[float, float] = {}
    for value, measure in f.atoms:
        level = abs(value)
        merged[level] = merged.get(level, 0.0) + measure
    atoms = sorted(merged.items(), key=lambda item: -item[0])
    return StepFunction(tuple((complex(v), m) for v, m in atoms))
