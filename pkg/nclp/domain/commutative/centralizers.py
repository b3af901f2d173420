"""
centralizers.py
Commutative centralizers on step functions: the Kalton-Peck map, the
two-variable family f * phi(log(|f|/||f||_p), log r_f), the Phi+/Phi- pair,
laziness projection, symmetry defects and real decompositions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Protocol, Tuple, Union

import numpy as np
from scipy.integrate import quad

from nclp.app.exceptions import PreconditionError
from nclp.app.utils.logger import get_logger
from nclp.config import QUAD_EPSABS, QUAD_EPSREL, QUAD_LIMIT
from nclp.domain.commutative.step_function import (
    RankPiece,
    StepFunction,
    check_measure_preserving,
    level_sets,
    rank_function,
)

logger = get_logger()


class CommKind(Enum):
    KALTON_PECK = "kalton_peck"
    TWO_VARIABLE = "two_variable"
    PHI_PLUS = "phi_plus"
    PHI_MINUS = "phi_minus"
    CUSTOM = "custom"


@dataclass(frozen=True)
class TwoVariableFunction:
    """A Lipschitz map phi(a, b) of (log(|f|/||f||_p), log r_f).

    `uses_rank` False promises phi does not depend on b, which makes the
    centralizer exact per atom (no integration).
    """

    name: str
    fn: Callable[[float, float], complex]
    uses_rank: bool = True
    lipschitz: float = 1.0

    def __call__(self, a: float, b: float) -> complex:
        return complex(self.fn(a, b))


def _xlogx_minus_x(r: float) -> float:
    return r * math.log(r) - r if r > 0 else 0.0


def log_rank_integral(piece: RankPiece) -> float:
    """Integral of log r_f over one atom: [r log r - r] between offset and offset + measure."""
    return _xlogx_minus_x(piece.offset + piece.measure) - _xlogx_minus_x(piece.offset)


def _complex_quad(fn: Callable[[float], complex], lo: float, hi: float) -> complex:
    re, _ = quad(
        lambda s: fn(s).real, lo, hi, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT
    )
    im, _ = quad(
        lambda s: fn(s).imag, lo, hi, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT
    )
    return complex(re, im)


class PointExpression(Protocol):
    """A function on the support of f, integrable on every atom."""

    def atom_integral(self, f: StepFunction, index: int) -> complex:
        ...


@dataclass(frozen=True)
class LogRankExpression:
    """t -> log r_f(t)."""

    def at(self, f: StepFunction, index: int, s: float) -> float:
        piece = rank_function(f)[index]
        return math.log(piece.offset + s)

    def atom_integral(self, f: StepFunction, index: int) -> complex:
        return complex(log_rank_integral(rank_function(f)[index]))


@dataclass(frozen=True)
class TwoVariableExpression:
    """t -> f(t) * phi(log(|f(t)|/||f||_p), log r_f(t))."""

    p: float
    phi: TwoVariableFunction

    def at(self, f: StepFunction, index: int, s: float) -> complex:
        """Raw value at offset s in [0, measure) inside atom `index`."""
        value = f.atoms[index][0]
        if value == 0:
            return 0j
        a = math.log(abs(value) / f.lp_norm(self.p))
        piece = rank_function(f)[index]
        return value * self.phi(a, math.log(piece.offset + s))

    def atom_integral(self, f: StepFunction, index: int) -> complex:
        value, measure = f.atoms[index]
        if value == 0:
            return 0j
        a = math.log(abs(value) / f.lp_norm(self.p))
        if not self.phi.uses_rank:
            return value * self.phi(a, 0.0) * measure
        piece = rank_function(f)[index]
        return value * _complex_quad(
            lambda r: self.phi(a, math.log(r)), piece.offset, piece.offset + piece.measure
        )


Expression = Union[StepFunction, PointExpression]


def _atom_integrals(expression: Expression, f: StepFunction) -> np.ndarray:
    if isinstance(expression, StepFunction):
        return expression.values * f.measures
    return np.array([expression.atom_integral(f, i) for i in range(len(f))], dtype=complex)


def laziness_project(expression: Expression, f: StepFunction) -> StepFunction:
    """Average the expression over each level set of f (atoms with equal value pooled)."""
    integrals = _atom_integrals(expression, f)
    measures = f.measures
    out = np.zeros(len(f), dtype=complex)
    for group in level_sets(f):
        out[group] = integrals[group].sum() / measures[group].sum()
    return f.with_values(out)


def atom_average(expression: Expression, f: StepFunction) -> StepFunction:
    """Average the expression over each atom separately."""
    return f.with_values(_atom_integrals(expression, f) / f.measures)


def _zero_like(f: StepFunction) -> StepFunction:
    return f.with_values(np.zeros(len(f)))


def _check_p(p: float) -> None:
    if not (1 < p < math.inf):
        raise PreconditionError(f"p must lie in (1, inf), got {p}", "p in (1, inf)")


def kp_two_variable(
    f: StepFunction, p: float, phi: TwoVariableFunction, lazy: bool = True
) -> StepFunction:
    """f * phi(log(|f|/||f||_p), log r_f) resolved on the atoms of f.

    lazy: level-set averages (a lazy output); otherwise per-atom averages.
    """
    _check_p(p)
    if f.is_zero():
        return _zero_like(f)
    expression = TwoVariableExpression(p, phi)
    return laziness_project(expression, f) if lazy else atom_average(expression, f)


def _log_ratio(f: StepFunction, p: float) -> np.ndarray:
    """log(|f|/||f||_p) per atom; 0 on zero atoms (they are multiplied by 0)."""
    mags = np.abs(f.values)
    norm = f.lp_norm(p)
    with np.errstate(divide="ignore"):
        logs = np.where(mags > 0, np.log(np.where(mags > 0, mags, 1.0) / norm), 0.0)
    return logs


def kalton_peck(f: StepFunction, p: float) -> StepFunction:
    """Omega_p(f) = p f log(|f|/||f||_p)."""
    _check_p(p)
    if f.is_zero():
        return _zero_like(f)
    return f.with_values(p * f.values * _log_ratio(f, p))


def phi_sign(f: StepFunction, p: float, positive: bool) -> StepFunction:
    """f * max(0, log(|f|/||f||_p)) or f * min(0, ...)."""
    _check_p(p)
    if f.is_zero():
        return _zero_like(f)
    logs = _log_ratio(f, p)
    cut = np.maximum(logs, 0.0) if positive else np.minimum(logs, 0.0)
    return f.with_values(f.values * cut)


@dataclass(frozen=True)
class CommCentralizer:
    kind: CommKind
    p: float
    two_variable: Optional[TwoVariableFunction] = None
    custom: Optional[Callable[[StepFunction], StepFunction]] = field(default=None, compare=False)
    custom_lazy: bool = False
    name: str = ""

    def __post_init__(self) -> None:
        _check_p(self.p)
        if self.kind is CommKind.TWO_VARIABLE and self.two_variable is None:
            raise PreconditionError("two_variable centralizer needs a function phi(a, b)")
        if self.kind is CommKind.CUSTOM and self.custom is None:
            raise PreconditionError("custom centralizer needs a callable")

    @classmethod
    def kalton_peck(cls, p: float) -> CommCentralizer:
        return cls(CommKind.KALTON_PECK, p)

    @classmethod
    def phi_plus(cls, p: float) -> CommCentralizer:
        return cls(CommKind.PHI_PLUS, p)

    @classmethod
    def phi_minus(cls, p: float) -> CommCentralizer:
        return cls(CommKind.PHI_MINUS, p)

    @classmethod
    def from_two_variable(cls, p: float, phi: TwoVariableFunction) -> CommCentralizer:
        return cls(CommKind.TWO_VARIABLE, p, two_variable=phi)

    @classmethod
    def from_callable(
        cls,
        p: float,
        fn: Callable[[StepFunction], StepFunction],
        lazy: bool = False,
        name: str = "custom",
    ) -> CommCentralizer:
        return cls(CommKind.CUSTOM, p, custom=fn, custom_lazy=lazy, name=name)

    @property
    def is_lazy(self) -> bool:
        if self.kind is CommKind.CUSTOM:
            return self.custom_lazy
        return True

    def __call__(self, f: StepFunction) -> StepFunction:
        if self.kind is CommKind.KALTON_PECK:
            return kalton_peck(f, self.p)
        if self.kind is CommKind.PHI_PLUS:
            return phi_sign(f, self.p, positive=True)
        if self.kind is CommKind.PHI_MINUS:
            return phi_sign(f, self.p, positive=False)
        if self.kind is CommKind.TWO_VARIABLE:
            assert self.two_variable is not None
            return kp_two_variable(f, self.p, self.two_variable, lazy=True)
        assert self.custom is not None
        if f.is_zero():
            return _zero_like(f)
        return self.custom(f)

    def describe(self) -> str:
        label = self.name or (self.two_variable.name if self.two_variable else "")
        return f"{self.kind.value}(p={self.p:g}{', ' + label if label else ''})"


def symmetry_defect(phi: CommCentralizer, f: StepFunction, perm: List[int]) -> float:
    """||Phi(f o perm) - (Phi f) o perm||_p / ||f||_p."""
    check_measure_preserving(f, perm)
    norm = f.lp_norm(phi.p)
    if norm == 0.0:
        return 0.0
    diff = phi(f.permute(perm)) - phi(f).permute(perm)
    defect = diff.lp_norm(phi.p) / norm
    logger.debug(f"symmetry defect of {phi.describe()} under {perm}: {defect:.3e}")
    return defect


def real_decomposition(phi: CommCentralizer) -> Tuple[CommCentralizer, CommCentralizer]:
    """Phi_1(f) = Re Phi(Re f) + i Re Phi(Im f), Phi_2(f) = Im Phi(Re f) - i Im Phi(Im f).

    Phi_1(f) + i Phi_2(f) = Phi(f) for real f.
    """

    def first(f: StepFunction) -> StepFunction:
        return phi(f.real()).real() + phi(f.imag()).real() * 1j

    def second(f: StepFunction) -> StepFunction:
        return phi(f.real()).imag() - phi(f.imag()).imag() * 1j

    base = phi.describe()
    return (
        CommCentralizer.from_callable(phi.p, first, lazy=phi.is_lazy, name=f"re[{base}]"),
        CommCentralizer.from_callable(phi.p, second, lazy=phi.is_lazy, name=f"im[{base}]"),
    )
