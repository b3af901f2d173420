"""
twisted_pair.py
Points (g, f) of the twisted sum L^p +_Omega L^p with the quasi-norm
||g - Omega f||_p + ||f||_p, and the bimodule action on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from nclp.app.exceptions import AlgebraMismatchError
from nclp.domain.algebra.algebra import Element, Scalar
from nclp.domain.algebra.spectral import lp_norm

Centralizer = Callable[[Element], Element]


@dataclass(frozen=True)
class TwistedPair:
    g: Element
    f: Element
    centralizer: Centralizer
    p: float

    def __post_init__(self) -> None:
        if self.g.algebra != self.f.algebra:
            raise AlgebraMismatchError("twisted pair coordinates live in different algebras")

    def with_coordinates(self, g: Element, f: Element) -> TwistedPair:
        return TwistedPair(g, f, self.centralizer, self.p)

    def __add__(self, other: TwistedPair) -> TwistedPair:
        return self.with_coordinates(self.g + other.g, self.f + other.f)

    def __mul__(self, c: Scalar) -> TwistedPair:
        return self.with_coordinates(self.g * c, self.f * c)

    __rmul__ = __mul__


def quasi_norm(pair: TwistedPair) -> float:
    """||g - Omega(f)||_p + ||f||_p, with Omega(0) = 0."""
    omega_f = pair.f.algebra.zero() if pair.f.is_zero() else pair.centralizer(pair.f)
    return lp_norm(pair.g - omega_f, pair.p) + lp_norm(pair.f, pair.p)


def module_action(a: Element, pair: TwistedPair, b: Optional[Element] = None) -> TwistedPair:
    """(a g b, a f b); b omitted is the left action."""
    if a.algebra != pair.g.algebra or (b is not None and b.algebra != pair.g.algebra):
        raise AlgebraMismatchError("module action across different algebras")
    if b is None:
        return pair.with_coordinates(a @ pair.g, a @ pair.f)
    return pair.with_coordinates(a @ pair.g @ b, a @ pair.f @ b)


def module_bound(
    a: Element, pair: TwistedPair, b: Optional[Element], c_hat: float
) -> Tuple[float, float]:
    """(||a(g,f)b||, M ||a|| ||(g,f)|| ||b||) with M = 1 + c_hat."""
    moved = module_action(a, pair, b)
    b_norm = 1.0 if b is None else lp_norm(b, float("inf"))
    lhs = quasi_norm(moved)
    rhs = (1.0 + c_hat) * lp_norm(a, float("inf")) * quasi_norm(pair) * b_norm
    return lhs, rhs
