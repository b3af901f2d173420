"""Connes-Radon-Nikodym cocycles of density pairs and the change-of-state isometry."""

import math

from nclp.app.exceptions import AlgebraMismatchError, PreconditionError
from nclp.domain.algebra.algebra import Element
from nclp.domain.interpolation.kosaki import StateDensity


def cocycle(d0: StateDensity, d1: StateDensity, z: complex) -> Element:
    """d0^z d1^{-z}; unitary for purely imaginary z."""
    if d0.algebra != d1.algebra:
        raise AlgebraMismatchError("densities live in different algebras")
    return d0.power(z) @ d1.power(-z)


def change_of_state(a: Element, d0: StateDensity, d1: StateDensity, p: float) -> Element:
    """Coefficient of alpha(a phi_0) in the phi_1 picture: a d0^{1/p} d1^{-1/p}.

    Preserves the left Kosaki p-norm; d0 = d1 returns a itself.
    """
    if not (1 < p < math.inf):
        raise PreconditionError(f"p must lie in (1, inf), got {p}", "p in (1, inf)")
    if a.algebra != d0.algebra:
        raise AlgebraMismatchError("element and densities live in different algebras")
    if d0.same_as(d1):
        return a
    return a @ cocycle(d0, d1, 1.0 / p)
