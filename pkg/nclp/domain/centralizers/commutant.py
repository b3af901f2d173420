"""Commutant correction: compress a centralizer value onto the eigenspaces of its input."""

from typing import Callable

from nclp.app.exceptions import NotHermitianError
from nclp.domain.algebra.algebra import Element
from nclp.domain.algebra.spectral import spectral_decomposition


def commutant_correction(psi: Callable[[Element], Element], x: Element) -> Element:
    """sum_j e_j psi(x) e_j over the spectral projections e_j of a Hermitian x.

    Equals the average of w psi(x) w* over the unitaries w of the abelian
    algebra generated by the e_j.
    """
    if not x.is_hermitian():
        raise NotHermitianError("commutant correction needs a Hermitian input", "x = x*")
    y = psi(x)
    sd = spectral_decomposition(x)
    out = x.algebra.zero()
    for e in sd.projections:
        out = out + e @ y @ e
    return out
