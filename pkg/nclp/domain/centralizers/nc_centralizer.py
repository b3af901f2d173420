"""
nc_centralizer.py
Noncommutative centralizers on L^p(M, tau), all of the form
x = u|x|  ->  u * h(|x|) with h(t) = t * psi(log(t/||x||_p)), plus the
spectral lifting of lazy commutative centralizers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from nclp.app.exceptions import NotLazyError, PreconditionError
from nclp.domain.algebra.algebra import Element
from nclp.domain.algebra.spectral import func_calc, lp_norm, polar, spectral_decomposition
from nclp.domain.centralizers.scalar_functions import LipschitzFunction
from nclp.domain.commutative.centralizers import CommCentralizer
from nclp.domain.commutative.step_function import StepFunction


class NCKind(Enum):
    OMEGA_P = "omega_p"
    LIPSCHITZ = "lipschitz"
    PHI_PLUS = "phi_plus"
    PHI_MINUS = "phi_minus"
    LIFTED = "lifted"


def _check_p(p: float) -> None:
    if not (1 < p < math.inf):
        raise PreconditionError(f"p must lie in (1, inf), got {p}", "p in (1, inf)")


def _spectral_centralizer(x: Element, p: float, psi: Callable[[float], complex]) -> Element:
    _check_p(p)
    norm = lp_norm(x, p)
    if norm == 0.0:
        return x.algebra.zero()
    u, m = polar(x)

    def h(t: float) -> complex:
        # 0 log 0 := 0
        if t <= 0:
            return 0j
        return t * complex(psi(math.log(t / norm)))

    return u @ func_calc(m, h)


def omega_p(x: Element, p: float) -> Element:
    """Kalton-Peck map p u|x| log(|x|/||x||_p)."""
    return _spectral_centralizer(x, p, lambda s: p * s)


def kp_lipschitz(x: Element, p: float, phi: LipschitzFunction) -> Element:
    """u|x| phi(p log(|x|/||x||_p))."""
    return _spectral_centralizer(x, p, lambda s: phi(p * s))


def phi_pm(x: Element, p: float, positive: bool) -> Element:
    """u|x| max(0, log(|x|/||x||_p)) for the + sign, min(0, ...) for the - sign.

    The argument carries no factor p, so phi_pm(+) + phi_pm(-) = omega_p / p.
    """
    if positive:
        return _spectral_centralizer(x, p, lambda s: max(0.0, s))
    return _spectral_centralizer(x, p, lambda s: min(0.0, s))


def lift_centralizer(phi: CommCentralizer, x: Element, p: float) -> Element:
    """Spectral lifting u * sum_j s_j e_j of a lazy commutative centralizer.

    The atoms are the distinct nonzero singular values of x in decreasing
    order, each with measure tau(e_j); s_j is the value of phi on atom j.
    """
    if not phi.is_lazy:
        raise NotLazyError(f"{phi.describe()} is not lazy", "phi lazy")
    _check_p(p)
    if phi.p != p:
        raise PreconditionError(f"centralizer exponent {phi.p} does not match p = {p}")
    if lp_norm(x, p) == 0.0:
        return x.algebra.zero()
    u, m = polar(x)
    sd = spectral_decomposition(m)
    atoms = sd.nonzero()
    atoms.sort(key=lambda item: -item[0])
    f = StepFunction(tuple((complex(value), float(e.trace().real)) for value, e in atoms))
    image = phi(f)
    out = x.algebra.zero()
    for s, (_, e) in zip(image.values, atoms):
        out = out + e * complex(s)
    return u @ out


@dataclass(frozen=True)
class NCCentralizer:
    kind: NCKind
    p: float
    phi: Optional[LipschitzFunction] = None
    comm: Optional[CommCentralizer] = None

    def __post_init__(self) -> None:
        _check_p(self.p)
        if self.kind is NCKind.LIPSCHITZ and self.phi is None:
            raise PreconditionError("lipschitz centralizer needs a scalar function")
        if self.kind is NCKind.LIFTED:
            if self.comm is None:
                raise PreconditionError("lifted centralizer needs a commutative centralizer")
            if not self.comm.is_lazy:
                raise NotLazyError(f"{self.comm.describe()} is not lazy", "phi lazy")

    @classmethod
    def omega(cls, p: float) -> NCCentralizer:
        return cls(NCKind.OMEGA_P, p)

    @classmethod
    def lipschitz(cls, p: float, phi: LipschitzFunction) -> NCCentralizer:
        return cls(NCKind.LIPSCHITZ, p, phi=phi)

    @classmethod
    def lifted(cls, comm: CommCentralizer) -> NCCentralizer:
        return cls(NCKind.LIFTED, comm.p, comm=comm)

    @property
    def is_linear(self) -> bool:
        return self.kind is NCKind.LIPSCHITZ and self.phi is not None and self.phi.is_constant

    def __call__(self, x: Element) -> Element:
        if self.kind is NCKind.OMEGA_P:
            return omega_p(x, self.p)
        if self.kind is NCKind.LIPSCHITZ:
            assert self.phi is not None
            return kp_lipschitz(x, self.p, self.phi)
        if self.kind is NCKind.PHI_PLUS:
            return phi_pm(x, self.p, positive=True)
        if self.kind is NCKind.PHI_MINUS:
            return phi_pm(x, self.p, positive=False)
        assert self.comm is not None
        return lift_centralizer(self.comm, x, self.p)

    def describe(self) -> str:
        if self.kind is NCKind.LIPSCHITZ and self.phi is not None:
            return f"lipschitz(p={self.p:g}, phi={self.phi.name})"
        if self.kind is NCKind.LIFTED and self.comm is not None:
            return f"lifted[{self.comm.describe()}]"
        return f"{self.kind.value}(p={self.p:g})"
