"""properties: seeded invariance suites for centralizers, twisted sums, cocycles and the Kosaki pairing."""

from typing import List, Tuple

import numpy as np

from nclp.app.experiment_config import ExperimentConfig
from nclp.app.experiments.common import Tally, scaled_defect, trial_algebra
from nclp.app.experiments.registry import experiment
from nclp.app.report import Findings
from nclp.domain.algebra.algebra import Algebra, Element
from nclp.domain.algebra.sampling import (
    permutation_unitary,
    random_density,
    random_element,
    random_hermitian,
    random_unitary,
    trial_rng,
)
from nclp.domain.algebra.spectral import lp_norm, spectral_decomposition
from nclp.domain.centralizers.commutant import commutant_correction
from nclp.domain.centralizers.constants import estimate_Q_trace
from nclp.domain.centralizers.nc_centralizer import NCCentralizer, NCKind
from nclp.domain.commutative.centralizers import CommCentralizer, symmetry_defect
from nclp.domain.commutative.step_function import StepFunction
from nclp.domain.interpolation import StateDensity, beta, cocycle, kosaki_duality_pairing
from nclp.domain.twisted_sum.twisted_pair import TwistedPair, module_action, quasi_norm
from nclp.utils import conjugate_exponent

EQUIVARIANCE_RTOL = 1e-10


def _centralizers(config: ExperimentConfig, p: float) -> List[NCCentralizer]:
    out = [
        NCCentralizer.omega(p),
        NCCentralizer(NCKind.PHI_PLUS, p),
        NCCentralizer(NCKind.PHI_MINUS, p),
        NCCentralizer.lifted(CommCentralizer.kalton_peck(p)),
    ]
    out.extend(NCCentralizer.lipschitz(p, phi) for phi in config.scalar_functions())
    return out


def _pair_sampler(algebra: Algebra, rng: np.random.Generator) -> Tuple[Element, Element]:
    return random_element(algebra, rng), random_element(algebra, rng)


def _strip_point(rng: np.random.Generator) -> complex:
    return complex(rng.random(), rng.standard_normal())


@experiment("properties")
def run_properties(config: ExperimentConfig) -> Findings:
    findings = Findings()
    p = config.p
    q = conjugate_exponent(p)
    centralizers = _centralizers(config, p)
    left = {c.describe(): Tally(f"left unitary equivariance [{c.describe()}]", EQUIVARIANCE_RTOL) for c in centralizers}
    right = {c.describe(): Tally(f"right unitary equivariance [{c.describe()}]", EQUIVARIANCE_RTOL) for c in centralizers}
    permutation = Tally("permutation conjugation on diagonal elements", EQUIVARIANCE_RTOL)
    commutative = Tally("commutative centralizers are symmetric", 1e-12)
    homogeneity = Tally("quasi-norm homogeneity", EQUIVARIANCE_RTOL)
    triangle = Tally("quasi-triangle with K = 1 + Q", 0.0)
    action = Tally("unitary module action preserves the quasi-norm", EQUIVARIANCE_RTOL)
    chain = Tally("cocycle chain rule", EQUIVARIANCE_RTOL)
    unitary = Tally("cocycle unitary on the imaginary axis", EQUIVARIANCE_RTOL)
    balanced = Tally("beta is balanced", 1e-12)
    right_module = Tally("pairing right-module equivariance", 1e-12)
    commutant = Tally("commutant correction commutes with the spectral projections", EQUIVARIANCE_RTOL)

    omega = NCCentralizer.omega(p)
    fixed = config.build_algebra(default_dim=int(config.param("dim", 3)))
    q_hat = estimate_Q_trace(omega, fixed, p, config.trials, config.seed, sampler=_pair_sampler).value
    k = 1.0 + q_hat
    commutative_kinds = [
        CommCentralizer.kalton_peck(p),
        CommCentralizer.phi_plus(p),
        CommCentralizer.phi_minus(p),
    ]

    for i in range(config.trials):
        rng = trial_rng(config.seed, i)

        # quasi-triangle on the pairs the Q estimate saw
        f1, f2 = _pair_sampler(fixed, rng)
        z1 = TwistedPair(random_element(fixed, rng), f1, omega, p)
        z2 = TwistedPair(random_element(fixed, rng), f2, omega, p)
        bound = k * (quasi_norm(z1) + quasi_norm(z2))
        triangle.add(max(0.0, quasi_norm(z1 + z2) - bound * (1.0 + 1e-12)))

        c = complex(rng.standard_normal(), rng.standard_normal())
        homogeneity.add(abs(quasi_norm(z1 * c) - abs(c) * quasi_norm(z1)) / (abs(c) * quasi_norm(z1)))

        algebra = trial_algebra(config, rng)
        x = random_element(algebra, rng)
        u = random_unitary(algebra, rng)
        for centralizer in centralizers:
            image = centralizer(x)
            scale = max(lp_norm(x, p), lp_norm(image, p))
            name = centralizer.describe()
            left[name].add(lp_norm(centralizer(u @ x) - u @ image, p) / scale)
            right[name].add(lp_norm(centralizer(x @ u) - image @ u, p) / scale)

        pair = TwistedPair(random_element(algebra, rng), x, omega, p)
        v = random_unitary(algebra, rng)
        action.add(abs(quasi_norm(module_action(u, pair, v)) - quasi_norm(pair)) / quasi_norm(pair))

        n = int(rng.integers(2, max(config.dims) + 1))
        square = Algebra.matrix(n)
        diagonal = square.diag(rng.standard_normal(n) + 1j * rng.standard_normal(n))
        perm = [int(j) for j in rng.permutation(n)]
        pu = permutation_unitary(square, perm)
        moved = pu @ diagonal @ pu.adjoint()
        for centralizer in centralizers:
            expected = pu @ centralizer(diagonal) @ pu.adjoint()
            permutation.add(scaled_defect((centralizer(moved) - expected).max_abs(), expected.max_abs()))

        measure = float(rng.uniform(0.1, 10.0))
        f = StepFunction.from_lists(list(rng.standard_normal(n) + 1j * rng.standard_normal(n)), [measure] * n)
        for phi in commutative_kinds:
            commutative.add(symmetry_defect(phi, f, perm))

        d0 = StateDensity(random_density(algebra, rng), 1.0)
        d1 = StateDensity(random_density(algebra, rng), 1.0)
        d2 = StateDensity(random_density(algebra, rng), 1.0)
        z = _strip_point(rng)
        through = cocycle(d0, d1, z) @ cocycle(d1, d2, z)
        direct = cocycle(d0, d2, z)
        chain.add(scaled_defect((through - direct).max_abs(), direct.max_abs()))
        w = cocycle(d0, d1, 1j * float(rng.standard_normal()))
        unitary.add((w.adjoint() @ w - algebra.identity()).max_abs())

        a, b, e = (random_element(algebra, rng) for _ in range(3))
        f_left = a @ d0.d
        g_right = d0.d @ b
        lhs = beta(e @ f_left, g_right, d0)
        rhs = beta(f_left, g_right @ e, d0)
        balanced.add(scaled_defect(abs(lhs - rhs), abs(lhs)))

        f_prime = random_element(algebra, rng) @ d0.d
        g_prime = d0.d @ random_element(algebra, rng)
        moved_g = kosaki_duality_pairing((f_prime, f_left), (g_prime @ e, g_right @ e), d0, p, q)
        moved_f = kosaki_duality_pairing((e @ f_prime, e @ f_left), (g_prime, g_right), d0, p, q)
        right_module.add(scaled_defect(abs(moved_g - moved_f), abs(moved_f)))

        h = random_hermitian(algebra, rng)
        junk = random_element(algebra, rng)
        corrected = commutant_correction(lambda y: y @ junk, h)
        projections = spectral_decomposition(h).projections
        commutant.add(
            max(lp_norm(corrected.commutator(e), 2.0) for e in projections)
            / max(1.0, lp_norm(corrected, 2.0))
        )

    for tally in [*left.values(), *right.values()]:
        tally.record(findings, {"p": p})
    for tally in (permutation, commutative, homogeneity, action, chain, unitary, balanced, right_module, commutant):
        tally.record(findings, {"p": p})
    triangle.record(findings, {"p": p, "K": k})
    return findings
