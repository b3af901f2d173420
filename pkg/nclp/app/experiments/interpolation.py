"""
interpolation.py
Experiments on the interpolation side: Kosaki norms and derivations, change of
state, the derivative bound on ker delta_theta, and Rochberg-Weiss extremals.
"""

import math
from typing import Tuple

import numpy as np

from nclp.app.experiment_config import ExperimentConfig
from nclp.app.experiments.common import Tally, scaled_defect, trial_algebra
from nclp.app.experiments.registry import experiment
from nclp.app.report import Findings
from nclp.domain.algebra.algebra import Algebra, Element
from nclp.domain.algebra.sampling import (
    random_density,
    random_element,
    random_positive,
    random_positive_diagonal,
    random_weights,
    trial_rng,
)
from nclp.domain.algebra.spectral import lp_norm, normalize
from nclp.domain.centralizers.nc_centralizer import NCCentralizer, omega_p
from nclp.domain.interpolation import (
    ConformalMultiple,
    InterpolationCouple,
    StateDensity,
    StripFunction,
    boundary_norm,
    calderon_norm_search,
    change_of_state,
    cocycle,
    derivative_bound_check,
    fan_defect,
    kosaki_derivation_left,
    kosaki_norm,
    power_function,
    random_kernel_function,
    rw_pair,
)
from nclp.domain.twisted_sum.twisted_pair import quasi_norm
from nclp.utils import relative_error

ENDPOINT_P = (100.0, 1.01)


def _diagonal_case(
    rng: np.random.Generator, max_dim: int
) -> Tuple[Algebra, np.ndarray, StateDensity, Element]:
    """Diagonal a >= 0 and diagonal density on M_n."""
    n = int(rng.integers(1, max_dim + 1))
    algebra = Algebra.matrix(n)
    w = random_weights(n, rng)
    d = StateDensity(algebra.diag(w), float(np.sum(w)))
    a = random_positive_diagonal(algebra, rng)
    return algebra, w, d, a


@experiment("kosaki")
def run_kosaki(config: ExperimentConfig) -> Findings:
    findings = Findings()
    weighted = Tally("kosaki norm equals the weighted l^p formula", 1e-10)
    collapse = Tally("tracial collapse c^(1/p) ||a||_p", 1e-10)
    tracial = Tally("tracial derivation equals c (omega_p(a) - log c a)", 1e-10)
    commuting = Tally("commuting derivation equals p a log a w", 1e-10)
    fan = Tally("fan estimate in the commuting case", 0.0)
    max_dim = max(config.dims)
    noncommuting_ratio = 0.0
    endpoint_gaps = {p: 0.0 for p in ENDPOINT_P}

    for i in range(config.trials):
        rng = trial_rng(config.seed, i)
        algebra, w, d, a = _diagonal_case(rng, max_dim)
        values = np.abs(a.diagonal())
        for p in config.p_values:
            expected = float(np.sum(w * values ** p)) ** (1.0 / p)
            weighted.add(relative_error(kosaki_norm(a, d, p), expected))

        general = trial_algebra(config, rng)
        x = random_element(general, rng)
        c = float(rng.uniform(0.1, 10.0))
        scaled = StateDensity(general.scalar(c), c * general.total_trace)
        tracial_state = StateDensity.tracial(general)
        inv_mass = 1.0 / general.total_trace
        for p in config.p_values:
            collapse.add(relative_error(kosaki_norm(x, scaled, p), c ** (1.0 / p) * lp_norm(x, p)))
            derived = kosaki_derivation_left(x, tracial_state, p)
            target = (omega_p(x, p) - x * math.log(inv_mass)) * inv_mass
            tracial.add(lp_norm(derived - target, p) / max(lp_norm(target, p), lp_norm(x, p)))

        p = config.p
        f = a / kosaki_norm(a, d, p)
        values = np.real(f.diagonal())
        target_diag = p * values * np.log(values) * w
        derived = kosaki_derivation_left(f, d, p)
        commuting.add(
            float(np.max(np.abs(derived.diagonal() - target_diag)))
            / max(1.0, float(np.max(np.abs(target_diag))))
        )

        b = algebra.diag(rng.standard_normal(algebra.total_dim) + 1j * rng.standard_normal(algebra.total_dim))
        c_elem = algebra.diag(rng.standard_normal(algebra.total_dim) + 1j * rng.standard_normal(algebra.total_dim))
        result = fan_defect(b, c_elem, d, p)
        fan.add(max(0.0, result.ratio - result.bound * (1.0 + 1e-12)))

        for endpoint_p in ENDPOINT_P:
            if endpoint_p > 2:
                gap = relative_error(kosaki_norm(a, d, endpoint_p), lp_norm(a, math.inf))
            else:
                gap = relative_error(kosaki_norm(a, d, endpoint_p), lp_norm(a @ d.d, 1.0))
            endpoint_gaps[endpoint_p] = max(endpoint_gaps[endpoint_p], gap)

    for tally in (weighted, collapse, tracial, commuting, fan):
        tally.record(findings)

    # noncommuting densities: measured only
    fan_trials = int(config.param("fan_noncommuting_trials", min(config.trials, 20)))
    dim = int(config.param("fan_dim", 3))
    algebra = Algebra.matrix(dim)
    for i in range(fan_trials):
        rng = trial_rng(config.seed, config.trials + i)
        d = StateDensity(random_density(algebra, rng), 1.0)
        result = fan_defect(random_element(algebra, rng), random_element(algebra, rng), d, config.p)
        noncommuting_ratio = max(noncommuting_ratio, result.ratio)
    findings.row(
        {"property": "fan estimate, noncommuting density", "dim": dim, "p": config.p, "trials": fan_trials},
        {"max_ratio": noncommuting_ratio, "bound": math.pi / math.sin(math.pi / config.p)},
    )

    for endpoint_p, gap in endpoint_gaps.items():
        findings.row(
            {"property": "endpoint continuity", "p": endpoint_p, "endpoint": "inf" if endpoint_p > 2 else "1"},
            {"max_relative_gap": gap},
        )

    cases = int(config.param("calderon_cases", 0))
    for i in range(cases):
        rng = trial_rng(config.seed, 10_000 + i)
        algebra = Algebra.matrix(2)
        w = random_weights(2, rng)
        d = StateDensity(algebra.diag(w), float(np.sum(w)))
        a = random_positive_diagonal(algebra, rng)
        p = config.p
        couple = InterpolationCouple.named("kosaki_left", algebra, d)
        search = calderon_norm_search(a @ d.d, couple, 1.0 / p)
        formula = kosaki_norm(a, d, p)
        error = relative_error(search.value, formula)
        findings.row(
            {"property": "calderon oracle", "case": i, "p": p},
            {"search": search.value, "evaluations": search.evaluations},
            {"search": formula},
        )
        findings.check(f"calderon oracle case {i}", error <= 1e-3, f"relative error {error:.3e}")
    return findings


@experiment("change-of-state")
def run_change_of_state(config: ExperimentConfig) -> Findings:
    findings = Findings()
    isometry = Tally("change of state preserves the kosaki norm", 1e-8)
    identity = Tally("equal states give the identity map", 0.0)
    equivariance = Tally("change of state is left-module equivariant", 1e-10)
    unitary = Tally("cocycle unitary on the imaginary axis", 1e-10)
    dim = int(config.param("dim", 4))
    algebra = Algebra.matrix(dim)
    worst_commutator = 0.0
    smallest_commutator = math.inf
    for i in range(config.trials):
        rng = trial_rng(config.seed, i)
        d0 = StateDensity(random_density(algebra, rng), 1.0)
        d1 = StateDensity(random_density(algebra, rng), 1.0)
        commutator = d0.d.commutator(d1.d).max_abs()
        worst_commutator = max(worst_commutator, commutator)
        smallest_commutator = min(smallest_commutator, commutator)
        a = random_element(algebra, rng)
        b = random_element(algebra, rng)
        for p in config.p_values:
            moved = change_of_state(a, d0, d1, p)
            isometry.add(relative_error(kosaki_norm(moved, d1, p), kosaki_norm(a, d0, p)))
            identity.add(0.0 if change_of_state(a, d0, d0, p) == a else 1.0)
            left = change_of_state(b @ a, d0, d1, p)
            right = b @ moved
            equivariance.add(scaled_defect((left - right).max_abs(), right.max_abs()))
        t = float(rng.standard_normal())
        u = cocycle(d0, d1, 1j * t)
        unitary.add(
            max(
                (u.adjoint() @ u - algebra.identity()).max_abs(),
                abs(lp_norm(u, math.inf) - 1.0),
            )
        )
    for tally in (isometry, identity, equivariance, unitary):
        tally.record(findings, {"dim": dim})
    findings.row(
        {"property": "density noncommutativity", "dim": dim},
        {"min_commutator": smallest_commutator, "max_commutator": worst_commutator},
    )
    return findings


def _random_strip_function(
    algebra: Algebra, rng: np.random.Generator, n_terms: int, lam: float, rate_scale: float
) -> StripFunction:
    rates = rng.uniform(-rate_scale, rate_scale, size=n_terms)
    return StripFunction(lam, tuple((float(r), random_element(algebra, rng)) for r in rates))


@experiment("derivative-bound")
def run_derivative_bound(config: ExperimentConfig) -> Findings:
    findings = Findings()
    strip = config.strip
    for name in config.couples:
        for theta in config.thetas:
            violations = 0
            worst = 0.0
            for i in range(config.trials):
                rng = trial_rng(config.seed, i)
                algebra = config.build_algebra(default_dim=int(config.param("dim", 2)))
                density = None if name == "M_L1" else StateDensity(random_density(algebra, rng), 1.0)
                couple = InterpolationCouple.named(name, algebra, density)
                if i % 2 == 0:
                    F = random_kernel_function(
                        algebra, theta, rng, strip.n_terms, strip.lam, strip.rate_scale
                    )
                else:
                    base = _random_strip_function(algebra, rng, strip.n_terms, strip.lam, strip.rate_scale)
                    F = ConformalMultiple(base, theta, k=1 + (i // 2) % 2)
                bound = derivative_bound_check(F, couple, theta, strip.t_max, strip.t_step)
                if not bound.holds():
                    violations += 1
                if bound.rhs > 0:
                    worst = max(worst, bound.lhs / bound.rhs)
            findings.row(
                {"couple": name, "theta": theta, "trials": config.trials},
                {"max_ratio": worst, "violations": violations},
            )
            findings.check_violations(
                f"derivative bound [{name}, theta={theta:.4g}]",
                violations,
                config.trials,
                f"max lhs/rhs {worst:.6f}",
            )
    return findings


@experiment("rw-extremal")
def run_rw_extremal(config: ExperimentConfig) -> Findings:
    findings = Findings()
    pair_error = Tally("rochberg-weiss pair of f^(pz) equals (omega_p f, f)", 1e-10)
    unit = Tally("rochberg-weiss pair has quasi-norm 1", 1e-10)
    largest_m = 0.0
    for i in range(config.trials):
        rng = trial_rng(config.seed, i)
        algebra = trial_algebra(config, rng)
        for p in config.p_values:
            f = normalize(random_positive(algebra, rng, floor=0.01), p)
            F = power_function(f, p)
            pair = rw_pair(F, NCCentralizer.omega(p), 1.0 / p)
            expected = omega_p(f, p)
            pair_error.add(
                max(
                    lp_norm(pair.g - expected, p) / max(1.0, lp_norm(expected, p)),
                    lp_norm(pair.f - f, p),
                )
            )
            qn = quasi_norm(pair)
            unit.add(abs(qn - 1.0))
            couple = InterpolationCouple.named("M_L1", algebra)
            bn = boundary_norm(F, couple, t_max=4.0, t_step=1.0 / 16, allow_nondecaying=True).value
            largest_m = max(largest_m, qn / bn)
    pair_error.record(findings)
    unit.record(findings)
    findings.row({"property": "quasi-norm over boundary norm"}, {"max_M": largest_m})
    return findings
