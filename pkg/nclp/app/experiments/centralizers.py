"""
centralizers.py
Experiments on noncommutative centralizers: constant estimation, the spectral
lifting against omega_p, and the trace dependence of Phi+ and Phi-.
"""

from typing import Tuple

import numpy as np

from nclp.app.experiment_config import ExperimentConfig
from nclp.app.experiments.common import Tally
from nclp.app.experiments.registry import experiment
from nclp.app.report import Findings
from nclp.domain.algebra.algebra import Algebra, Element
from nclp.domain.algebra.sampling import (
    random_normal,
    random_positive,
    random_positive_diagonal,
    trial_rng,
)
from nclp.domain.algebra.spectral import lp_norm, normalize, split_at_level
from nclp.domain.centralizers.constants import estimate_C_trace, estimate_Q_trace
from nclp.domain.centralizers.nc_centralizer import (
    NCCentralizer,
    NCKind,
    lift_centralizer,
    omega_p,
    phi_pm,
)
from nclp.domain.commutative.centralizers import CommCentralizer

# all projection traces >= 1, so normalized positive elements have spectrum in [0, 1]
HEAVY_ALGEBRA = Algebra.from_pairs([(2, 1.0), (1, 2.5), (3, 1.5)])
# tau(1) = 1
UNIT_MASS_ALGEBRA = Algebra.from_pairs([(2, 0.25), (1, 0.5)])


def _diagonal_phase_triple(
    algebra: Algebra, rng: np.random.Generator
) -> Tuple[Element, Element, Element]:
    n = algebra.total_dim
    a = algebra.diag(np.exp(2j * np.pi * rng.random(n)))
    x = algebra.diag(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    b = algebra.diag(np.exp(2j * np.pi * rng.random(n)))
    return a, x, b


@experiment("centralizer-constants")
def run_centralizer_constants(config: ExperimentConfig) -> Findings:
    findings = Findings()
    omega = config.build_centralizer()
    algebras = [config.algebra.build()] if config.algebra else [Algebra.matrix(d) for d in config.dims]
    for algebra in algebras:
        q = estimate_Q_trace(omega, algebra, omega.p, config.trials, config.seed, workers=config.workers)
        c = estimate_C_trace(omega, algebra, omega.p, config.trials, config.seed, workers=config.workers)
        findings.row(
            {"centralizer": omega.describe(), "algebra": algebra.describe(), "trials": config.trials},
            {"Q": q.value, "C": c.value, "Q_argmax": q.argmax, "C_argmax": c.argmax},
        )
        label = algebra.describe()
        findings.check(
            f"Q monotone in trials [{label}]",
            all(a <= b for a, b in zip(q.history, q.history[1:])),
        )
        findings.check(
            f"C monotone in trials [{label}]",
            all(a <= b for a, b in zip(c.history, c.history[1:])),
        )
        if omega.is_linear:
            findings.check(f"linear centralizer has Q = 0 [{label}]", q.value <= 1e-12, f"Q = {q.value:.3e}")

    # diagonal unitaries act trivially on the spectral data of a diagonal x
    diagonal = Algebra.diagonal([1.0] * max(2, min(config.dims)))
    commuting = estimate_C_trace(
        omega, diagonal, omega.p, config.trials, config.seed, sampler=_diagonal_phase_triple
    )
    findings.row(
        {"centralizer": omega.describe(), "algebra": diagonal.describe(), "sampler": "diagonal phases"},
        {"C": commuting.value},
        {"C": 0.0},
    )
    findings.check(
        "diagonal phases commute with the centralizer",
        commuting.value <= 1e-12,
        f"C = {commuting.value:.3e}",
    )
    return findings


@experiment("lift-consistency")
def run_lift_consistency(config: ExperimentConfig) -> Findings:
    findings = Findings()
    kp = Tally("lifted kalton-peck equals omega_p", 1e-10)
    signs = Tally("lifted phi+/phi- equal phi_pm", 1e-10)
    lo, hi = int(config.param("min_dim", 2)), int(config.param("max_dim", 8))
    for i in range(config.trials):
        rng = trial_rng(config.seed, i)
        dim = int(rng.integers(lo, hi + 1))
        algebra = Algebra.matrix(dim)
        x = random_normal(algebra, rng)
        for p in config.p_values:
            lifted = lift_centralizer(CommCentralizer.kalton_peck(p), x, p)
            direct = omega_p(x, p)
            scale = max(lp_norm(x, p), lp_norm(direct, p))
            error = lp_norm(lifted - direct, p) / scale
            kp.add(error)
            findings.row({"trial": i, "dim": dim, "p": p}, {"lift_error": error}, {"lift_error": 0.0})
            plus = lift_centralizer(CommCentralizer.phi_plus(p), x, p) - phi_pm(x, p, True)
            minus = lift_centralizer(CommCentralizer.phi_minus(p), x, p) - phi_pm(x, p, False)
            signs.add(max(lp_norm(plus, p), lp_norm(minus, p)) / scale)
    kp.record(findings)
    signs.record(findings)
    return findings


@experiment("trace-dependence")
def run_trace_dependence(config: ExperimentConfig) -> Findings:
    findings = Findings()
    p = config.p

    # heavy projections: Phi+ vanishes on normalized positive sigma-elementary elements
    heavy = HEAVY_ALGEBRA if config.algebra is None else config.algebra.build()
    nonzero = 0
    worst_top = 0.0
    for i in range(config.trials):
        rng = trial_rng(config.seed, i)
        source = random_positive(heavy, rng, floor=0.01) if i % 2 else random_positive_diagonal(heavy, rng)
        f = normalize(source, p)
        worst_top = max(worst_top, max(float(np.linalg.norm(b, 2)) for b in f.blocks))
        if not phi_pm(f, p, True).is_zero():
            nonzero += 1
    findings.row(
        {"algebra": heavy.describe(), "min_projection_trace": heavy.min_projection_trace, "p": p},
        {"phi_plus_nonzero": nonzero, "max_spectrum": worst_top},
        {"phi_plus_nonzero": 0},
    )
    if heavy.min_projection_trace >= 1.0:
        findings.check_violations("phi+ vanishes on heavy projections", nonzero, config.trials)

    # unit mass: ||Phi-(f)||_p <= 2Q + C, constants estimated on the level-1 split of f
    def split_pair(algebra: Algebra, rng: np.random.Generator) -> Tuple[Element, Element]:
        f = normalize(random_positive(algebra, rng, floor=0.01), p)
        below, above = split_at_level(f, 1.0)
        return below, above

    def split_triple(algebra: Algebra, rng: np.random.Generator) -> Tuple[Element, Element, Element]:
        below, _ = split_pair(algebra, rng)
        one = algebra.identity()
        return below, one, one

    minus = NCCentralizer(NCKind.PHI_MINUS, p)
    light = UNIT_MASS_ALGEBRA
    q_hat = estimate_Q_trace(minus, light, p, config.trials, config.seed, sampler=split_pair).value
    c_hat = estimate_C_trace(minus, light, p, config.trials, config.seed, sampler=split_triple).value
    q_generic = estimate_Q_trace(minus, light, p, config.trials, config.seed).value
    c_generic = estimate_C_trace(minus, light, p, config.trials, config.seed).value
    bound = 2.0 * q_hat + c_hat
    violations = 0
    largest = 0.0
    sum_defect = 0.0
    for i in range(config.trials):
        rng = trial_rng(config.seed, i)
        f = normalize(random_positive(light, rng, floor=0.01), p)
        value = lp_norm(phi_pm(f, p, False), p)
        largest = max(largest, value)
        if value > bound * (1.0 + 1e-12) + 1e-12:
            violations += 1
        both = phi_pm(f, p, True) + phi_pm(f, p, False)
        sum_defect = max(sum_defect, lp_norm(both - omega_p(f, p) / p, p))
    findings.row(
        {"algebra": light.describe(), "total_trace": light.total_trace, "p": p},
        {
            "phi_minus_max_norm": largest,
            "bound": bound,
            "Q_split": q_hat,
            "C_split": c_hat,
            "Q_generic": q_generic,
            "C_generic": c_generic,
        },
    )
    findings.check_violations(
        "phi- bounded by 2Q + C on unit mass", violations, config.trials, f"bound {bound:.6g}"
    )
    findings.row(
        {"algebra": light.describe(), "p": p, "identity": "phi+ + phi- = omega_p / p"},
        {"max_defect": sum_defect},
        {"max_defect": 0.0},
    )
    findings.check("phi+ + phi- = omega_p / p", sum_defect <= 1e-10, f"max defect {sum_defect:.3e}")
    return findings
