"""
twisted_sum.py
Experiments on Kalton-Peck twisted sums: the log n nontriviality witnesses,
the duality pairing and its constants, and the elementary inequality grid.
"""

from typing import Dict, List, Tuple

import numpy as np

from nclp.app.experiment_config import ExperimentConfig
from nclp.app.experiments.common import Tally
from nclp.app.experiments.registry import experiment
from nclp.app.report import Findings
from nclp.domain.algebra.algebra import Algebra, Element
from nclp.domain.algebra.sampling import (
    random_element,
    random_positive_diagonal,
    random_unitary,
    random_weights,
    trial_rng,
)
from nclp.domain.algebra.spectral import func_calc, normalize, polar
from nclp.domain.centralizers.nc_centralizer import NCCentralizer
from nclp.domain.twisted_sum.duality import (
    duality_pairing,
    elementary_inequality_check,
    sigma_elementary_duality_bound,
)
from nclp.domain.twisted_sum.twisted_pair import TwistedPair, quasi_norm
from nclp.domain.twisted_sum.witness import nontriviality_witness, witness_weights
from nclp.utils import conjugate_exponent

WITNESS_ATOL = 1e-9
SIGMA_DUALITY_P = [1.25, 1.5, 2.0]
SUP_STABILITY_FACTOR = 1.5


@experiment("nontriviality")
def run_nontriviality(config: ExperimentConfig) -> Findings:
    findings = Findings()
    tally = Tally("witness ratio equals log n", WITNESS_ATOL)
    cases: List[Tuple[str, int, np.ndarray]] = []
    index = 0
    for rule in config.weight_rules:
        for n in config.n_values:
            cases.append((rule, n, witness_weights(n, rule, trial_rng(config.seed, index))))
            index += 1
    explicit = config.param("weights", None)
    if explicit:
        cases.append(("explicit", len(explicit), np.asarray(explicit, dtype=float)))

    for rule, n, weights in cases:
        for p in config.p_values:
            witness = nontriviality_witness(weights, p)
            tally.add(abs(witness.ratio - witness.expected))
            findings.row(
                {"n": n, "weight_rule": rule, "p": p},
                {"ratio": witness.ratio, "log_n": witness.expected},
                {"ratio": witness.expected},
            )
    tally.record(findings)
    return findings


def _dual_direction(x: Element, q: float) -> Element:
    """|x|^(q-1) u*, so that tau(x w) = ||x||_q ||w||_p with w this element."""
    u, m = polar(x)
    return func_calc(m, lambda t: t ** (q - 1.0) if t > 0 else 0.0) @ u.adjoint()


def _unit_pairs(
    algebra: Algebra, p: float, rng: np.random.Generator
) -> Tuple[TwistedPair, TwistedPair]:
    """A unit-quasi-norm point of Z_q and one of Z_p, aligned to make the pairing large."""
    q = conjugate_exponent(p)
    if rng.random() < 0.5:
        x = random_element(algebra, rng)
    else:
        x = random_unitary(algebra, rng) * float(1.0 - rng.random())
    y = random_element(algebra, rng) * float(rng.random())
    w = _dual_direction(x, q)
    v = random_element(algebra, rng) * float(rng.random())
    xy = TwistedPair(x, y, NCCentralizer.omega(q), q)
    vw = TwistedPair(v, w, NCCentralizer.omega(p), p)
    return xy * (1.0 / quasi_norm(xy)), vw * (1.0 / quasi_norm(vw))


@experiment("duality")
def run_duality(config: ExperimentConfig) -> Findings:
    findings = Findings()

    # sigma-elementary chain on random diagonal algebras
    for p in config.param("duality_p", SIGMA_DUALITY_P):
        q = conjugate_exponent(p)
        for phi in config.scalar_functions():
            violations = 0
            worst = 0.0
            worst_stated = 0.0
            for i in range(config.trials):
                rng = trial_rng(config.seed, i)
                n = int(rng.integers(1, max(config.dims) + 1))
                algebra = Algebra.diagonal(list(random_weights(n, rng)))
                y = normalize(random_positive_diagonal(algebra, rng), q)
                w = normalize(random_positive_diagonal(algebra, rng), p)
                bound = sigma_elementary_duality_bound(y, w, p, phi)
                if not bound.holds:
                    violations += 1
                if bound.rhs > 0:
                    worst = max(worst, bound.lhs / bound.rhs)
                    worst_stated = max(worst_stated, bound.lhs / bound.stated_rhs)
            findings.row(
                {"p": p, "phi": phi.name, "lipschitz": phi.lipschitz, "trials": config.trials},
                {"max_ratio": worst, "max_stated_ratio": worst_stated, "violations": violations},
            )
            findings.check_violations(
                f"sigma-elementary duality bound [p={p:g}, {phi.name}]",
                violations,
                config.trials,
                f"max lhs/rhs {worst:.6g}",
            )

    # the pairing over unit balls should not grow with the dimension
    p = config.p
    trials = int(config.param("sup_trials", config.trials))
    sups: Dict[int, float] = {}
    for dim in config.dims:
        algebra = Algebra.matrix(dim, 1.0 / dim)
        sup = 0.0
        for i in range(trials):
            xy, vw = _unit_pairs(algebra, p, trial_rng(config.seed, i))
            sup = max(sup, abs(duality_pairing(xy, vw)))
        sups[dim] = sup
        findings.row({"dim": dim, "p": p, "trials": trials}, {"pairing_sup": sup})
    spread = max(sups.values()) / min(sups.values())
    findings.check(
        "pairing sup stable across dims",
        spread <= SUP_STABILITY_FACTOR,
        f"max/min sup {spread:.4f} over dims {sorted(sups)}",
    )
    return findings


@experiment("inequality-grid")
def run_inequality_grid(config: ExperimentConfig) -> Findings:
    findings = Findings()
    grid = config.grid
    for p in config.p_values:
        result = elementary_inequality_check(p, grid.lo, grid.hi, grid.points)
        findings.row(
            {"p": p, "q": conjugate_exponent(p), "lo": grid.lo, "hi": grid.hi, "points": grid.points},
            {
                "max_ratio": result.max_ratio,
                "violations": result.violations,
                "stated_max_ratio": result.stated_max_ratio,
                "stated_violations": result.stated_violations,
                "argmax_t": result.argmax[0],
                "argmax_s": result.argmax[1],
            },
        )
        findings.check_violations(
            f"elementary inequality with max(p, q)/e [p={p:g}]",
            result.violations,
            result.points,
            f"max ratio {result.max_ratio:.6f}",
        )
    return findings
