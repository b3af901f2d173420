"""norms: L^p norms against mu, Hoelder, polar reconstruction, expectations, functional calculus."""

from nclp.app.experiment_config import ExperimentConfig
from nclp.app.experiments.common import Tally, trial_algebra
from nclp.app.experiments.registry import experiment
from nclp.app.report import Findings
from nclp.domain.algebra.expectation import (
    block_partition,
    conditional_expectation,
    diagonal_partition,
)
from nclp.domain.algebra.sampling import random_element, random_hermitian, trial_rng
from nclp.domain.algebra.spectral import func_calc, lp_norm, mu, polar
from nclp.utils import relative_error

HOLDER_PAIRS = ((2.0, 2.0), (4.0, 4.0 / 3.0))


@experiment("norms")
def run_norms(config: ExperimentConfig) -> Findings:
    findings = Findings()
    mu_norm = Tally("mu/norm consistency", 1e-10)
    holder = Tally("hoelder", 0.0)
    polar_recon = Tally("polar reconstruction", 1e-10)
    expectation = Tally("expectation idempotent and trace preserving", 1e-12)
    contractive = Tally("expectation contractive", 0.0)
    multiplicative = Tally("functional calculus multiplicativity", 1e-10)

    for i in range(config.trials):
        rng = trial_rng(config.seed, i)
        algebra = trial_algebra(config, rng)
        x = random_element(algebra, rng)
        y = random_element(algebra, rng)

        m = mu(x)
        for p in config.norm_exponents:
            direct = lp_norm(x, p)
            via_mu = m.lp_norm(p)
            mu_norm.add(relative_error(direct, via_mu))
            findings.row(
                {"trial": i, "p": p, "dim": algebra.total_dim, "blocks": len(algebra.blocks)},
                {"norm": direct},
                {"norm": via_mu},
            )

        for p, q in HOLDER_PAIRS:
            lhs = lp_norm(x @ y, 1.0)
            rhs = lp_norm(x, p) * lp_norm(y, q)
            holder.add(max(0.0, lhs - rhs * (1.0 + 1e-12)))

        u, a = polar(x)
        scale = lp_norm(x, 2.0)
        polar_recon.add(
            max(lp_norm(u @ a - x, 2.0) / scale, lp_norm(u @ u.adjoint() @ u - u, 2.0))
        )

        partition = diagonal_partition(algebra) if i % 2 == 0 else block_partition(algebra)
        e = conditional_expectation(x, partition)
        trace_scale = max(1.0, lp_norm(x, 1.0))
        expectation.add(
            max(
                (conditional_expectation(e, partition) - e).max_abs() / trace_scale,
                abs(e.trace() - x.trace()) / trace_scale,
            )
        )
        for p in config.norm_exponents:
            contractive.add(max(0.0, lp_norm(e, p) - lp_norm(x, p) * (1.0 + 1e-12)))

        h = random_hermitian(algebra, rng)
        f_h = func_calc(h, lambda t: t * t + 1.0)
        g_h = func_calc(h, lambda t: 2.0 * t - 3.0)
        fg_h = func_calc(h, lambda t: (t * t + 1.0) * (2.0 * t - 3.0))
        multiplicative.add((fg_h - f_h @ g_h).max_abs() / max(1.0, fg_h.max_abs()))

    for tally in (mu_norm, holder, polar_recon, expectation, contractive, multiplicative):
        tally.record(findings)
    return findings
