"""
constants.py
Seeded random-search lower bounds for the quasi-linearity constant Q and the
bicentralizer constant C of a centralizer.

Trial i always draws from trial_rng(seed, i), so the estimate after N trials
is the running maximum of a fixed sequence: it does not depend on the number
of workers and never decreases as trials grow.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from nclp.app.exceptions import PreconditionError
from nclp.app.utils.logger import get_logger
from nclp.domain.algebra.algebra import Algebra, Element
from nclp.domain.algebra.sampling import random_contraction, random_element, trial_rng
from nclp.domain.algebra.spectral import lp_norm
from nclp.utils import running_max

logger = get_logger()

Centralizer = Callable[[Element], Element]
PairSampler = Callable[[Algebra, np.random.Generator], Tuple[Element, Element]]
TripleSampler = Callable[[Algebra, np.random.Generator], Tuple[Element, Element, Element]]


@dataclass(frozen=True)
class ConstantEstimate:
    value: float
    history: Tuple[float, ...]
    argmax: int

    @property
    def trials(self) -> int:
        return len(self.history)


def default_pair(algebra: Algebra, rng: np.random.Generator) -> Tuple[Element, Element]:
    return random_element(algebra, rng), random_element(algebra, rng)


def default_triple(
    algebra: Algebra, rng: np.random.Generator
) -> Tuple[Element, Element, Element]:
    a = random_contraction(algebra, rng)
    x = random_element(algebra, rng)
    b = random_contraction(algebra, rng)
    return a, x, b


def quasi_linearity_ratio(omega: Centralizer, f: Element, g: Element, p: float) -> float:
    """||Omega(f+g) - Omega f - Omega g||_p / (||f||_p + ||g||_p)."""
    denom = lp_norm(f, p) + lp_norm(g, p)
    if denom == 0.0:
        return 0.0
    return lp_norm(omega(f + g) - omega(f) - omega(g), p) / denom


def bimodule_ratio(omega: Centralizer, a: Element, x: Element, b: Element, p: float) -> float:
    """||Omega(axb) - a Omega(x) b||_p / ||x||_p for contractions a, b."""
    norm = lp_norm(x, p)
    if norm == 0.0:
        return 0.0
    return lp_norm(omega(a @ x @ b) - a @ omega(x) @ b, p) / norm


def _run_trials(
    ratio: Callable[[int], float], trials: int, workers: Optional[int]
) -> List[float]:
    if trials < 1:
        raise PreconditionError(f"trials must be >= 1, got {trials}", "trials >= 1")
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(ratio, range(trials)))
    return [ratio(i) for i in range(trials)]


def _estimate(values: List[float], label: str) -> ConstantEstimate:
    history = tuple(running_max(values))
    argmax = int(np.argmax(values))
    logger.debug(f"{label}: {history[-1]:.6g} after {len(values)} trials (argmax {argmax})")
    return ConstantEstimate(history[-1], history, argmax)


def estimate_Q_trace(
    omega: Centralizer,
    algebra: Algebra,
    p: float,
    trials: int,
    seed: int,
    sampler: Optional[PairSampler] = None,
    workers: Optional[int] = None,
) -> ConstantEstimate:
    draw = sampler or default_pair

    def ratio(i: int) -> float:
        f, g = draw(algebra, trial_rng(seed, i))
        return quasi_linearity_ratio(omega, f, g, p)

    return _estimate(_run_trials(ratio, trials, workers), "Q estimate")


def estimate_C_trace(
    omega: Centralizer,
    algebra: Algebra,
    p: float,
    trials: int,
    seed: int,
    sampler: Optional[TripleSampler] = None,
    workers: Optional[int] = None,
) -> ConstantEstimate:
    draw = sampler or default_triple

    def ratio(i: int) -> float:
        a, x, b = draw(algebra, trial_rng(seed, i))
        return bimodule_ratio(omega, a, x, b, p)

    return _estimate(_run_trials(ratio, trials, workers), "C estimate")


def estimate_Q(
    omega: Centralizer,
    algebra: Algebra,
    p: float,
    trials: int,
    seed: int,
    sampler: Optional[PairSampler] = None,
    workers: Optional[int] = None,
) -> float:
    """Lower bound on Q[Omega] from `trials` seeded random pairs."""
    return estimate_Q_trace(omega, algebra, p, trials, seed, sampler, workers).value


def estimate_C(
    omega: Centralizer,
    algebra: Algebra,
    p: float,
    trials: int,
    seed: int,
    sampler: Optional[TripleSampler] = None,
    workers: Optional[int] = None,
) -> float:
    """Lower bound on the bicentralizer constant from `trials` seeded triples."""
    return estimate_C_trace(omega, algebra, p, trials, seed, sampler, workers).value
