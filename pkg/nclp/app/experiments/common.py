"""Helpers shared by the experiment suites."""

from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from nclp.app.experiment_config import ExperimentConfig
from nclp.app.report import Findings
from nclp.domain.algebra.algebra import Algebra
from nclp.domain.algebra.sampling import random_algebra


@dataclass
class Tally:
    """Worst defect and violation count of one property over many trials."""

    name: str
    tolerance: float
    worst: float = 0.0
    violations: int = 0
    count: int = 0

    def add(self, defect: float) -> bool:
        self.count += 1
        self.worst = max(self.worst, defect)
        # NaN counts as a violation
        if not defect <= self.tolerance:
            self.violations += 1
            return False
        return True

    def record(self, findings: Findings, inputs: Optional[Dict[str, Any]] = None) -> bool:
        findings.row(
            {"property": self.name, **(inputs or {})},
            {"max_defect": self.worst, "violations": self.violations, "count": self.count},
            {"max_defect": 0.0},
        )
        return findings.check_violations(
            self.name,
            self.violations,
            self.count,
            f"worst {self.worst:.3e} against tolerance {self.tolerance:g}",
        )


def trial_algebra(config: ExperimentConfig, rng: np.random.Generator) -> Algebra:
    """The configured algebra, or a random block structure up to max(dims)."""
    if config.algebra is not None:
        return config.algebra.build()
    return random_algebra(rng, max_dim=max(config.dims))


def scaled_defect(defect: float, scale: float) -> float:
    """defect / max(1, scale)."""
    return defect / max(1.0, scale)
