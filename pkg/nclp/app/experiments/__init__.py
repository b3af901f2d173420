"""Experiment suites, one module per experiment family.

Importing this package registers every suite.
"""

from nclp.app.experiments import (  # noqa: F401
    centralizers,
    interpolation,
    norms,
    properties,
    twisted_sum,
)
from nclp.app.experiments.registry import experiment, experiment_names, get_experiment

__all__ = ["experiment", "experiment_names", "get_experiment"]
