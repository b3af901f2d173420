"""Name -> handler registry for experiment suites."""

from typing import Callable, Dict, List

from nclp.app.exceptions import ConfigError
from nclp.app.experiment_config import ExperimentConfig
from nclp.app.report import Findings
from nclp.utils import logging_decorator

ExperimentHandler = Callable[[ExperimentConfig], Findings]

_EXPERIMENTS: Dict[str, ExperimentHandler] = {}


def experiment(name: str) -> Callable[[ExperimentHandler], ExperimentHandler]:
    """Decorator registering a handler under `name`; wraps it in the timing log."""

    def register(func: ExperimentHandler) -> ExperimentHandler:
        if name in _EXPERIMENTS:
            raise ValueError(f"experiment '{name}' registered twice")
        wrapped = logging_decorator(func)
        _EXPERIMENTS[name] = wrapped
        return wrapped

    return register


def get_experiment(name: str) -> ExperimentHandler:
    try:
        return _EXPERIMENTS[name]
    except KeyError:
        raise ConfigError(
            f"unknown experiment '{name}', expected one of {experiment_names()}"
        ) from None


def experiment_names() -> List[str]:
    return sorted(_EXPERIMENTS)
