"""
Experiment runner for nclp.
Dispatches validated configs to their experiment handlers one at a time and
assembles the reports.
"""

import time
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Optional

from nclp.app.exceptions import PreconditionError
from nclp.app.experiment_config import ExperimentConfig
from nclp.app.experiments import get_experiment
from nclp.app.report import Report
from nclp.app.utils.logger import get_logger

logger = get_logger()


class RunStatus(Enum):
    QUEUED = "queued"
    RUNNING = "running"
    PASSED = "passed"
    FAILED = "failed"
    ERRORED = "errored"


@dataclass
class ExperimentRun:
    """One dispatched experiment and its outcome."""
    run_id: str
    config: ExperimentConfig
    created_at: datetime = field(default_factory=datetime.now)
    status: RunStatus = RunStatus.QUEUED
    report: Optional[Report] = None
    error: Optional[str] = None


class ExperimentRunner:
    """Runs experiments sequentially and keeps a bounded history of runs."""

    def __init__(self, max_history: int = 50):
        self.history: Dict[str, ExperimentRun] = {}
        self.max_history = max_history
        self._run_counter = 0

    def generate_run_id(self, config: ExperimentConfig) -> str:
        self._run_counter += 1
        return f"run_{config.experiment}_{config.seed}_{self._run_counter}"

    def run(self, config: ExperimentConfig) -> Report:
        """Dispatch one config and return its report.

        Raises:
            ConfigError: unknown experiment
            PreconditionError: a parameter violates an operation's precondition
        """
        handler = get_experiment(config.experiment)
        run = ExperimentRun(self.generate_run_id(config), config)
        self._remember(run)
        logger.info(f"Starting {run.run_id} ({config.experiment}, seed {config.seed})")
        run.status = RunStatus.RUNNING
        started = time.perf_counter()
        try:
            findings = handler(config)
        except PreconditionError as e:
            run.status = RunStatus.ERRORED
            run.error = str(e)
            logger.warning(f"{run.run_id} rejected its parameters: {e} [{e.precondition}]")
            raise
        except Exception as e:
            run.status = RunStatus.ERRORED
            run.error = str(e)
            logger.error(f"{run.run_id} crashed: {e}")
            raise
        report = Report(
            experiment=config.experiment,
            config=config.model_dump(mode="json"),
            rows=findings.rows,
            assertions=findings.assertions,
            wall_time=time.perf_counter() - started,
        )
        run.report = report
        run.status = RunStatus.PASSED if report.passed else RunStatus.FAILED
        failed = [a.name for a in report.assertions if not a.passed]
        logger.info(
            f"Finished {run.run_id} in {report.wall_time:.2f}s: "
            f"{len(report.rows)} rows, {len(report.assertions)} assertions, "
            + ("all passed" if not failed else f"failed {failed}")
        )
        return report

    def _remember(self, run: ExperimentRun) -> None:
        self.history[run.run_id] = run
        if len(self.history) > self.max_history:
            oldest = min(self.history, key=lambda k: self.history[k].created_at)
            del self.history[oldest]

    def get_run_status(self, run_id: str) -> Optional[Dict[str, Any]]:
        run = self.history.get(run_id)
        if not run:
            return None
        return {
            "run_id": run.run_id,
            "experiment": run.config.experiment,
            "status": run.status.value,
            "created_at": run.created_at.isoformat(),
            "error": run.error,
            "has_report": run.report is not None,
        }


# Global runner instance
_runner: Optional[ExperimentRunner] = None


def get_runner() -> ExperimentRunner:
    global _runner
    if _runner is None:
        _runner = ExperimentRunner()
    return _runner


def run(config: ExperimentConfig) -> Report:
    """Run one experiment on the global runner."""
    return get_runner().run(config)
