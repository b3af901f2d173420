"""Tests for the experiment runner, the registry and the nclp command line."""

import math
from pathlib import Path
from typing import Any, Dict, List

import orjson
import pytest
import yaml

from nclp.app.exceptions import AdmissibilityError, ConfigError
from nclp.app.experiment_config import ExperimentConfig, load_config, validate_config
from nclp.app.experiments import experiment, experiment_names, get_experiment
from nclp.app.report import Findings, load_report
from nclp.app.runner import ExperimentRunner
from nclp.main import EXIT_CONFIG, EXIT_FAILED, EXIT_PASSED, main

CORE_EXPERIMENTS = [
    "norms",
    "centralizer-constants",
    "nontriviality",
    "duality",
    "inequality-grid",
    "kosaki",
    "change-of-state",
    "derivative-bound",
    "lift-consistency",
]

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

REDUCED_CONFIG: Dict[str, Any] = {
    "seed": 9,
    "trials": 3,
    "dims": [2, 3],
    "p_values": [1.5, 2.0],
    "norm_exponents": [1.0, 2.0, math.inf],
    "n_values": [2, 4],
    "thetas": [0.5],
    "grid": {"points": 50},
    "params": {
        "sup_trials": 3,
        "fan_noncommuting_trials": 1,
        "fan_dim": 2,
        "calderon_cases": 0,
        "min_dim": 2,
        "max_dim": 3,
        "dim": 2,
    },
}

EXPECTED_ASSERTIONS: Dict[str, List[str]] = {
    "norms": ["mu/norm consistency", "hoelder", "polar reconstruction", "expectation contractive"],
    "centralizer-constants": ["Q monotone in trials", "C monotone in trials"],
    "lift-consistency": ["lifted kalton-peck equals omega_p", "lifted phi+/phi- equal phi_pm"],
    "trace-dependence": ["phi+ vanishes on heavy projections", "phi+ + phi- = omega_p / p"],
    "nontriviality": ["witness ratio equals log n"],
    "duality": ["sigma-elementary duality bound", "pairing sup stable across dims"],
    "inequality-grid": ["elementary inequality with max(p, q)/e"],
    "kosaki": ["kosaki norm equals the weighted l^p formula", "fan estimate in the commuting case"],
    "change-of-state": ["change of state preserves the kosaki norm", "cocycle unitary on the imaginary axis"],
    "derivative-bound": ["derivative bound [M_L1", "derivative bound [kosaki_left"],
    "rw-extremal": ["rochberg-weiss pair of f^(pz) equals (omega_p f, f)"],
    "properties": ["permutation conjugation on diagonal elements", "cocycle chain rule", "quasi-triangle"],
}


@experiment("always-fails")
def _always_fails(config: ExperimentConfig) -> Findings:
    findings = Findings()
    findings.check("impossible", False, "forced failure")
    return findings


@experiment("inadmissible")
def _inadmissible(config: ExperimentConfig) -> Findings:
    raise AdmissibilityError("forced admissibility failure")


def _write_config(tmp_path: Path, data: Dict[str, Any]) -> Path:
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return path


class TestRegistry:
    """Tests for the experiment registry."""

    def test_all_experiments_registered(self) -> None:
        """Every documented experiment has a handler."""
        names = experiment_names()
        for name in CORE_EXPERIMENTS + ["properties", "trace-dependence", "rw-extremal"]:
            assert name in names

    def test_unknown_experiment(self) -> None:
        """Unknown names raise ConfigError listing the known ones."""
        with pytest.raises(ConfigError, match="norms"):
            get_experiment("no-such-experiment")

    def test_duplicate_registration(self) -> None:
        """A name can only be registered once."""
        with pytest.raises(ValueError):
            experiment("norms")(_always_fails)

    def test_every_experiment_has_a_reduced_run(self) -> None:
        """The reduced-run table below lists every registered experiment."""
        registered = set(experiment_names()) - {"always-fails", "inadmissible"}
        assert registered == set(EXPECTED_ASSERTIONS)

    @pytest.mark.parametrize("path", sorted(CONFIGS.glob("*.yaml")), ids=lambda p: p.name)
    def test_shipped_configs_load(self, path: Path) -> None:
        """Every config under configs/ validates and names a registered experiment."""
        config = load_config(path)
        assert config.experiment in experiment_names()


class TestRunner:
    """Tests for ExperimentRunner."""

    def test_nontriviality_passes(self) -> None:
        """Witness ratios equal log n for every profile."""
        config = validate_config(
            {"experiment": "nontriviality", "seed": 5, "n_values": [2, 4, 8, 16, 32, 64, 128, 256]}
        )
        report = ExperimentRunner().run(config)
        assert report.passed
        assert report.rows

    def test_inequality_grid_passes(self) -> None:
        """The grid check passes at p = 2."""
        config = validate_config(
            {"experiment": "inequality-grid", "seed": 1, "p_values": [2.0], "grid": {"points": 200}}
        )
        assert ExperimentRunner().run(config).passed

    def test_same_seed_same_payload(self) -> None:
        """Identical configs give byte-identical payloads."""
        config = validate_config({"experiment": "norms", "seed": 11, "trials": 5, "dims": [3]})
        first = ExperimentRunner().run(config)
        second = ExperimentRunner().run(config)
        assert first.payload() == second.payload()

    def test_unknown_experiment_is_config_error(self) -> None:
        """Dispatch fails before anything runs."""
        config = validate_config({"experiment": "no-such-experiment", "seed": 1})
        with pytest.raises(ConfigError):
            ExperimentRunner().run(config)

    def test_run_status(self) -> None:
        """Runs are remembered with their final status."""
        runner = ExperimentRunner()
        report = runner.run(validate_config({"experiment": "always-fails", "seed": 2}))
        assert not report.passed
        run_id = next(iter(runner.history))
        status = runner.get_run_status(run_id)
        assert status is not None
        assert status["status"] == "failed"
        assert status["has_report"]
        assert runner.get_run_status("missing") is None

    def test_history_is_bounded(self) -> None:
        """Old runs are dropped past max_history."""
        runner = ExperimentRunner(max_history=2)
        config = validate_config({"experiment": "always-fails", "seed": 2})
        for _ in range(4):
            runner.run(config)
        assert len(runner.history) == 2

    def test_norms_at_endpoints(self) -> None:
        """Trace-class and operator-norm exponents run and pass."""
        config = validate_config(
            {"experiment": "norms", "seed": 3, "trials": 4, "dims": [2, 3], "norm_exponents": [1.0, math.inf]}
        )
        report = ExperimentRunner().run(config)
        assert report.passed
        assert {row.inputs["p"] for row in report.rows if "p" in row.inputs} >= {1.0, math.inf}

    @pytest.mark.parametrize("name", sorted(EXPECTED_ASSERTIONS))
    def test_reduced_run(self, name: str) -> None:
        """Every experiment runs end to end on a small config and emits its assertions."""
        config = validate_config({**REDUCED_CONFIG, "experiment": name})
        report = ExperimentRunner().run(config)
        names = [a.name for a in report.assertions]
        for prefix in EXPECTED_ASSERTIONS[name]:
            assert any(n.startswith(prefix) for n in names), f"{prefix!r} missing from {names}"

    @pytest.mark.slow
    def test_shipped_duality_config_passes(self) -> None:
        """The pairing sup is stable across dims at the shipped trial count."""
        config = load_config(CONFIGS / "duality.yaml")
        report = ExperimentRunner().run(config)
        stable = [a for a in report.assertions if a.name == "pairing sup stable across dims"]
        assert stable and stable[0].passed, stable


class TestCli:
    """Tests for nclp run / nclp list exit codes and outputs."""

    def test_pass_writes_report(self, tmp_path: Path) -> None:
        """A passing experiment exits 0 and writes the requested report."""
        path = _write_config(tmp_path, {"experiment": "norms", "seed": 3, "trials": 4, "dims": [2]})
        out = tmp_path / "out" / "norms.json"
        assert main(["run", "--config", str(path), "--out", str(out)]) == EXIT_PASSED
        report = load_report(out)
        assert report.experiment == "norms"
        assert report.passed

    def test_csv_to_stdout(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Without an output path the report goes to stdout."""
        path = _write_config(
            tmp_path, {"experiment": "nontriviality", "seed": 1, "n_values": [2, 4]}
        )
        assert main(["run", "--config", str(path), "--format", "csv"]) == EXIT_PASSED
        assert capsys.readouterr().out.startswith("experiment,row,")

    def test_json_to_stdout(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """JSON is the default format."""
        path = _write_config(tmp_path, {"experiment": "nontriviality", "seed": 1, "n_values": [2]})
        assert main(["run", "--config", str(path)]) == EXIT_PASSED
        data = orjson.loads(capsys.readouterr().out)
        assert data["passed"] is True

    def test_experiment_override(self, tmp_path: Path) -> None:
        """--experiment replaces the configured name."""
        path = _write_config(tmp_path, {"experiment": "norms", "seed": 1})
        out = tmp_path / "fail.json"
        assert main(["run", "--config", str(path), "--experiment", "always-fails", "--out", str(out)]) == EXIT_FAILED
        assert not load_report(out).passed

    def test_invalid_config_exits_2(self, tmp_path: Path) -> None:
        """Missing seed, unknown experiments and bad files are config errors."""
        no_seed = _write_config(tmp_path, {"experiment": "norms"})
        assert main(["run", "--config", str(no_seed)]) == EXIT_CONFIG
        assert main(["run", "--config", str(tmp_path / "absent.yaml")]) == EXIT_CONFIG
        unknown = _write_config(tmp_path, {"experiment": "no-such-experiment", "seed": 1})
        assert main(["run", "--config", str(unknown)]) == EXIT_CONFIG

    def test_malformed_params_exit_2(self, tmp_path: Path) -> None:
        """Ill-typed experiment parameters are config errors, not crashes."""
        path = _write_config(tmp_path, {"experiment": "kosaki", "seed": 1, "params": {"fan_dim": "abc"}})
        assert main(["run", "--config", str(path)]) == EXIT_CONFIG

    def test_admissibility_failure_exits_1(self, tmp_path: Path) -> None:
        """A failed runtime validity check counts as an assertion failure."""
        path = _write_config(tmp_path, {"experiment": "inadmissible", "seed": 1})
        assert main(["run", "--config", str(path)]) == EXIT_FAILED

    def test_list(self, capsys: pytest.CaptureFixture[str]) -> None:
        """nclp list prints one experiment per line."""
        assert main(["list"]) == EXIT_PASSED
        listed = capsys.readouterr().out.split()
        assert "kosaki" in listed and "duality" in listed

    def test_missing_subcommand(self) -> None:
        """argparse exits 2 without a subcommand."""
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
