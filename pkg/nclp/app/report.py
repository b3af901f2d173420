"""
report.py
Experiment reports: rows of (inputs, measured, expected) values, pass/fail
assertions, and their CSV / JSON emitters.

The numeric payload is deterministic for a fixed config; wall_time is kept
out of it.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import orjson

from nclp.app.exceptions import ReportError
from nclp.app.utils.logger import get_logger
from nclp.config import SIGNIFICANT_DIGITS

logger = get_logger()

Value = Union[int, float, str, bool]

CSV_BASE_COLUMNS = ["experiment", "row"]
_NON_FINITE = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}


def _clean(value: Any) -> Value:
    """Coerce numpy scalars and friends to plain JSON-compatible values."""
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, (bool, str, int)):
        return value
    if isinstance(value, complex):
        raise ReportError("complex values must be split into real columns before reporting")
    return float(value)


def _clean_map(values: Optional[Mapping[str, Any]]) -> Dict[str, Value]:
    return {str(k): _clean(v) for k, v in (values or {}).items()}


def _encode(value: Value) -> Any:
    # orjson writes non-finite floats as null; keep them as tagged strings
    if isinstance(value, float) and not math.isfinite(value):
        return {"float": "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")}
    return value


def _decode(value: Any) -> Value:
    if isinstance(value, dict) and set(value) == {"float"}:
        return _NON_FINITE[value["float"]]
    return value  # type: ignore[no-any-return]


def format_value(value: Value) -> str:
    """Fixed 17-significant-digit text for floats; round-trip exact for doubles."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, f".{SIGNIFICANT_DIGITS}g")
    return str(value)


@dataclass
class Row:
    inputs: Dict[str, Value] = field(default_factory=dict)
    measured: Dict[str, Value] = field(default_factory=dict)
    expected: Dict[str, Value] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.inputs = _clean_map(self.inputs)
        self.measured = _clean_map(self.measured)
        self.expected = _clean_map(self.expected)

    def _paired(self) -> List[str]:
        return sorted(
            k for k in self.measured
            if k in self.expected
            and isinstance(self.measured[k], float)
            and isinstance(self.expected[k], (int, float))
        )

    @property
    def abs_errors(self) -> Dict[str, float]:
        return {
            k: abs(float(self.measured[k]) - float(self.expected[k])) for k in self._paired()
        }

    @property
    def rel_errors(self) -> Dict[str, float]:
        out = {}
        for k, err in self.abs_errors.items():
            scale = abs(float(self.expected[k]))
            out[k] = err / scale if scale > 0 else err
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "inputs": {k: _encode(v) for k, v in self.inputs.items()},
            "measured": {k: _encode(v) for k, v in self.measured.items()},
            "expected": {k: _encode(v) for k, v in self.expected.items()},
            "abs_error": {k: _encode(v) for k, v in self.abs_errors.items()},
            "rel_error": {k: _encode(v) for k, v in self.rel_errors.items()},
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Row:
        return cls(
            {k: _decode(v) for k, v in data.get("inputs", {}).items()},
            {k: _decode(v) for k, v in data.get("measured", {}).items()},
            {k: _decode(v) for k, v in data.get("expected", {}).items()},
        )

    def flat(self) -> Dict[str, Value]:
        out: Dict[str, Value] = {}
        for prefix, values in (
            ("input", self.inputs),
            ("measured", self.measured),
            ("expected", self.expected),
            ("abs_error", self.abs_errors),
            ("rel_error", self.rel_errors),
        ):
            for k, v in values.items():
                out[f"{prefix}.{k}"] = v
        return out


@dataclass
class AssertionResult:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Findings:
    """What an experiment handler hands back to the runner."""

    rows: List[Row] = field(default_factory=list)
    assertions: List[AssertionResult] = field(default_factory=list)

    def row(
        self,
        inputs: Mapping[str, Any],
        measured: Mapping[str, Any],
        expected: Optional[Mapping[str, Any]] = None,
    ) -> Row:
        r = Row(dict(inputs), dict(measured), dict(expected or {}))
        self.rows.append(r)
        return r

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.assertions.append(AssertionResult(name, bool(passed), detail))
        if not passed:
            logger.warning(f"assertion '{name}' failed: {detail}")
        return bool(passed)

    def check_violations(self, name: str, violations: int, total: int, extra: str = "") -> bool:
        detail = f"{violations} violations over {total}" + (f"; {extra}" if extra else "")
        return self.check(name, violations == 0, detail)


@dataclass
class Report:
    experiment: str
    config: Dict[str, Any]
    rows: List[Row] = field(default_factory=list)
    assertions: List[AssertionResult] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def to_dict(self, include_wall_time: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "experiment": self.experiment,
            "config": self.config,
            "rows": [r.to_dict() for r in self.rows],
            "assertions": [a.to_dict() for a in self.assertions],
            "passed": self.passed,
        }
        if include_wall_time:
            data["wall_time"] = self.wall_time
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Report:
        try:
            return cls(
                experiment=data["experiment"],
                config=dict(data.get("config", {})),
                rows=[Row.from_dict(r) for r in data.get("rows", [])],
                assertions=[
                    AssertionResult(a["name"], bool(a["passed"]), a.get("detail", ""))
                    for a in data.get("assertions", [])
                ],
                wall_time=float(data.get("wall_time", 0.0)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ReportError(f"malformed report: {e}") from e

    def payload(self) -> bytes:
        """Canonical bytes of everything but the wall time."""
        return to_json(self, include_wall_time=False)


def to_json(report: Report, include_wall_time: bool = True) -> bytes:
    return orjson.dumps(
        report.to_dict(include_wall_time),
        option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2,
    )


def to_csv(report: Report) -> str:
    """One line per row; an empty report is just the header."""
    flat = [r.flat() for r in report.rows]
    columns = CSV_BASE_COLUMNS + sorted({k for row in flat for k in row})
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for i, row in enumerate(flat):
        line = [report.experiment, str(i)]
        line += [format_value(row[c]) if c in row else "" for c in columns[2:]]
        writer.writerow(line)
    return buffer.getvalue()


def emit(report: Report, path: Union[str, Path], fmt: str = "json") -> Path:
    """Write the report as CSV or a single JSON document.

    Raises:
        ReportError: On unknown format or any I/O failure
    """
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "json":
            target.write_bytes(to_json(report))
        elif fmt == "csv":
            target.write_text(to_csv(report), encoding="utf-8")
        else:
            raise ReportError(f"unknown report format '{fmt}'")
    except OSError as e:
        raise ReportError(f"cannot write report to {target}: {e}") from e
    logger.info(f"wrote {fmt} report for '{report.experiment}' to {target}")
    return target


def load_report(path: Union[str, Path]) -> Report:
    """Parse a JSON report written by emit."""
    try:
        data = orjson.loads(Path(path).read_bytes())
    except OSError as e:
        raise ReportError(f"cannot read report {path}: {e}") from e
    except orjson.JSONDecodeError as e:
        raise ReportError(f"cannot parse report {path}: {e}") from e
    return Report.from_dict(data)
