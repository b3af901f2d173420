"""
scalar_functions.py
Named Lipschitz functions R -> C used to build centralizers, parsed from
config strings such as "identity", "const(0.5)", "clip(-1,1)".
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from nclp.app.exceptions import ConfigError, PreconditionError
from nclp.domain.commutative.centralizers import TwoVariableFunction


@dataclass(frozen=True)
class LipschitzFunction:
    name: str
    fn: Callable[[float], complex] = field(compare=False)
    lipschitz: float

    def __call__(self, t: float) -> complex:
        return complex(self.fn(t))

    @property
    def is_constant(self) -> bool:
        return self.lipschitz == 0.0


def identity() -> LipschitzFunction:
    return LipschitzFunction("identity", lambda t: t, 1.0)


def const(c: complex) -> LipschitzFunction:
    return LipschitzFunction(f"const({c:g})", lambda t: c, 0.0)


def pos_part() -> LipschitzFunction:
    return LipschitzFunction("pos_part", lambda t: max(0.0, t), 1.0)


def neg_part() -> LipschitzFunction:
    return LipschitzFunction("neg_part", lambda t: min(0.0, t), 1.0)


def clip(a: float, b: float) -> LipschitzFunction:
    if a > b:
        raise PreconditionError(f"clip bounds out of order: {a} > {b}")
    return LipschitzFunction(f"clip({a:g},{b:g})", lambda t: min(max(t, a), b), 1.0 if a < b else 0.0)


def table(points: Sequence[Tuple[float, float]]) -> LipschitzFunction:
    """Piecewise-linear interpolation of (t, value) knots, constant outside."""
    if len(points) < 2:
        raise PreconditionError("a table needs at least two knots")
    xs = np.array([float(t) for t, _ in points])
    ys = np.array([float(v) for _, v in points])
    if np.any(np.diff(xs) <= 0):
        raise PreconditionError("table knots must be strictly increasing")
    slope = float(np.max(np.abs(np.diff(ys) / np.diff(xs))))
    return LipschitzFunction(
        f"table[{len(points)}]", lambda t: float(np.interp(t, xs, ys)), slope
    )


_NUMBER = r"\s*(-?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*"
_PATTERNS: List[Tuple[str, Callable[..., LipschitzFunction]]] = [
    (r"identity", identity),
    (r"pos_part", pos_part),
    (r"neg_part", neg_part),
    (rf"const\({_NUMBER}\)", lambda c: const(float(c))),
    (rf"clip\({_NUMBER},{_NUMBER}\)", lambda a, b: clip(float(a), float(b))),
]


def parse(spec: str) -> LipschitzFunction:
    text = spec.strip()
    for pattern, build in _PATTERNS:
        match = re.fullmatch(pattern, text)
        if match:
            return build(*match.groups())
    raise ConfigError(f"unknown scalar function '{spec}'")


def from_config(spec: object) -> LipschitzFunction:
    """A name string or a list of [t, value] knots."""
    if isinstance(spec, str):
        return parse(spec)
    if isinstance(spec, (list, tuple)):
        try:
            return table([(float(t), float(v)) for t, v in spec])
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid table function: {e}") from e
    raise ConfigError(f"unsupported function descriptor {spec!r}")


# Two-variable functions phi(a, b), a = log(|f|/||f||_p), b = log r_f.
TWO_VARIABLE_FUNCTIONS: Dict[str, TwoVariableFunction] = {
    "first": TwoVariableFunction("first", lambda a, b: a, uses_rank=False),
    "second": TwoVariableFunction("second", lambda a, b: b),
    "sum": TwoVariableFunction("sum", lambda a, b: a + b, lipschitz=math.sqrt(2)),
    "clipped_rank": TwoVariableFunction(
        "clipped_rank", lambda a, b: min(max(b, -1.0), 1.0)
    ),
}


def two_variable(name: str) -> TwoVariableFunction:
    try:
        return TWO_VARIABLE_FUNCTIONS[name]
    except KeyError:
        raise ConfigError(
            f"unknown two-variable function '{name}', expected one of {sorted(TWO_VARIABLE_FUNCTIONS)}"
        ) from None
