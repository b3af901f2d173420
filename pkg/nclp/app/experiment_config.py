"""
experiment_config.py
YAML experiment configuration validated with pydantic.

One document describes one experiment run:

    experiment: nontriviality
    seed: 7
    p: 2.0
    n_values: [2, 4, 8]
    output: {path: out/witness.json, format: json}
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from nclp.app.exceptions import ConfigError, NclpError
from nclp.app.serialization import algebra_from_dict
from nclp.app.utils.logger import get_logger
from nclp.config import DEFAULT_T_MAX, DEFAULT_T_STEP, MAX_BLOCK_DIM
from nclp.domain.algebra.algebra import Algebra
from nclp.domain.centralizers.nc_centralizer import NCCentralizer, NCKind
from nclp.domain.centralizers.scalar_functions import LipschitzFunction, from_config, two_variable
from nclp.domain.commutative.centralizers import CommCentralizer
from nclp.utils import conjugate_exponent

logger = get_logger()

PhiSpec = Union[str, List[Tuple[float, float]]]

COUPLE_NAMES = ("M_L1", "kosaki_left", "kosaki_right")
WEIGHT_RULES = ("uniform", "geometric", "random")


def _check_open_p(p: float) -> float:
    if not (1 < p < math.inf):
        raise ValueError(f"p must lie in (1, inf), got {p}")
    return p


class _Spec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True, ser_json_inf_nan="strings")


class BlockSpec(_Spec):
    dim: int = Field(ge=1, le=1024)
    weight: float = Field(default=1.0, gt=0)


class AlgebraSpec(_Spec):
    blocks: List[BlockSpec] = Field(min_length=1)

    def build(self) -> Algebra:
        return algebra_from_dict(self.model_dump())


class CentralizerSpec(_Spec):
    """{kind, p, phi} plus the wrapped commutative centralizer for kind 'lifted'."""

    kind: Literal["omega_p", "lipschitz", "phi_plus", "phi_minus", "lifted"] = "omega_p"
    p: Optional[float] = None
    phi: PhiSpec = "identity"
    commutative: Literal["kalton_peck", "phi_plus", "phi_minus", "two_variable"] = "kalton_peck"
    two_variable: Optional[str] = None

    @field_validator("p")
    @classmethod
    def _p_in_range(cls, p: Optional[float]) -> Optional[float]:
        return None if p is None else _check_open_p(p)

    def scalar_function(self) -> LipschitzFunction:
        return from_config(self.phi)

    def build(self, default_p: float) -> NCCentralizer:
        p = self.p if self.p is not None else default_p
        kind = NCKind(self.kind)
        if kind is NCKind.LIPSCHITZ:
            return NCCentralizer.lipschitz(p, self.scalar_function())
        if kind is NCKind.LIFTED:
            return NCCentralizer.lifted(self.commutative_centralizer(p))
        return NCCentralizer(kind, p)

    def commutative_centralizer(self, p: float) -> CommCentralizer:
        if self.commutative == "kalton_peck":
            return CommCentralizer.kalton_peck(p)
        if self.commutative == "phi_plus":
            return CommCentralizer.phi_plus(p)
        if self.commutative == "phi_minus":
            return CommCentralizer.phi_minus(p)
        if self.two_variable is None:
            raise ConfigError("a two_variable centralizer needs 'two_variable: <name>'")
        return CommCentralizer.from_two_variable(p, two_variable(self.two_variable))


class GridSpec(_Spec):
    lo: float = Field(default=1e-6, gt=0)
    hi: float = Field(default=1e6, gt=0)
    points: int = Field(default=1000, ge=2)

    @model_validator(mode="after")
    def _ordered(self) -> GridSpec:
        if self.lo >= self.hi:
            raise ValueError(f"grid lo {self.lo} must be below hi {self.hi}")
        return self


class StripSpec(_Spec):
    t_max: float = Field(default=DEFAULT_T_MAX, ge=0)
    t_step: float = Field(default=DEFAULT_T_STEP, gt=0)
    lam: float = Field(default=1.0, gt=0)
    n_terms: int = Field(default=3, ge=2)
    rate_scale: float = Field(default=2.0, gt=0)


class OutputSpec(_Spec):
    path: Optional[str] = None
    format: Literal["csv", "json"] = "json"


class ExperimentParams(_Spec):
    """Experiment-specific knobs; unset fields fall back to the handler's default."""

    dim: Optional[int] = Field(default=None, ge=1, le=MAX_BLOCK_DIM)
    min_dim: Optional[int] = Field(default=None, ge=1, le=MAX_BLOCK_DIM)
    max_dim: Optional[int] = Field(default=None, ge=1, le=MAX_BLOCK_DIM)
    fan_dim: Optional[int] = Field(default=None, ge=1, le=MAX_BLOCK_DIM)
    fan_noncommuting_trials: Optional[int] = Field(default=None, ge=0)
    calderon_cases: Optional[int] = Field(default=None, ge=0)
    sup_trials: Optional[int] = Field(default=None, ge=1)
    duality_p: Optional[List[float]] = Field(default=None, min_length=1)
    weights: Optional[List[float]] = Field(default=None, min_length=1)

    @field_validator("duality_p")
    @classmethod
    def _duality_p_in_range(cls, values: Optional[List[float]]) -> Optional[List[float]]:
        return None if values is None else [_check_open_p(p) for p in values]

    @field_validator("weights")
    @classmethod
    def _weights_positive(cls, values: Optional[List[float]]) -> Optional[List[float]]:
        if values is not None and any(not (0 < w < math.inf) for w in values):
            raise ValueError("witness weights must be positive and finite")
        return values

    @model_validator(mode="after")
    def _dim_range(self) -> ExperimentParams:
        lo = self.min_dim if self.min_dim is not None else 1
        hi = self.max_dim if self.max_dim is not None else MAX_BLOCK_DIM
        if lo > hi:
            raise ValueError(f"min_dim {lo} must not exceed max_dim {hi}")
        return self


class ExperimentConfig(_Spec):
    """Validated description of one experiment run. The seed is mandatory."""

    experiment: str
    seed: int = Field(ge=0)
    p: float = 2.0
    p_values: List[float] = Field(default_factory=lambda: [1.5, 2.0, 3.0])
    norm_exponents: List[float] = Field(default_factory=lambda: [1.0, 1.5, 2.0, 3.0, math.inf])
    trials: int = Field(default=100, ge=1)
    workers: Optional[int] = Field(default=None, ge=1)
    dims: List[int] = Field(default_factory=lambda: [2, 4, 8])
    algebra: Optional[AlgebraSpec] = None
    centralizer: CentralizerSpec = Field(default_factory=CentralizerSpec)
    phis: List[PhiSpec] = Field(default_factory=lambda: ["identity", "clip(-1,1)"])
    n_values: List[int] = Field(default_factory=lambda: [2, 4, 8, 16, 32, 64, 128, 256])
    weight_rules: List[str] = Field(default_factory=lambda: list(WEIGHT_RULES))
    thetas: List[float] = Field(default_factory=lambda: [1 / 3, 1 / 2, 2 / 3])
    couples: List[str] = Field(default_factory=lambda: ["M_L1", "kosaki_left"])
    grid: GridSpec = Field(default_factory=GridSpec)
    strip: StripSpec = Field(default_factory=StripSpec)
    output: OutputSpec = Field(default_factory=OutputSpec)
    params: ExperimentParams = Field(default_factory=ExperimentParams)

    @field_validator("p")
    @classmethod
    def _p_in_range(cls, p: float) -> float:
        return _check_open_p(p)

    @field_validator("p_values")
    @classmethod
    def _p_values_in_range(cls, values: List[float]) -> List[float]:
        return [_check_open_p(p) for p in values]

    @field_validator("norm_exponents")
    @classmethod
    def _norm_exponents_in_range(cls, values: List[float]) -> List[float]:
        if any(not (p >= 1) for p in values):
            raise ValueError("norm exponents must lie in [1, inf]")
        return values

    @field_validator("dims")
    @classmethod
    def _dims_positive(cls, dims: List[int]) -> List[int]:
        if any(d < 1 or d > 1024 for d in dims):
            raise ValueError("dims must lie in [1, 1024]")
        return dims

    @field_validator("n_values")
    @classmethod
    def _n_positive(cls, values: List[int]) -> List[int]:
        if any(n < 1 for n in values):
            raise ValueError("n must be >= 1")
        return values

    @field_validator("weight_rules")
    @classmethod
    def _known_rules(cls, rules: List[str]) -> List[str]:
        unknown = sorted(set(rules) - set(WEIGHT_RULES))
        if unknown:
            raise ValueError(f"unknown weight rules {unknown}, expected {list(WEIGHT_RULES)}")
        return rules

    @field_validator("thetas")
    @classmethod
    def _thetas_in_range(cls, thetas: List[float]) -> List[float]:
        if any(not (0 < t < 1) for t in thetas):
            raise ValueError("theta must lie in (0, 1)")
        return thetas

    @field_validator("couples")
    @classmethod
    def _known_couples(cls, couples: List[str]) -> List[str]:
        unknown = sorted(set(couples) - set(COUPLE_NAMES))
        if unknown:
            raise ValueError(f"unknown couples {unknown}, expected {list(COUPLE_NAMES)}")
        return couples

    @property
    def q(self) -> float:
        return conjugate_exponent(self.p)

    def build_algebra(self, default_dim: int = 2) -> Algebra:
        if self.algebra is not None:
            return self.algebra.build()
        return Algebra.matrix(default_dim)

    def build_centralizer(self) -> NCCentralizer:
        try:
            return self.centralizer.build(self.p)
        except NclpError as e:
            raise ConfigError(f"invalid centralizer: {e}") from e

    def scalar_functions(self) -> List[LipschitzFunction]:
        return [from_config(phi) for phi in self.phis]

    def param(self, name: str, default: Any) -> Any:
        value = getattr(self.params, name)
        return default if value is None else value

    def with_overrides(
        self,
        experiment: Optional[str] = None,
        out: Optional[str] = None,
        fmt: Optional[str] = None,
    ) -> ExperimentConfig:
        """Apply CLI overrides and re-validate."""
        data = self.model_dump()
        if experiment:
            data["experiment"] = experiment
        if out:
            data["output"]["path"] = out
        if fmt:
            data["output"]["format"] = fmt
        return validate_config(data)


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        where = ".".join(str(loc) for loc in item["loc"]) or "<root>"
        parts.append(f"{where}: {item['msg']}")
    return "; ".join(parts)


def validate_config(data: Any) -> ExperimentConfig:
    """Validate a parsed document.

    Raises:
        ConfigError: If the document does not describe a valid experiment
    """
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping")
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid config: {_describe(e)}") from e


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Load and validate a YAML experiment config.

    Raises:
        ConfigError: If the file is missing, unparsable or invalid
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"cannot parse config {path}: {e}") from e
    config = validate_config(data)
    logger.debug(f"loaded config for '{config.experiment}' from {path}")
    return config
