"""Conversion of domain objects to and from plain dicts for configs and reports."""

from typing import Any, Dict, List, Mapping, Optional

import numpy as np

from nclp.app.exceptions import ConfigError, NclpError
from nclp.domain.algebra.algebra import Algebra, Element
from nclp.domain.commutative.step_function import StepFunction
from nclp.domain.interpolation.kosaki import StateDensity
from nclp.domain.interpolation.strip import StripFunction


def complex_to_pair(value: complex) -> List[float]:
    """Convert a complex number to its [re, im] pair."""
    c = complex(value)
    return [c.real, c.imag]


def pair_to_complex(pair: Any) -> complex:
    """Convert an [re, im] pair (or a bare real) to a complex number.

    Raises:
        ConfigError: If the value is neither a number nor a two-element list
    """
    if isinstance(pair, (int, float)) and not isinstance(pair, bool):
        return complex(pair)
    if isinstance(pair, (list, tuple)) and len(pair) == 2:
        try:
            return complex(float(pair[0]), float(pair[1]))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid complex pair {pair!r}: {e}") from e
    raise ConfigError(f"expected [re, im], got {pair!r}")


def algebra_to_dict(algebra: Algebra) -> Dict[str, Any]:
    """Convert an Algebra to {blocks: [{dim, weight}]}."""
    return {"blocks": [{"dim": b.dim, "weight": b.weight} for b in algebra.blocks]}


def algebra_from_dict(data: Mapping[str, Any]) -> Algebra:
    """Build an Algebra from {blocks: [{dim, weight}]}.

    Args:
        data: Mapping with a "blocks" list; weight defaults to 1

    Returns:
        The described Algebra

    Raises:
        ConfigError: If the description is malformed or violates an Algebra invariant
    """
    try:
        blocks = data["blocks"]
        return Algebra.from_pairs((b["dim"], b.get("weight", 1.0)) for b in blocks)
    except (KeyError, TypeError) as e:
        raise ConfigError(f"malformed algebra description: {e}") from e
    except NclpError as e:
        raise ConfigError(f"invalid algebra: {e}") from e


def element_to_dict(x: Element) -> Dict[str, Any]:
    """Convert an Element to per-block row-major [re, im] arrays."""
    return {
        "algebra": algebra_to_dict(x.algebra),
        "blocks": [
            [[complex_to_pair(v) for v in row] for row in block] for block in x.blocks
        ],
    }


def element_from_dict(data: Mapping[str, Any], algebra: Optional[Algebra] = None) -> Element:
    """Build an Element from its dict form.

    Args:
        data: {"blocks": [[[re, im], ...], ...]} with an optional "algebra"
        algebra: Algebra to use when the dict carries none

    Returns:
        The Element

    Raises:
        ConfigError: If the block arrays do not match the algebra
    """
    if "algebra" in data:
        algebra = algebra_from_dict(data["algebra"])
    if algebra is None:
        raise ConfigError("element description needs an algebra")
    try:
        blocks = [
            np.array([[pair_to_complex(v) for v in row] for row in block], dtype=complex)
            for block in data["blocks"]
        ]
        return Element(algebra, tuple(blocks))
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed element description: {e}") from e
    except NclpError as e:
        raise ConfigError(f"invalid element: {e}") from e


def step_function_to_dict(f: StepFunction) -> Dict[str, Any]:
    return {
        "atoms": [
            {"re": v.real, "im": v.imag, "measure": m} for v, m in f.atoms
        ]
    }


def step_function_from_dict(data: Mapping[str, Any]) -> StepFunction:
    try:
        atoms = data["atoms"]
        return StepFunction(
            tuple(
                (complex(float(a["re"]), float(a.get("im", 0.0))), float(a["measure"]))
                for a in atoms
            )
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed step function: {e}") from e
    except NclpError as e:
        raise ConfigError(f"invalid step function: {e}") from e


def strip_function_to_dict(F: StripFunction) -> Dict[str, Any]:
    return {
        "algebra": algebra_to_dict(F.algebra),
        "lambda": F.lam,
        "terms": [
            {"rate": r, "coefficient": element_to_dict(a)["blocks"]} for r, a in F.terms
        ],
    }


def strip_function_from_dict(data: Mapping[str, Any], algebra: Optional[Algebra] = None) -> StripFunction:
    """Build a StripFunction from {lambda, terms: [{rate, coefficient}]}."""
    if "algebra" in data:
        algebra = algebra_from_dict(data["algebra"])
    try:
        terms = [
            (float(t["rate"]), element_from_dict({"blocks": t["coefficient"]}, algebra))
            for t in data["terms"]
        ]
        return StripFunction(float(data.get("lambda", 0.0)), tuple(terms))
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed strip function: {e}") from e
    except NclpError as e:
        raise ConfigError(f"invalid strip function: {e}") from e


def state_density_to_dict(d: StateDensity) -> Dict[str, Any]:
    return {"d": element_to_dict(d.d), "mass": d.mass}


def state_density_from_dict(data: Mapping[str, Any], algebra: Optional[Algebra] = None) -> StateDensity:
    """Build a StateDensity; "normalize: true" rescales d to the declared mass."""
    try:
        x = element_from_dict(data["d"], algebra)
        mass = float(data.get("mass", 1.0))
        if data.get("normalize", False):
            return StateDensity.normalized(x, mass)
        return StateDensity(x, mass)
    except KeyError as e:
        raise ConfigError(f"malformed state density: missing {e}") from e
    except NclpError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"invalid state density: {e}") from e
