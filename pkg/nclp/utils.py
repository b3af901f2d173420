import functools
import math
import time
from typing import Any, Callable, Iterable, List, TypeVar

from nclp.app.utils.logger import get_logger

logger = get_logger()

T = TypeVar("T")


def conjugate_exponent(p: float) -> float:
    """Return q with 1/p + 1/q = 1 (q = inf for p = 1, q = 1 for p = inf)."""
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def log_spaced(lo: float, hi: float, points: int) -> List[float]:
    if points == 1:
        return [lo]
    step = (math.log(hi) - math.log(lo)) / (points - 1)
    return [math.exp(math.log(lo) + i * step) for i in range(points)]


def running_max(values: Iterable[float], start: float = 0.0) -> List[float]:
    out = []
    best = start
    for v in values:
        best = max(best, v)
        out.append(best)
    return out


def relative_error(measured: float, expected: float, floor: float = 1e-300) -> float:
    return abs(measured - expected) / max(abs(expected), floor)


def logging_decorator(func: Callable[..., T]) -> Callable[..., T]:
    """Decorator to log method name and elapsed wall time."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> T:
        logger.debug(f"Calling {func.__qualname__}")
        started = time.perf_counter()
        result = func(*args, **kwargs)
        logger.debug(f"{func.__qualname__} finished in {time.perf_counter() - started:.3f}s")
        return result

    return wrapper

