"""Shared fixtures for the nclp test suites."""

import numpy as np
import pytest

from nclp.domain.algebra.algebra import Algebra


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so every test is reproducible."""
    return np.random.default_rng(20240601)


@pytest.fixture
def block_algebra() -> Algebra:
    """Two blocks with distinct weights: M_2(w=0.5) + M_3(w=2)."""
    return Algebra.from_pairs([(2, 0.5), (3, 2.0)])
