"""Unit tests for nclp.domain.twisted_sum."""

import math

import numpy as np
import pytest

from nclp.app.exceptions import AlgebraMismatchError, ConfigError, PreconditionError
from nclp.domain.algebra.algebra import Algebra
from nclp.domain.algebra.sampling import random_element, random_unitary
from nclp.domain.algebra.spectral import lp_norm, normalize
from nclp.domain.centralizers import scalar_functions
from nclp.domain.centralizers.nc_centralizer import NCCentralizer
from nclp.domain.twisted_sum import (
    TwistedPair,
    duality_pairing,
    elementary_inequality_check,
    inequality_ratio,
    module_action,
    module_bound,
    nontriviality_witness,
    quasi_norm,
    sigma_elementary_duality_bound,
    witness_weights,
)


class TestTwistedPair:
    """Tests for the quasi-norm and the module action."""

    def test_graph_points_have_norm_of_f(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """||(Omega f, f)|| = ||f||_p."""
        omega = NCCentralizer.omega(2.0)
        f = random_element(block_algebra, rng)
        pair = TwistedPair(omega(f), f, omega, 2.0)
        assert quasi_norm(pair) == pytest.approx(lp_norm(f, 2.0), rel=1e-12)

    def test_quasi_norm_of_zero_f(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """With f = 0 the quasi-norm is ||g||_p."""
        g = random_element(block_algebra, rng)
        pair = TwistedPair(g, block_algebra.zero(), NCCentralizer.omega(3.0), 3.0)
        assert quasi_norm(pair) == pytest.approx(lp_norm(g, 3.0))

    def test_pair_arithmetic(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """Addition and scaling act coordinatewise."""
        omega = NCCentralizer.omega(2.0)
        g, f = random_element(block_algebra, rng), random_element(block_algebra, rng)
        pair = TwistedPair(g, f, omega, 2.0)
        doubled = pair + pair
        scaled = pair * 2.0
        assert doubled.g.allclose(scaled.g) and doubled.f.allclose(scaled.f)

    def test_unitary_action_is_isometric(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """u(g, f) has the same quasi-norm as (g, f) because omega_p is unitarily equivariant."""
        omega = NCCentralizer.omega(2.5)
        pair = TwistedPair(random_element(block_algebra, rng), random_element(block_algebra, rng), omega, 2.5)
        u = random_unitary(block_algebra, rng)
        v = random_unitary(block_algebra, rng)
        assert quasi_norm(module_action(u, pair)) == pytest.approx(quasi_norm(pair), rel=1e-9)
        assert quasi_norm(module_action(u, pair, v)) == pytest.approx(quasi_norm(pair), rel=1e-9)

    def test_module_bound_with_unitaries(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """Unitaries meet the bimodule bound even with c_hat = 0."""
        omega = NCCentralizer.omega(2.0)
        pair = TwistedPair(random_element(block_algebra, rng), random_element(block_algebra, rng), omega, 2.0)
        u = random_unitary(block_algebra, rng)
        lhs, rhs = module_bound(u, pair, u.adjoint(), 0.0)
        assert lhs <= rhs * (1 + 1e-9)

    def test_mismatched_algebras(self, block_algebra: Algebra) -> None:
        """Coordinates and actions must share one algebra."""
        other = Algebra.matrix(2)
        omega = NCCentralizer.omega(2.0)
        with pytest.raises(AlgebraMismatchError):
            TwistedPair(block_algebra.identity(), other.identity(), omega, 2.0)
        pair = TwistedPair(block_algebra.identity(), block_algebra.identity(), omega, 2.0)
        with pytest.raises(AlgebraMismatchError):
            module_action(other.identity(), pair)


class TestWitness:
    """Tests for the nontriviality witnesses."""

    @pytest.mark.parametrize("rule", ["uniform", "geometric", "random"])
    def test_ratio_is_log_n(self, rule: str, rng: np.random.Generator) -> None:
        """The witness ratio equals log n to 1e-9 for every weight profile."""
        for n in (2, 4, 16, 64, 256):
            weights = witness_weights(n, rule, rng)
            for p in (1.5, 2.0, 3.0):
                witness = nontriviality_witness(list(weights), p)
                assert witness.n == n
                assert abs(witness.ratio - math.log(n)) <= 1e-9 * max(1.0, math.log(n))

    def test_single_projection(self) -> None:
        """n = 1 gives a zero distance."""
        assert nontriviality_witness([3.0], 2.0).ratio == pytest.approx(0.0, abs=1e-12)

    def test_witness_is_normalized(self) -> None:
        """||f||_p = 1 for any weights."""
        witness = nontriviality_witness([0.5, 1.0, 7.0], 2.5)
        assert lp_norm(witness.f, 2.5) == pytest.approx(1.0, rel=1e-12)

    def test_bad_inputs(self) -> None:
        """Empty weights, p out of range and unknown rules are rejected."""
        with pytest.raises(PreconditionError):
            nontriviality_witness([], 2.0)
        with pytest.raises(PreconditionError):
            nontriviality_witness([1.0], 1.0)
        with pytest.raises(ConfigError):
            witness_weights(3, "fibonacci")
        with pytest.raises(PreconditionError):
            witness_weights(3, "random")


class TestDuality:
    """Tests for the pairing, the elementary inequality and the sigma-elementary bound."""

    def test_pairing_value(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """<(x, y), (v, w)> = tau(x w - y v)."""
        x, y, v, w = (random_element(block_algebra, rng) for _ in range(4))
        xy = TwistedPair(x, y, NCCentralizer.omega(3.0), 3.0)
        vw = TwistedPair(v, w, NCCentralizer.omega(1.5), 1.5)
        assert duality_pairing(xy, vw) == pytest.approx((x @ w - y @ v).trace())

    def test_pairing_needs_conjugate_exponents(self, block_algebra: Algebra) -> None:
        """1/p + 1/q must equal 1."""
        one = block_algebra.identity()
        xy = TwistedPair(one, one, NCCentralizer.omega(2.0), 2.0)
        vw = TwistedPair(one, one, NCCentralizer.omega(3.0), 3.0)
        with pytest.raises(PreconditionError):
            duality_pairing(xy, vw)

    def test_inequality_ratio_zero_convention(self) -> None:
        """0 log 0 = 0 on the axes."""
        assert inequality_ratio(0.0, 5.0, 2.0, 1.0) == 0.0
        assert inequality_ratio(5.0, 0.0, 2.0, 1.0) == 0.0

    def test_inequality_holds_at_two(self) -> None:
        """At p = 2 the constant 2/e is sharp enough for the whole grid."""
        result = elementary_inequality_check(2.0, points=400)
        assert result.violations == 0
        assert result.stated_violations == 0
        assert result.max_ratio <= 1.0

    @pytest.mark.parametrize("p", [1.25, 1.5, 3.0, 5.0])
    def test_inequality_with_max_constant(self, p: float) -> None:
        """The constant max(p, q)/e bounds the grid for every p."""
        result = elementary_inequality_check(p, points=400)
        assert result.violations == 0
        assert result.points == 400 * 400

    def test_constant_p_over_e_fails_below_two(self) -> None:
        """For p < 2 the constant p/e is too small somewhere on the grid."""
        result = elementary_inequality_check(1.25, points=400)
        assert result.stated_violations > 0
        assert result.stated_max_ratio > 1.0

    def test_sigma_bound_holds(self, rng: np.random.Generator) -> None:
        """The sigma-elementary duality estimate holds on random diagonal data."""
        algebra = Algebra.diagonal([0.5, 1.0, 2.0, 4.0])
        for p in (1.25, 1.5, 2.0):
            q = p / (p - 1)
            for phi in (scalar_functions.identity(), scalar_functions.clip(-1.0, 1.0)):
                y = normalize(algebra.diag(rng.exponential(size=4) + 1e-3), q)
                w = normalize(algebra.diag(rng.exponential(size=4) + 1e-3), p)
                bound = sigma_elementary_duality_bound(y, w, p, phi)
                assert bound.holds
                assert bound.rhs == pytest.approx(2 * max(p, q) * phi.lipschitz / math.e)

    def test_sigma_bound_preconditions(self, rng: np.random.Generator) -> None:
        """p above 2, unnormalized inputs and non-diagonal inputs are rejected."""
        algebra = Algebra.diagonal([1.0, 1.0])
        phi = scalar_functions.identity()
        y = normalize(algebra.diag([1.0, 2.0]), 1.5)
        w = normalize(algebra.diag([1.0, 2.0]), 3.0)
        with pytest.raises(PreconditionError):
            sigma_elementary_duality_bound(y, w, 3.0, phi)
        y2 = normalize(algebra.diag([1.0, 2.0]), 2.0)
        with pytest.raises(PreconditionError):
            sigma_elementary_duality_bound(y2 * 2.0, y2, 2.0, phi)
        matrix = Algebra.matrix(2)
        dense = normalize(random_element(matrix, rng), 2.0)
        with pytest.raises(PreconditionError):
            sigma_elementary_duality_bound(dense, dense, 2.0, phi)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
