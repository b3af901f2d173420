"""Unit tests for nclp.domain.algebra."""

import math

import numpy as np
import pytest

from nclp.app.exceptions import AlgebraMismatchError, NotHermitianError, PreconditionError
from nclp.domain.algebra.algebra import Algebra, Element, embed, restrict
from nclp.domain.algebra.expectation import (
    block_partition,
    conditional_expectation,
    diagonal_partition,
    spectral_partition,
)
from nclp.domain.algebra.sampling import (
    random_algebra,
    random_contraction,
    random_density,
    random_element,
    random_hermitian,
    random_normal,
    random_positive,
    random_unitary,
    trial_rng,
)
from nclp.domain.algebra.spectral import (
    func_calc,
    is_positive,
    lp_norm,
    mu,
    normalize,
    polar,
    power,
    spectral_decomposition,
    split_at_level,
)


class TestAlgebra:
    """Tests for Algebra and Element basics."""

    def test_trace_uses_block_weights(self, block_algebra: Algebra) -> None:
        """tau(1) is the weighted sum of block dimensions."""
        assert block_algebra.total_trace == pytest.approx(2 * 0.5 + 3 * 2.0)
        assert block_algebra.identity().trace() == pytest.approx(7.0)

    def test_nilpotent_has_zero_trace(self) -> None:
        """A strictly upper triangular element squares to zero and has trace zero."""
        algebra = Algebra.matrix(2)
        x = algebra.element([np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)])
        assert (x @ x).max_abs() == 0.0
        assert x.trace() == 0

    def test_rejects_nonpositive_weight(self) -> None:
        """A zero weight would make the trace unfaithful."""
        with pytest.raises(PreconditionError):
            Algebra.from_pairs([(2, 0.0)])

    def test_rejects_empty_algebra(self) -> None:
        """An algebra needs at least one block."""
        with pytest.raises(PreconditionError):
            Algebra(())

    def test_mixing_algebras_raises(self, block_algebra: Algebra) -> None:
        """Arithmetic across algebras is refused."""
        other = Algebra.matrix(5)
        with pytest.raises(AlgebraMismatchError):
            block_algebra.identity() + other.identity()

    def test_elements_are_immutable(self, block_algebra: Algebra) -> None:
        """Blocks are frozen copies."""
        x = block_algebra.identity()
        with pytest.raises(ValueError):
            x.blocks[0][0, 0] = 5.0

    def test_diag_splits_values_over_blocks(self, block_algebra: Algebra) -> None:
        """diag assigns consecutive values to consecutive blocks."""
        x = block_algebra.diag([1, 2, 3, 4, 5])
        assert np.allclose(x.diagonal(), [1, 2, 3, 4, 5])
        assert x.trace() == pytest.approx(0.5 * 3 + 2.0 * 12)

    def test_restrict_then_embed_is_identity(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """Summand inclusion after restriction keeps the summand part."""
        x = random_element(block_algebra, rng)
        piece = restrict(x, [1])
        back = embed(piece, block_algebra, [1])
        assert np.array_equal(back.blocks[1], x.blocks[1])
        assert not np.any(back.blocks[0])
        assert piece.trace() == pytest.approx(block_algebra.weights[1] * np.trace(x.blocks[1]))


class TestSpectral:
    """Tests for norms, polar decomposition and functional calculus."""

    def test_lp_norm_of_identity(self, block_algebra: Algebra) -> None:
        """||1||_p = tau(1)^(1/p); ||1||_inf = 1."""
        one = block_algebra.identity()
        for p in (1.0, 2.0, 3.5):
            assert lp_norm(one, p) == pytest.approx(7.0 ** (1 / p), rel=1e-12)
        assert lp_norm(one, math.inf) == pytest.approx(1.0)

    def test_lp_norm_rejects_small_p(self, block_algebra: Algebra) -> None:
        """Exponents below 1 are outside the Banach range."""
        with pytest.raises(PreconditionError):
            lp_norm(block_algebra.identity(), 0.5)

    def test_mu_matches_lp_norm(self, rng: np.random.Generator) -> None:
        """The generalized singular value function reproduces every L^p norm."""
        for i in range(20):
            sub = trial_rng(7, i)
            algebra = random_algebra(sub)
            x = random_element(algebra, sub)
            m = mu(x)
            for p in (1.5, 2.0, 3.0):
                assert m.lp_norm(p) == pytest.approx(lp_norm(x, p), rel=1e-10)
            assert m.lp_norm(math.inf) == pytest.approx(lp_norm(x, math.inf), rel=1e-12)

    def test_mu_is_decreasing_with_total_width(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """mu has strictly decreasing values; widths sum to the trace of the support."""
        m = mu(random_element(block_algebra, rng))
        values = [v for v, _ in m.steps]
        assert values == sorted(values, reverse=True)
        assert m.support == pytest.approx(block_algebra.total_trace)

    def test_mu_distribution(self) -> None:
        """The distribution function counts the trace where |x| exceeds lambda."""
        algebra = Algebra.from_pairs([(1, 1.0), (1, 2.0), (1, 0.5)])
        m = mu(algebra.diag([3.0, -1.0, 2.0]))
        assert m.distribution(0.5) == pytest.approx(3.5)
        assert m.distribution(1.5) == pytest.approx(1.5)
        assert m.distribution(3.0) == 0.0
        assert m(0.5) == 3.0 and m(1.2) == 2.0 and m(3.0) == 1.0 and m(10.0) == 0.0

    def test_holder(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """||xy||_1 <= ||x||_p ||y||_q."""
        x = random_element(block_algebra, rng)
        y = random_element(block_algebra, rng)
        assert lp_norm(x @ y, 1.0) <= lp_norm(x, 3.0) * lp_norm(y, 1.5) * (1 + 1e-12)

    def test_polar_reconstructs(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """x = u|x| with u a partial isometry."""
        x = random_element(block_algebra, rng)
        u, a = polar(x)
        assert (u @ a).allclose(x, 1e-10)
        assert (u @ u.adjoint() @ u).allclose(u, 1e-10)
        assert a.is_hermitian()

    def test_polar_of_singular_element(self) -> None:
        """The partial isometry vanishes on the kernel."""
        algebra = Algebra.matrix(2)
        x = algebra.element([np.array([[1.0, 0.0], [0.0, 0.0]])])
        u, a = polar(x)
        assert u.allclose(x)
        assert a.allclose(x)

    def test_spectral_decomposition_groups_repeated_eigenvalues(self) -> None:
        """Equal eigenvalues across blocks merge into one projection."""
        algebra = Algebra.from_pairs([(2, 1.0), (1, 3.0)])
        x = algebra.diag([2.0, 5.0, 2.0])
        sd = spectral_decomposition(x)
        assert sd.values == pytest.approx((2.0, 5.0))
        assert sd.traces() == pytest.approx((4.0, 1.0))
        assert sd.reconstruct().allclose(x)

    def test_spectral_decomposition_rejects_non_hermitian(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """Only Hermitian elements have a real spectral resolution here."""
        x = random_element(block_algebra, rng)
        with pytest.raises(NotHermitianError):
            spectral_decomposition(x)

    def test_func_calc_is_multiplicative(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """(fg)(h) = f(h) g(h)."""
        h = random_hermitian(block_algebra, rng)
        fg = func_calc(h, lambda t: (t * t + 1.0) * math.sin(t))
        product = func_calc(h, lambda t: t * t + 1.0) @ func_calc(h, math.sin)
        assert fg.allclose(product, 1e-10)

    def test_power_rejects_singular(self) -> None:
        """Complex powers need a positive definite element."""
        algebra = Algebra.matrix(2)
        with pytest.raises(PreconditionError):
            power(algebra.diag([1.0, 0.0]), 0.5j)

    def test_power_composes(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """d^z d^w = d^(z+w)."""
        d = random_positive(block_algebra, rng, floor=0.1)
        lhs = power(d, 0.3 + 1j) @ power(d, 0.2 - 0.5j)
        assert lhs.allclose(power(d, 0.5 + 0.5j), 1e-9)

    def test_split_at_level(self) -> None:
        """The two spectral parts add back to the element."""
        algebra = Algebra.diagonal([1.0, 1.0, 1.0])
        x = algebra.diag([0.5, 1.0, 3.0])
        below, above = split_at_level(x, 1.0)
        assert np.allclose(below.diagonal(), [0.5, 1.0, 0.0])
        assert np.allclose(above.diagonal(), [0.0, 0.0, 3.0])

    def test_is_positive(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """Positive elements pass; non-Hermitian and indefinite ones do not."""
        assert is_positive(random_positive(block_algebra, rng))
        assert is_positive(block_algebra.zero())
        assert not is_positive(block_algebra.identity() * -1.0)
        assert not is_positive(random_element(block_algebra, rng))

    def test_real_and_imaginary_parts(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """x = Re x + i Im x with both parts Hermitian."""
        x = random_element(block_algebra, rng)
        re, im = x.real_part(), x.imag_part()
        assert re.is_hermitian() and im.is_hermitian()
        assert (re + im * 1j).allclose(x, 1e-12)

    def test_normalize_zero_raises(self, block_algebra: Algebra) -> None:
        """The zero element cannot be normalized."""
        with pytest.raises(PreconditionError):
            normalize(block_algebra.zero(), 2.0)


class TestExpectation:
    """Tests for conditional expectations."""

    def test_idempotent_and_trace_preserving(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """E(E(x)) = E(x) and tau(E(x)) = tau(x)."""
        x = random_element(block_algebra, rng)
        for partition in (diagonal_partition(block_algebra), block_partition(block_algebra)):
            e = conditional_expectation(x, partition)
            assert conditional_expectation(e, partition).allclose(e, 1e-12)
            assert e.trace() == pytest.approx(x.trace(), rel=1e-12)

    def test_contractive(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """||E(x)||_p <= ||x||_p."""
        x = random_element(block_algebra, rng)
        e = conditional_expectation(x, diagonal_partition(block_algebra))
        for p in (1.0, 2.0, 4.0):
            assert lp_norm(e, p) <= lp_norm(x, p) * (1 + 1e-12)

    def test_rejects_overlapping_projections(self, block_algebra: Algebra) -> None:
        """Partitions must consist of orthogonal projections."""
        one = block_algebra.identity()
        with pytest.raises(PreconditionError):
            conditional_expectation(one, [one, one])

    def test_spectral_partition_completes(self) -> None:
        """Missing mass is added as 1 - sum e_i."""
        algebra = Algebra.diagonal([1.0, 2.0])
        e = algebra.diag([1.0, 0.0])
        partition = spectral_partition([e])
        assert len(partition) == 2
        assert partition[1].allclose(algebra.diag([0.0, 1.0]))
        assert len(spectral_partition(partition)) == 2


class TestSampling:
    """Tests for the seeded samplers."""

    def test_trial_rng_is_reproducible(self) -> None:
        """Substream i depends only on (seed, i)."""
        a = trial_rng(3, 5).standard_normal(4)
        b = trial_rng(3, 5).standard_normal(4)
        c = trial_rng(3, 6).standard_normal(4)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_unitary_is_unitary(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """u* u = 1."""
        u = random_unitary(block_algebra, rng)
        assert (u.adjoint() @ u).allclose(block_algebra.identity(), 1e-12)

    def test_unitary_is_seeded(self) -> None:
        """The Haar sampler draws from the generator it is given, 1x1 blocks included."""
        algebra = Algebra.from_pairs([(1, 1.0), (3, 0.5)])
        u = random_unitary(algebra, trial_rng(4, 0))
        assert u == random_unitary(algebra, trial_rng(4, 0))
        assert abs(u.blocks[0][0, 0]) == pytest.approx(1.0)

    def test_contraction_norm(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """Contractions have operator norm at most 1."""
        x = random_contraction(block_algebra, rng)
        assert lp_norm(x, math.inf) <= 1.0 + 1e-12

    def test_density_mass(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """Densities are positive definite with the requested trace."""
        d = random_density(block_algebra, rng, mass=2.5)
        assert d.trace().real == pytest.approx(2.5)
        assert min(spectral_decomposition(d).values) > 0

    def test_normal_elements_commute_with_adjoint(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """x x* = x* x."""
        x = random_normal(block_algebra, rng)
        assert (x @ x.adjoint()).allclose(x.adjoint() @ x, 1e-10)

    def test_random_algebra_respects_bounds(self) -> None:
        """Block counts and dimensions stay within the requested limits."""
        for i in range(10):
            algebra = random_algebra(trial_rng(1, i), max_blocks=2, max_dim=3)
            assert 1 <= len(algebra.blocks) <= 2
            assert all(1 <= d <= 3 for d in algebra.dims)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
