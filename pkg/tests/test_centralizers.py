"""Unit tests for nclp.domain.centralizers."""

import math

import numpy as np
import pytest

from nclp.app.exceptions import ConfigError, NotHermitianError, NotLazyError, PreconditionError
from nclp.domain.algebra.algebra import Algebra
from nclp.domain.algebra.sampling import (
    permutation_unitary,
    random_element,
    random_hermitian,
    random_normal,
    random_unitary,
    trial_rng,
)
from nclp.domain.algebra.spectral import lp_norm
from nclp.domain.centralizers import scalar_functions
from nclp.domain.centralizers.commutant import commutant_correction
from nclp.domain.centralizers.constants import (
    bimodule_ratio,
    estimate_C,
    estimate_C_trace,
    estimate_Q,
    estimate_Q_trace,
    quasi_linearity_ratio,
)
from nclp.domain.centralizers.nc_centralizer import (
    NCCentralizer,
    NCKind,
    kp_lipschitz,
    lift_centralizer,
    omega_p,
    phi_pm,
)
from nclp.domain.commutative.centralizers import CommCentralizer


class TestScalarFunctions:
    """Tests for named Lipschitz functions and their config parsing."""

    def test_parse_named(self) -> None:
        """Names and parameterized forms parse with their Lipschitz constants."""
        assert scalar_functions.parse("identity").lipschitz == 1.0
        clip = scalar_functions.parse("clip(-1, 1)")
        assert clip(5.0) == 1.0 and clip(-3.0) == -1.0 and clip(0.25) == 0.25
        assert scalar_functions.parse("const(2.5)").is_constant

    def test_parse_unknown(self) -> None:
        """Unknown names are configuration errors."""
        with pytest.raises(ConfigError):
            scalar_functions.parse("sqrt")

    def test_table_slope(self) -> None:
        """Tables interpolate linearly and report their steepest slope."""
        phi = scalar_functions.from_config([[0, 0], [1, 2], [3, 3]])
        assert phi.lipschitz == pytest.approx(2.0)
        assert phi(0.5).real == pytest.approx(1.0)
        assert phi(10.0).real == pytest.approx(3.0)

    def test_table_rejects_unsorted_knots(self) -> None:
        """Knots must increase strictly."""
        with pytest.raises(PreconditionError):
            scalar_functions.table([(1.0, 0.0), (0.0, 1.0)])


class TestNCCentralizers:
    """Tests for omega_p, its Lipschitz variants and the spectral lifting."""

    def test_omega_on_diagonal(self) -> None:
        """On diagonal elements omega_p acts entrywise as p x log(|x|/||x||_p)."""
        algebra = Algebra.diagonal([1.0, 2.0, 0.5])
        values = np.array([2.0, -1.0, 0.5j])
        x = algebra.diag(values)
        p = 3.0
        norm = lp_norm(x, p)
        expected = p * values * np.log(np.abs(values) / norm)
        assert np.allclose(omega_p(x, p).diagonal(), expected)

    def test_omega_is_homogeneous(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """omega_p(c x) = c omega_p(x)."""
        x = random_element(block_algebra, rng)
        c = 2.0 - 0.5j
        assert omega_p(x * c, 2.0).allclose(omega_p(x, 2.0) * c, 1e-9)

    def test_omega_of_zero(self, block_algebra: Algebra) -> None:
        """omega_p(0) = 0."""
        assert omega_p(block_algebra.zero(), 2.0).is_zero()

    def test_rejects_p_out_of_range(self, block_algebra: Algebra) -> None:
        """p must lie strictly between 1 and infinity."""
        with pytest.raises(PreconditionError):
            omega_p(block_algebra.identity(), 1.0)
        with pytest.raises(PreconditionError):
            NCCentralizer.omega(math.inf)

    def test_identity_lipschitz_is_omega(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """phi = identity recovers omega_p."""
        x = random_element(block_algebra, rng)
        phi = scalar_functions.identity()
        assert kp_lipschitz(x, 1.5, phi).allclose(omega_p(x, 1.5), 1e-10)

    def test_signs_sum_to_omega_over_p(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """phi+ + phi- = omega_p / p."""
        x = random_element(block_algebra, rng)
        total = phi_pm(x, 3.0, True) + phi_pm(x, 3.0, False)
        assert total.allclose(omega_p(x, 3.0) * (1 / 3.0), 1e-10)

    def test_lift_matches_omega(self) -> None:
        """The lifted commutative Kalton-Peck map equals omega_p on normal elements."""
        for i in range(10):
            sub = trial_rng(11, i)
            algebra = Algebra.matrix(int(sub.integers(2, 9)))
            x = random_normal(algebra, sub)
            for p in (1.5, 2.0, 3.0):
                lifted = lift_centralizer(CommCentralizer.kalton_peck(p), x, p)
                direct = omega_p(x, p)
                assert lp_norm(lifted - direct, p) <= 1e-10 * max(lp_norm(x, p), lp_norm(direct, p))

    def test_lift_rejects_non_lazy(self, block_algebra: Algebra) -> None:
        """Only lazy centralizers can be lifted."""
        phi = CommCentralizer.from_callable(2.0, lambda g: g, lazy=False)
        with pytest.raises(NotLazyError):
            lift_centralizer(phi, block_algebra.identity(), 2.0)
        with pytest.raises(NotLazyError):
            NCCentralizer.lifted(phi)

    def test_lift_rejects_exponent_mismatch(self, block_algebra: Algebra) -> None:
        """The commutative centralizer's exponent must equal p."""
        with pytest.raises(PreconditionError):
            lift_centralizer(CommCentralizer.kalton_peck(3.0), block_algebra.identity(), 2.0)

    def test_left_and_right_unitary_equivariance(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """Omega(u x) = u Omega(x) and Omega(x u) = Omega(x) u."""
        x = random_element(block_algebra, rng)
        u = random_unitary(block_algebra, rng)
        for omega in (NCCentralizer.omega(2.5), NCCentralizer(NCKind.PHI_MINUS, 2.5)):
            image = omega(x)
            assert omega(u @ x).allclose(u @ image, 1e-9)
            assert omega(x @ u).allclose(image @ u, 1e-9)

    def test_lipschitz_needs_function(self) -> None:
        """A Lipschitz centralizer without its scalar function is rejected."""
        with pytest.raises(PreconditionError):
            NCCentralizer(NCKind.LIPSCHITZ, 2.0)

    def test_describe(self) -> None:
        """Descriptions name the kind and exponent."""
        assert NCCentralizer.omega(2.0).describe() == "omega_p(p=2)"
        phi = scalar_functions.clip(-1.0, 1.0)
        assert NCCentralizer.lipschitz(2.0, phi).describe() == "lipschitz(p=2, phi=clip(-1,1))"

    @pytest.mark.parametrize("kind", ["phi_plus", "phi_minus", "lipschitz", "lifted"])
    def test_permutation_conjugation(self, kind: str) -> None:
        """Omega(P x P*) = P Omega(x) P* for diagonal x and a permutation unitary P."""
        p = 2.5
        omega = {
            "phi_plus": NCCentralizer(NCKind.PHI_PLUS, p),
            "phi_minus": NCCentralizer(NCKind.PHI_MINUS, p),
            "lipschitz": NCCentralizer.lipschitz(p, scalar_functions.clip(-1.0, 1.0)),
            "lifted": NCCentralizer.lifted(CommCentralizer.kalton_peck(p)),
        }[kind]
        algebra = Algebra.matrix(4)
        for i in range(5):
            sub = trial_rng(8, i)
            x = algebra.diag(sub.standard_normal(4) + 1j * sub.standard_normal(4))
            pu = permutation_unitary(algebra, [int(j) for j in sub.permutation(4)])
            expected = pu @ omega(x) @ pu.adjoint()
            assert omega(pu @ x @ pu.adjoint()).allclose(expected, 1e-10)


class TestCommutant:
    """Tests for the commutant correction."""

    def test_omega_already_commutes(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """For Hermitian x, omega_p(x) commutes with x, so the correction changes nothing."""
        h = random_hermitian(block_algebra, rng)
        omega = NCCentralizer.omega(2.0)
        assert commutant_correction(omega, h).allclose(omega(h), 1e-9)

    def test_correction_commutes_with_input(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """The corrected value commutes with x even when psi(x) does not."""
        h = random_hermitian(block_algebra, rng)
        junk = random_element(block_algebra, rng)
        corrected = commutant_correction(lambda x: x @ junk, h)
        assert corrected.commutator(h).max_abs() <= 1e-9 * max(1.0, corrected.max_abs() * h.max_abs())

    def test_distinct_eigenvalues_zero_off_diagonal(self) -> None:
        """With eigenspaces on the coordinate axes only the diagonal survives."""
        algebra = Algebra.matrix(2)
        full = algebra.element([np.array([[1.0, 2.0], [3.0, 4.0]])])
        corrected = commutant_correction(lambda x: full, algebra.diag([1.0, 2.0]))
        assert np.allclose(corrected.blocks[0], [[1.0, 0.0], [0.0, 4.0]])
        assert commutant_correction(lambda x: full, algebra.identity()).allclose(full)

    def test_requires_hermitian(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """Non-Hermitian inputs have no real spectral resolution."""
        with pytest.raises(NotHermitianError):
            commutant_correction(NCCentralizer.omega(2.0), random_element(block_algebra, rng))


class TestConstants:
    """Tests for the seeded Q and C estimators."""

    def test_history_is_monotone(self, block_algebra: Algebra) -> None:
        """The estimate is a running maximum."""
        estimate = estimate_Q_trace(NCCentralizer.omega(2.0), block_algebra, 2.0, 30, seed=5)
        assert list(estimate.history) == sorted(estimate.history)
        assert estimate.trials == 30
        assert estimate.value == estimate.history[-1]

    def test_independent_of_workers(self, block_algebra: Algebra) -> None:
        """Trial i always uses trial_rng(seed, i), so threading changes nothing."""
        omega = NCCentralizer.omega(2.0)
        serial = estimate_C(omega, block_algebra, 2.0, 12, seed=9)
        threaded = estimate_C(omega, block_algebra, 2.0, 12, seed=9, workers=4)
        assert serial == threaded

    def test_more_trials_never_lower(self, block_algebra: Algebra) -> None:
        """Extending the trial count keeps the earlier prefix."""
        omega = NCCentralizer.omega(3.0)
        short = estimate_Q(omega, block_algebra, 3.0, 10, seed=1)
        long = estimate_Q(omega, block_algebra, 3.0, 25, seed=1)
        assert long >= short

    def test_linear_centralizer_has_zero_q(self, block_algebra: Algebra) -> None:
        """A constant phi makes the centralizer linear."""
        linear = NCCentralizer.lipschitz(2.0, scalar_functions.const(1.5))
        assert linear.is_linear
        assert estimate_Q(linear, block_algebra, 2.0, 20, seed=3) <= 1e-12

    def test_omega_is_not_linear(self, block_algebra: Algebra) -> None:
        """omega_p has a strictly positive quasi-linearity defect."""
        assert estimate_Q(NCCentralizer.omega(2.0), block_algebra, 2.0, 20, seed=3) > 0.01

    def test_diagonal_phases_commute(self) -> None:
        """Diagonal unitaries acting on diagonal x give a zero bimodule defect."""
        algebra = Algebra.diagonal([1.0, 2.0, 3.0])
        omega = NCCentralizer.omega(2.0)
        for i in range(10):
            sub = trial_rng(2, i)
            a = algebra.diag(np.exp(2j * np.pi * sub.random(3)))
            b = algebra.diag(np.exp(2j * np.pi * sub.random(3)))
            x = algebra.diag(sub.standard_normal(3) + 1j * sub.standard_normal(3))
            assert bimodule_ratio(omega, a, x, b, 2.0) <= 1e-12

    def test_zero_inputs(self, block_algebra: Algebra) -> None:
        """Zero denominators give a zero ratio."""
        zero = block_algebra.zero()
        omega = NCCentralizer.omega(2.0)
        assert quasi_linearity_ratio(omega, zero, zero, 2.0) == 0.0
        assert bimodule_ratio(omega, zero, zero, zero, 2.0) == 0.0

    def test_identity_multipliers_give_zero(self, block_algebra: Algebra, rng: np.random.Generator) -> None:
        """With a = b = 1 the bimodule defect vanishes exactly."""
        one = block_algebra.identity()
        x = random_element(block_algebra, rng)
        assert bimodule_ratio(NCCentralizer.omega(2.0), one, x, one, 2.0) == 0.0

    def test_rejects_zero_trials(self, block_algebra: Algebra) -> None:
        """At least one trial is needed."""
        with pytest.raises(PreconditionError):
            estimate_C_trace(NCCentralizer.omega(2.0), block_algebra, 2.0, 0, seed=1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
