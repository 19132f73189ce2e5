"""Tests for core/field.py - Plane-wave pressure field and its derivatives."""

import numpy as np
import pytest

from tests.helpers import WAVELENGTH, WAVENUMBER, pair_config, random_config
from wave_assembly.core import (
    DimensionError,
    ValidationError,
    WaveConfig,
    evaluate_field,
    evaluate_field_derivatives,
    evaluate_field_sample,
    evaluate_periodic_field,
    field_jet,
)
from wave_assembly.core.field import periodic_jet, project


class TestWaveConfig:
    """Test cases for WaveConfig validation and accessors."""

    def test_accepts_unit_wavevectors(self):
        """Test that columns of magnitude k are accepted."""
        cfg = WaveConfig(2.0, [[2.0, 0.0], [0.0, 2.0]], [1, 1], [1, 1])

        assert cfg.dimension == 2
        assert cfg.count == 2
        assert cfg.wavelength == pytest.approx(np.pi)

    def test_rejects_wrong_magnitude(self):
        """Test that a column whose norm differs from k is rejected."""
        with pytest.raises(ValidationError, match="wavevector 1 has magnitude"):
            WaveConfig(2.0, [[2.0, 1.0], [0.0, 1.0]], [1, 1], [1, 1])

    def test_rejects_unsupported_dimension(self):
        """Test that only 2-D and 3-D configurations are allowed."""
        with pytest.raises(DimensionError):
            WaveConfig(1.0, [[1.0]], [1], [1])

    def test_rejects_amplitude_count_mismatch(self):
        """Test that one (alpha, beta) pair per wavevector is required."""
        with pytest.raises(DimensionError, match="amplitude pairs"):
            WaveConfig(1.0, [[1.0, 0.0], [0.0, 1.0]], [1], [1, 1])

    def test_rejects_silent_wave(self):
        """Test that a wave with both amplitudes zero is rejected."""
        with pytest.raises(ValidationError, match="both amplitudes"):
            WaveConfig(1.0, [[1.0, 0.0], [0.0, 1.0]], [1, 0], [1, 0])

    def test_rejects_nonpositive_wavenumber(self):
        """Test that k must be positive."""
        with pytest.raises(ValidationError):
            WaveConfig(0.0, [[0.0], [0.0]], [1], [1])

    def test_from_directions_normalizes(self):
        """Test that directions of any length are scaled to magnitude k."""
        cfg = WaveConfig.from_directions([[3.0, 0.0], [4.0, 0.5]], 10.0)

        np.testing.assert_allclose(np.linalg.norm(cfg.wavevectors, axis=0), [10.0, 10.0])
        np.testing.assert_allclose(cfg.alphas, [1, 1])

    def test_arrays_are_read_only(self):
        """Test that a configuration cannot be mutated through its arrays."""
        cfg = pair_config()

        with pytest.raises(ValueError):
            cfg.alphas[0] = 2.0

    def test_drive_vector(self):
        """Test that u stacks alphas then betas."""
        cfg = WaveConfig(1.0, [[1.0, 0.0], [0.0, 1.0]], [1, -1], [2, 3])

        np.testing.assert_array_equal(cfg.drive_vector, [1, -1, 2, 3])

    def test_equality_and_hash(self):
        """Test value equality of configurations."""
        assert pair_config() == pair_config()
        assert hash(pair_config()) == hash(pair_config())
        assert pair_config() != pair_config(2 * WAVENUMBER)

    def test_rank_and_active_basis(self):
        """Test that a single pair is rank deficient with basis along x."""
        cfg = pair_config()

        assert cfg.rank() == 1
        basis = cfg.active_basis()
        assert basis.shape == (2, 1)
        np.testing.assert_allclose(np.abs(basis[:, 0]), [1.0, 0.0], atol=1e-12)

    def test_full_rank_has_no_active_basis(self, rng):
        """Test that full-rank configurations need no restriction."""
        assert random_config(rng, 2, 3).active_basis() is None


class TestFieldEvaluation:
    """Test cases for pressure evaluation."""

    def test_standing_wave_values(self):
        """Test p = 2 cos(kx) for one counter-propagating pair."""
        cfg = pair_config()

        assert evaluate_field(cfg, [0.0, 0.0]) == pytest.approx(2.0)
        assert abs(evaluate_field(cfg, [WAVELENGTH / 4, 0.3])) < 1e-12
        assert evaluate_field(cfg, [WAVELENGTH / 2, -1.0]) == pytest.approx(-2.0)

    def test_standing_wave_gradient(self):
        """Test grad p = (-2k sin(kx), 0)."""
        cfg = pair_config()
        x = WAVELENGTH / 8

        sample = evaluate_field_sample(cfg, [x, 0.0])

        np.testing.assert_allclose(sample.grad_p, [-2 * WAVENUMBER * np.sin(np.pi / 4), 0.0], atol=1e-9)

    def test_rejects_wrong_point_dimension(self):
        """Test that points must match the configuration dimension."""
        with pytest.raises(DimensionError):
            evaluate_field(pair_config(), [0.0, 0.0, 0.0])

    def test_rejects_non_finite_points(self):
        """Test that NaN coordinates are rejected."""
        with pytest.raises(ValidationError):
            evaluate_field(pair_config(), [np.nan, 0.0])

    @pytest.mark.parametrize("dimension", [2, 3])
    def test_helmholtz_residual(self, rng, dimension):
        """Test that trace(Hess p) + k^2 p vanishes."""
        for _ in range(5):
            cfg = random_config(rng, dimension, 5)
            points = rng.uniform(-5 * WAVELENGTH, 5 * WAVELENGTH, size=(200, dimension))

            jet = field_jet(cfg, points, order=2)
            residual = np.trace(jet.hess, axis1=1, axis2=2) + WAVENUMBER**2 * jet.p

            assert np.max(np.abs(residual)) <= 1e-10 * WAVENUMBER**2 * cfg.amplitude_norm

    @pytest.mark.parametrize("dimension", [2, 3])
    def test_lift_identity(self, rng, dimension):
        """Test p(x) = p_N(K^T x)."""
        for _ in range(10):
            cfg = random_config(rng, dimension, int(rng.integers(1, 7)))
            points = rng.uniform(-10 * WAVELENGTH, 10 * WAVELENGTH, size=(1000, dimension))

            direct = field_jet(cfg, points, order=0).p
            lifted = periodic_jet(cfg, project(points, cfg.wavevectors), order=0).p

            assert np.max(np.abs(direct - lifted)) <= 1e-12 * cfg.amplitude_norm

    def test_periodic_field_has_period_two_pi(self, rng):
        """Test that p_N is 2 pi periodic along every axis."""
        cfg = random_config(rng, 2, 4)
        y = rng.uniform(-3, 3, size=4)

        assert evaluate_periodic_field(cfg, y + 2 * np.pi * np.array([1, 0, -2, 1])) == pytest.approx(
            evaluate_periodic_field(cfg, y), abs=1e-12 * cfg.amplitude_norm
        )

    def test_linear_in_amplitudes(self, rng):
        """Test that the field of summed drive vectors is the sum of the fields."""
        cfg = random_config(rng, 2, 5)
        other = cfg.with_amplitudes(rng.normal(size=5) + 1j * rng.normal(size=5), rng.normal(size=5) - 1j)
        total = cfg.with_amplitudes(cfg.alphas + other.alphas, cfg.betas + other.betas)
        scale = cfg.amplitude_norm + other.amplitude_norm
        points = rng.uniform(-5 * WAVELENGTH, 5 * WAVELENGTH, size=(500, 2))

        combined = field_jet(total, points)
        first = field_jet(cfg, points)
        second = field_jet(other, points)

        np.testing.assert_allclose(combined.p, first.p + second.p, rtol=0, atol=1e-12 * scale)
        np.testing.assert_allclose(combined.hess, first.hess + second.hess, rtol=0, atol=1e-12 * WAVENUMBER**2 * scale)

    @pytest.mark.parametrize("dimension", [2, 3])
    def test_conjugate_flip_mirrors_field(self, rng, dimension):
        """Test that swapping alpha and beta turns p(x) into p(-x)."""
        cfg = random_config(rng, dimension, 4)
        flipped = cfg.with_amplitudes(cfg.betas, cfg.alphas)
        points = rng.uniform(-5 * WAVELENGTH, 5 * WAVELENGTH, size=(500, dimension))

        np.testing.assert_allclose(
            field_jet(flipped, points, order=0).p,
            field_jet(cfg, -points, order=0).p,
            rtol=0,
            atol=1e-12 * cfg.amplitude_norm,
        )

    def test_gradient_matches_finite_differences(self, rng):
        """Test analytic grad p against central differences."""
        cfg = random_config(rng, 2, 4)
        h = 1e-6 * WAVELENGTH
        for x in rng.uniform(-WAVELENGTH, WAVELENGTH, size=(20, 2)):
            _, grad, _ = evaluate_field_derivatives(cfg, x)
            numeric = [
                (evaluate_field(cfg, x + h * e) - evaluate_field(cfg, x - h * e)) / (2 * h) for e in np.eye(2)
            ]
            np.testing.assert_allclose(grad, numeric, atol=1e-6 * WAVENUMBER * cfg.amplitude_norm)

    def test_third_derivatives_match_hessian_differences(self, rng):
        """Test third derivatives against central differences of the Hessian."""
        cfg = random_config(rng, 3, 4)
        h = 1e-6 * WAVELENGTH
        x = rng.uniform(-WAVELENGTH, WAVELENGTH, size=3)

        third = field_jet(cfg, x, order=3).third[0]
        for m, e in enumerate(np.eye(3)):
            numeric = (field_jet(cfg, x + h * e).hess[0] - field_jet(cfg, x - h * e).hess[0]) / (2 * h)
            np.testing.assert_allclose(third[:, :, m], numeric, atol=1e-5 * WAVENUMBER**3 * cfg.amplitude_norm)

    def test_third_derivatives_are_symmetric(self, rng):
        """Test that the third-derivative tensor is invariant under index permutations."""
        cfg = random_config(rng, 3, 3)

        third = field_jet(cfg, rng.normal(size=(4, 3)) * WAVELENGTH, order=3).third

        np.testing.assert_array_equal(third, np.transpose(third, (0, 2, 1, 3)))
        np.testing.assert_array_equal(third, np.transpose(third, (0, 3, 2, 1)))

    def test_lower_orders_leave_derivatives_empty(self):
        """Test that order 0 computes only p."""
        jet = field_jet(pair_config(), [[0.0, 0.0]], order=0)

        assert jet.grad is None
        assert jet.hess is None

    def test_batch_split_does_not_change_values(self, rng):
        """Test that each point's value is independent of the batch it is evaluated in."""
        cfg = random_config(rng, 2, 6)
        points = rng.uniform(-WAVELENGTH, WAVELENGTH, size=(64, 2))

        whole = field_jet(cfg, points, order=2)
        halves = [field_jet(cfg, points[:20], order=2), field_jet(cfg, points[20:], order=2)]

        scale = cfg.amplitude_norm
        np.testing.assert_allclose(whole.p, np.concatenate([h.p for h in halves]), rtol=0, atol=1e-12 * scale)
        np.testing.assert_allclose(
            whole.hess, np.concatenate([h.hess for h in halves]), rtol=0, atol=1e-12 * WAVENUMBER**2 * scale
        )
