"""Tests for core/potential.py - Radiation potential, its derivatives and grid sweeps."""

import os
import time

import numpy as np
import pytest

from tests.helpers import PRINTED_A, PRINTED_B, WAVELENGTH, WAVENUMBER, pair_config, random_config
from wave_assembly.core import (
    ArpCoefficients,
    ArpMode,
    DimensionError,
    GridSpec,
    MaterialParams,
    ValidationError,
    arp_coefficients,
    arp_jet,
    create_default_preset_registry,
    evaluate_arp,
    evaluate_arp_derivatives,
    evaluate_arp_grid,
    evaluate_field_sample,
    evaluate_periodic_arp,
)
from wave_assembly.core.potential import lift_points, min_eigenvalues, periodic_arp_jet


class TestMaterialParams:
    """Test cases for the water/carbon material constants."""

    def test_contrast_factors(self, material):
        """Test f1 and f2 for carbon particles in water."""
        assert material.f2 == pytest.approx(2 * 1100 / 5200)
        assert material.f2 / 2 == pytest.approx(0.211538, rel=1e-5)
        assert material.f1 == pytest.approx(0.9618573, rel=1e-6)

    def test_printed_b_matches_half_f2(self, material):
        """Test that the printed B scale equals f2 / 2 to four significant figures."""
        assert round(material.f2 / 2, 4) == PRINTED_B

    def test_si_coefficients(self, coefficients):
        """Test a = f1 kappa0 / 4 and B = 3 f2 / (8 rho0 omega^2) I in SI units."""
        assert coefficients.a == pytest.approx(1.06873e-10, rel=1e-4)
        np.testing.assert_allclose(coefficients.B, 4.01878e-18 * np.eye(2), rtol=1e-4)
        assert coefficients.mode is ArpMode.ACOUSTIC

    def test_printed_a_differs_from_si_a(self, coefficients):
        """Test that the printed a is not the SI value (the two normalizations differ by ~5e16)."""
        assert PRINTED_A / coefficients.a == pytest.approx(5.373e16, rel=1e-3)

    def test_wavenumber(self, material):
        """Test k = omega / c0."""
        assert material.wavenumber == pytest.approx(WAVENUMBER)
        assert 2 * np.pi / material.wavenumber == pytest.approx(1.5e-3)

    def test_rejects_nonpositive_values(self):
        """Test that every material constant must be positive."""
        with pytest.raises(ValidationError, match="rho0.*c_p"):
            MaterialParams(rho0=0.0, c0=1500.0, rho_p=2100.0, c_p=-1.0, omega=1.0)

    def test_optical_mode_has_no_gradient_term(self, material):
        """Test that optical coefficients carry B = 0."""
        co = arp_coefficients(material, 3, ArpMode.OPTICAL)

        assert not co.has_gradient_term
        assert co.B.shape == (3, 3)


class TestArpCoefficients:
    """Test cases for ArpCoefficients validation."""

    def test_direct_scalar_b(self):
        """Test that a scalar b means b * I_d."""
        co = ArpCoefficients.direct(2.0, 0.5, 3)

        np.testing.assert_array_equal(co.B, 0.5 * np.eye(3))

    def test_rejects_asymmetric_b(self):
        """Test that B must be symmetric."""
        with pytest.raises(ValidationError, match="symmetric"):
            ArpCoefficients(1.0, [[1.0, 0.5], [0.0, 1.0]])

    def test_accepts_negative_b(self):
        """Test that B follows the sign of f2 (light particles)."""
        co = ArpCoefficients.direct(1.0, -0.3, 2)

        assert co.has_gradient_term

    def test_rejects_optical_with_nonzero_b(self):
        """Test that the optical mode forbids a gradient term."""
        with pytest.raises(ValidationError, match="optical"):
            ArpCoefficients.direct(1.0, 0.1, 2, ArpMode.OPTICAL)

    def test_rejects_non_square_b(self):
        """Test that B must be square."""
        with pytest.raises(DimensionError):
            ArpCoefficients(1.0, np.zeros((2, 3)))

    def test_lifted_coefficients(self):
        """Test B_N = K^T B K."""
        K = np.array([[1.0, 0.0, 0.6], [0.0, 1.0, 0.8]])
        co = ArpCoefficients.direct(3.0, 2.0, 2)

        lifted = co.lifted(K)

        assert lifted.a == 3.0
        np.testing.assert_allclose(lifted.B, 2.0 * K.T @ K)

    def test_scale(self):
        """Test psi_scale = (|a| + max|eig B| k^2) (sum |alpha| + |beta|)^2."""
        co = ArpCoefficients.direct(-2.0, 0.5, 2)
        cfg = pair_config(3.0)

        assert co.scale(cfg) == pytest.approx((2.0 + 0.5 * 9.0) * 4.0)

    def test_equality(self):
        """Test value equality and hashing."""
        assert ArpCoefficients.direct(1.0, 2.0, 2) == ArpCoefficients.direct(1.0, 2.0, 2)
        assert hash(ArpCoefficients.direct(1.0, 2.0, 2)) == hash(ArpCoefficients.direct(1.0, 2.0, 2))
        assert ArpCoefficients.direct(1.0, 2.0, 2) != ArpCoefficients.direct(1.0, 2.5, 2)


class TestEvaluateArp:
    """Test cases for point evaluation of psi and its derivatives."""

    def test_matches_definition(self, rng, coefficients):
        """Test psi = a |p|^2 - Re(conj(grad p) . B grad p) against the field."""
        cfg = random_config(rng, 2, 4)
        x = rng.uniform(-WAVELENGTH, WAVELENGTH, size=2)

        sample = evaluate_field_sample(cfg, x)
        expected = coefficients.a * abs(sample.p) ** 2 - np.real(
            np.conj(sample.grad_p) @ coefficients.B @ sample.grad_p
        )

        assert evaluate_arp(cfg, coefficients, x) == pytest.approx(expected, abs=1e-12 * coefficients.scale(cfg))

    @pytest.mark.parametrize("phase", [0.3, np.pi / 2, 2.5])
    def test_global_phase_invariance(self, rng, coefficients, phase):
        """Test that multiplying every amplitude by exp(i phi) leaves psi and its derivatives unchanged."""
        cfg = random_config(rng, 2, 4)
        rotated = cfg.with_amplitudes(cfg.alphas * np.exp(1j * phase), cfg.betas * np.exp(1j * phase))
        points = rng.uniform(-3 * WAVELENGTH, 3 * WAVELENGTH, size=(300, 2))
        scale = coefficients.scale(cfg)

        original = arp_jet(cfg, coefficients, points, order=2)
        shifted = arp_jet(rotated, coefficients, points, order=2)

        np.testing.assert_allclose(shifted.psi, original.psi, rtol=0, atol=1e-12 * scale)
        np.testing.assert_allclose(shifted.grad, original.grad, rtol=0, atol=1e-12 * WAVENUMBER * scale)
        np.testing.assert_allclose(shifted.hess, original.hess, rtol=0, atol=1e-12 * WAVENUMBER**2 * scale)

    def test_standing_wave_closed_form(self, printed_coefficients):
        """Test psi = 4 (a + b k^2) cos^2(kx) - 4 b k^2 for a single pair."""
        cfg = pair_config()
        a, b, k = PRINTED_A, PRINTED_B, WAVENUMBER
        for x in np.linspace(-WAVELENGTH, WAVELENGTH, 17):
            expected = 4 * (a + b * k**2) * np.cos(k * x) ** 2 - 4 * b * k**2
            assert evaluate_arp(cfg, printed_coefficients, [x, 0.7 * WAVELENGTH]) == pytest.approx(
                expected, abs=1e-9 * printed_coefficients.scale(cfg)
            )

    def test_optical_mode(self, rng):
        """Test psi = a |p|^2 when B = 0."""
        cfg = random_config(rng, 3, 3)
        co = ArpCoefficients.direct(2.5, 0.0, 3, ArpMode.OPTICAL)
        x = rng.normal(size=3) * WAVELENGTH

        sample = evaluate_field_sample(cfg, x)

        assert evaluate_arp(cfg, co, x) == pytest.approx(2.5 * abs(sample.p) ** 2, rel=1e-12)

    @pytest.mark.parametrize("dimension", [2, 3])
    def test_lift_identity(self, rng, material, dimension):
        """Test psi(x) = psi_N(K^T x) with B_N = K^T B K."""
        co = arp_coefficients(material, dimension)
        for _ in range(10):
            cfg = random_config(rng, dimension, int(rng.integers(1, 7)))
            points = rng.uniform(-10 * WAVELENGTH, 10 * WAVELENGTH, size=(1000, dimension))

            direct = arp_jet(cfg, co, points, order=0).psi
            lifted = periodic_arp_jet(cfg, co, lift_points(cfg, points)).psi

            assert np.max(np.abs(direct - lifted)) <= 1e-12 * co.scale(cfg)

    def test_periodic_arp_single_point(self, rng, coefficients):
        """Test the single-point lifted evaluator."""
        cfg = random_config(rng, 2, 5)
        x = rng.normal(size=2) * WAVELENGTH

        assert evaluate_periodic_arp(cfg, coefficients, lift_points(cfg, x)[0]) == pytest.approx(
            evaluate_arp(cfg, coefficients, x), abs=1e-12 * coefficients.scale(cfg)
        )

    @pytest.mark.parametrize("dimension", [2, 3])
    def test_gradient_matches_finite_differences(self, rng, material, dimension):
        """Test grad psi against central differences with step 1e-6 wavelengths."""
        co = arp_coefficients(material, dimension)
        cfg = random_config(rng, dimension, 5)
        h = 1e-6 * WAVELENGTH
        points = rng.uniform(-2 * WAVELENGTH, 2 * WAVELENGTH, size=(500, dimension))

        jet = arp_jet(cfg, co, points, order=1)
        numeric = np.stack(
            [
                (arp_jet(cfg, co, points + h * e, order=0).psi - arp_jet(cfg, co, points - h * e, order=0).psi)
                / (2 * h)
                for e in np.eye(dimension)
            ],
            axis=1,
        )

        reference = np.max(np.abs(jet.grad))
        assert np.max(np.abs(jet.grad - numeric)) <= 1e-6 * reference

    @pytest.mark.parametrize("dimension", [2, 3])
    def test_hessian_matches_gradient_differences(self, rng, material, dimension):
        """Test Hess psi against central differences of grad psi."""
        co = arp_coefficients(material, dimension)
        cfg = random_config(rng, dimension, 5)
        h = 1e-6 * WAVELENGTH
        points = rng.uniform(-2 * WAVELENGTH, 2 * WAVELENGTH, size=(500, dimension))

        hess = arp_jet(cfg, co, points, order=2).hess
        for m, e in enumerate(np.eye(dimension)):
            numeric = (
                arp_jet(cfg, co, points + h * e, order=1).grad - arp_jet(cfg, co, points - h * e, order=1).grad
            ) / (2 * h)
            reference = np.max(np.abs(hess))
            assert np.max(np.abs(hess[:, :, m] - numeric)) <= 1e-5 * reference

    def test_hessian_is_symmetric(self, rng, coefficients):
        """Test that Hess psi is symmetric."""
        _, _, hess = evaluate_arp_derivatives(random_config(rng, 2, 4), coefficients, [1e-4, -2e-4])

        np.testing.assert_array_equal(hess, hess.T)

    def test_dimension_mismatch(self, rng, coefficients):
        """Test that a 2-D B cannot be used with a 3-D configuration."""
        with pytest.raises(DimensionError):
            evaluate_arp(random_config(rng, 3, 3), coefficients, [0.0, 0.0, 0.0])


class TestMinEigenvalues:
    """Test cases for min_eigenvalues."""

    def test_full_space(self):
        """Test the smallest eigenvalue of each matrix."""
        hess = np.array([[[2.0, 0.0], [0.0, -1.0]], [[3.0, 1.0], [1.0, 3.0]]])

        np.testing.assert_allclose(min_eigenvalues(hess), [-1.0, 2.0])

    def test_restricted_to_basis(self):
        """Test that a basis restricts the eigenvalue to its span."""
        hess = np.array([[[2.0, 0.0], [0.0, 0.0]]])

        np.testing.assert_allclose(min_eigenvalues(hess, np.array([[1.0], [0.0]])), [2.0])


class TestGridSpec:
    """Test cases for GridSpec."""

    def test_centered(self):
        """Test a symmetric box with equal resolution per axis."""
        spec = GridSpec.centered(1.0, 5)

        assert spec.lower == (-1.0, -1.0)
        assert spec.upper == (1.0, 1.0)
        assert spec.shape == (5, 5)
        np.testing.assert_allclose(spec.spacing, [0.5, 0.5])

    def test_points_are_row_major_with_x_fastest(self):
        """Test the lattice ordering used for planes."""
        spec = GridSpec((0.0, 10.0), (2.0, 11.0), (3, 2))

        points = spec.points()

        assert spec.shape == (2, 3)
        np.testing.assert_allclose(points[:3], [[0.0, 10.0], [1.0, 10.0], [2.0, 10.0]])
        np.testing.assert_allclose(points[3], [0.0, 11.0])
        np.testing.assert_allclose(spec.point((1, 2)), [2.0, 11.0])

    def test_rejects_degenerate_box(self):
        """Test that lower must be below upper on every axis."""
        with pytest.raises(ValidationError, match="axis 1"):
            GridSpec((0.0, 1.0), (1.0, 1.0), (4, 4))

    def test_rejects_too_few_points(self):
        """Test that every axis needs two points."""
        with pytest.raises(ValidationError):
            GridSpec((0.0, 0.0), (1.0, 1.0), (1, 4))

    def test_rejects_mixed_lengths(self):
        """Test that corners and resolution must agree on dimension."""
        with pytest.raises(DimensionError):
            GridSpec((0.0, 0.0, 0.0), (1.0, 1.0), (4, 4))


class TestEvaluateArpGrid:
    """Test cases for evaluate_arp_grid."""

    def test_planes_match_point_evaluation(self, rng, coefficients):
        """Test that plane cell [j, i] holds psi at (x_i, y_j)."""
        cfg = random_config(rng, 2, 3)
        spec = GridSpec((-WAVELENGTH, -0.5 * WAVELENGTH), (WAVELENGTH, 0.5 * WAVELENGTH), (9, 5))

        grid = evaluate_arp_grid(cfg, coefficients, spec)

        assert grid.psi.shape == (5, 9)
        x, y = spec.axes()
        psi, grad, hess = evaluate_arp_derivatives(cfg, coefficients, [x[7], y[3]])
        assert grid.psi[3, 7] == pytest.approx(psi, rel=1e-12)
        assert grid.grad_norm[3, 7] == pytest.approx(np.linalg.norm(grad), rel=1e-12)
        assert grid.min_eig[3, 7] == pytest.approx(np.linalg.eigvalsh(hess)[0], rel=1e-9)

    def test_threads_and_chunks_do_not_change_values(self, rng, coefficients):
        """Test that worker count and chunk size leave every value unchanged."""
        cfg = random_config(rng, 2, 5)
        spec = GridSpec.centered(2 * WAVELENGTH, 41)

        single = evaluate_arp_grid(cfg, coefficients, spec, threads=1)
        threaded = evaluate_arp_grid(cfg, coefficients, spec, threads=4, chunk_size=97)

        scale = coefficients.scale(cfg)
        np.testing.assert_allclose(threaded.psi, single.psi, rtol=0, atol=1e-12 * scale)
        np.testing.assert_allclose(threaded.grad_norm, single.grad_norm, rtol=0, atol=1e-12 * WAVENUMBER * scale)
        np.testing.assert_allclose(threaded.min_eig, single.min_eig, rtol=0, atol=1e-12 * WAVENUMBER**2 * scale)

    def test_three_dimensional_grid(self, rng, material):
        """Test a small 3-D sweep."""
        cfg = random_config(rng, 3, 4)
        spec = GridSpec.centered(WAVELENGTH, 6, dimension=3)

        grid = evaluate_arp_grid(cfg, arp_coefficients(material, 3), spec)

        assert grid.psi.shape == (6, 6, 6)
        assert grid.dimension == 3

    def test_rank_deficient_min_eig_uses_active_subspace(self, printed_coefficients):
        """Test that lambda_min ignores the flat direction of a single pair."""
        spec = GridSpec.centered(WAVELENGTH, 9)

        grid = evaluate_arp_grid(pair_config(), printed_coefficients, spec)

        # x = lambda / 4 sits at column 5 of 9 on [-lambda, lambda]
        assert grid.min_eig[4, 5] > 0

    def test_rejects_grid_dimension_mismatch(self, coefficients):
        """Test that grid and configuration dimensions must agree."""
        with pytest.raises(DimensionError):
            evaluate_arp_grid(pair_config(), coefficients, GridSpec.centered(1.0, 3, dimension=3))

    def test_rejects_invalid_thread_count(self, coefficients):
        """Test that at least one thread is required."""
        with pytest.raises(ValidationError):
            evaluate_arp_grid(pair_config(), coefficients, GridSpec.centered(1.0, 3), threads=0)


class TestGridSweepPerformance:
    """Timing of the full-resolution octagon sweep."""

    @pytest.fixture
    def octagon(self):
        return create_default_preset_registry().build("octagon", WAVENUMBER), GridSpec.centered(7 * WAVELENGTH, 1024)

    @staticmethod
    def timed_sweep(cfg, coefficients, spec, threads):
        start = time.perf_counter()
        grid = evaluate_arp_grid(cfg, coefficients, spec, threads=threads)
        return grid, time.perf_counter() - start

    @pytest.mark.slow
    def test_single_thread_sweep_time(self, coefficients, octagon):
        """Test that psi, |grad psi| and lambda_min on 1024^2 take at most 10 s on one thread."""
        cfg, spec = octagon

        grid, elapsed = self.timed_sweep(cfg, coefficients, spec, threads=1)

        assert grid.psi.shape == (1024, 1024)
        assert elapsed <= 10.0

    @pytest.mark.slow
    @pytest.mark.skipif((os.cpu_count() or 1) < 4, reason="needs at least four cores")
    def test_four_thread_speedup(self, coefficients, octagon):
        """Test a 2.5x speedup on four threads with values unchanged."""
        cfg, spec = octagon

        single, single_time = self.timed_sweep(cfg, coefficients, spec, threads=1)
        threaded, threaded_time = self.timed_sweep(cfg, coefficients, spec, threads=4)

        assert single_time / threaded_time >= 2.5
        scale = coefficients.scale(cfg)
        np.testing.assert_allclose(threaded.psi, single.psi, rtol=0, atol=1e-12 * scale)
        np.testing.assert_allclose(threaded.min_eig, single.min_eig, rtol=0, atol=1e-12 * WAVENUMBER**2 * scale)
