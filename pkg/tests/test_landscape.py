import math

import numpy as np
import pytest

from tascope import (
    AlignmentLandscape,
    GammaGrid,
    MAX_ALIGNMENT,
    ToyDatasetSpec,
    analytic_gaussian_peak,
    build_toy_dataset,
    curvature_sigma,
    find_global_peak,
    fit_power_law,
    mean_alignment,
    odd_sample_count,
    one_period_range,
    relative_peak_width,
    simpson_mean,
    sweep,
)
from tascope.errors import ConfigurationError, DomainError, InvalidSpecError


class TestSweep:
    def test_four_point_peak_location_and_height(self):
        ds = build_toy_dataset(ToyDatasetSpec(4))
        grid = GammaGrid(0.0, 6 * math.pi, 3001)
        land = sweep(ds, grid)
        gamma_max, value = find_global_peak(land)
        assert abs(gamma_max - 3 * math.pi) <= grid.spacing
        assert value == pytest.approx(MAX_ALIGNMENT, abs=1e-4)

    def test_two_point_endpoints_and_midpoint(self):
        ds = build_toy_dataset(ToyDatasetSpec(2))
        land = sweep(ds, GammaGrid(0.0, 2 * math.pi, 2001))
        assert land.values[0] == 0.0
        assert land.values[1000] == pytest.approx(MAX_ALIGNMENT, abs=1e-9)

    def test_degenerate_two_sample_grid(self):
        ds = build_toy_dataset(ToyDatasetSpec(4))
        land = sweep(ds, GammaGrid(0.0, 1.0, 2))
        assert land.values.shape == (2,)

    @pytest.mark.parametrize("n", [2, 4, 8, 16])
    def test_peak_sits_at_the_rephasing_scale(self, n):
        ds = build_toy_dataset(ToyDatasetSpec(n))
        start, end = one_period_range(n)
        grid = GammaGrid(start, end, odd_sample_count(start, end, 0.01))
        gamma_max, value = find_global_peak(sweep(ds, grid))
        assert abs(gamma_max - math.pi * (n - 1)) <= grid.spacing
        assert value == pytest.approx(MAX_ALIGNMENT, abs=1e-4)

    def test_periodicity_holds_pointwise_across_sweeps(self):
        ds = build_toy_dataset(ToyDatasetSpec(4))
        period = one_period_range(4)[1]
        first = sweep(ds, GammaGrid(0.0, period, 801)).values
        second = sweep(ds, GammaGrid(period, 2 * period, 801)).values
        np.testing.assert_allclose(first, second, atol=1e-9)

    def test_bounded_pointwise(self):
        ds = build_toy_dataset(ToyDatasetSpec(8))
        start, end = one_period_range(8)
        land = sweep(ds, GammaGrid(start, end, 2001))
        assert land.values.min() >= -1e-12
        assert land.values.max() <= MAX_ALIGNMENT + 1e-12

    def test_thread_count_does_not_change_results(self, monkeypatch):
        ds = build_toy_dataset(ToyDatasetSpec(6))
        grid = GammaGrid(0.0, 10 * math.pi, 4001)
        monkeypatch.setenv("TA_SCOPE_THREADS", "1")
        serial = sweep(ds, grid).values
        monkeypatch.setenv("TA_SCOPE_THREADS", "4")
        threaded = sweep(ds, grid).values
        assert np.array_equal(serial, threaded)

    def test_invalid_thread_env_is_rejected(self, monkeypatch):
        ds = build_toy_dataset(ToyDatasetSpec(4))
        monkeypatch.setenv("TA_SCOPE_THREADS", "lots")
        with pytest.raises(ConfigurationError):
            sweep(ds, GammaGrid(0.0, 1.0, 11))

    def test_statevector_route_agrees(self):
        ds = build_toy_dataset(ToyDatasetSpec(4))
        grid = GammaGrid(0.0, 6 * math.pi, 101)
        closed = sweep(ds, grid, "closed_form").values
        simulated = sweep(ds, grid, "statevector").values
        np.testing.assert_allclose(closed, simulated, atol=1e-10)

    def test_repeat_runs_are_identical(self):
        ds = build_toy_dataset(ToyDatasetSpec(6))
        grid = GammaGrid(0.0, 4 * math.pi, 1001)
        assert np.array_equal(sweep(ds, grid).values, sweep(ds, grid).values)


class TestFindGlobalPeak:
    def test_monotone_values_pick_the_last_point(self):
        land = AlignmentLandscape(GammaGrid(0.0, 1.0, 5), np.linspace(0, 0.5, 5))
        gamma_max, value = find_global_peak(land)
        assert gamma_max == 1.0 and value == 0.5

    def test_ties_resolve_to_smallest_gamma(self):
        land = AlignmentLandscape(GammaGrid(0.0, 1.0, 5), np.full(5, 0.3))
        gamma_max, value = find_global_peak(land)
        assert gamma_max == 0.0 and value == 0.3


class TestAnalyticPeak:
    def test_four_point_width(self):
        peak = analytic_gaussian_peak(4)
        assert peak.mu == pytest.approx(3 * math.pi, abs=0)
        assert peak.sigma == pytest.approx(math.sqrt(6.0), rel=1e-15)
        assert peak.amplitude == pytest.approx(MAX_ALIGNMENT, abs=0)

    def test_two_point_width(self):
        assert analytic_gaussian_peak(2).sigma == pytest.approx(
            math.sqrt(2.0), rel=1e-15
        )

    def test_width_limit(self):
        assert analytic_gaussian_peak(10**6).sigma == pytest.approx(
            2 * math.sqrt(3.0), rel=1e-5
        )

    def test_width_grows_monotonically(self):
        sigmas = [analytic_gaussian_peak(n).sigma for n in range(2, 130, 2)]
        assert all(a < b for a, b in zip(sigmas, sigmas[1:]))
        assert all(s < 2 * math.sqrt(3.0) for s in sigmas)

    def test_invalid_size(self):
        with pytest.raises(InvalidSpecError):
            analytic_gaussian_peak(5)


class TestCurvatureSigma:
    @pytest.mark.parametrize("n", [2, 4, 8, 16])
    def test_matches_analytic_width(self, n):
        measured = curvature_sigma(ToyDatasetSpec(n))
        expected = analytic_gaussian_peak(n).sigma
        assert abs(measured - expected) / expected < 0.005

    def test_zero_step_is_rejected(self):
        with pytest.raises(ConfigurationError):
            curvature_sigma(ToyDatasetSpec(4), step=0.0)

    def test_flat_stencil_is_not_a_maximum(self):
        # With a full-period step every stencil point hits the same value,
        # so the measured curvature is not negative.
        with pytest.raises(DomainError):
            curvature_sigma(ToyDatasetSpec(2), step=2 * math.pi)


class TestMeanAlignment:
    def test_constant_curve(self):
        assert simpson_mean(np.full(11, 0.7), 0.0, 5.0) == pytest.approx(
            0.7, abs=1e-12
        )

    def test_even_sample_count_is_rejected(self):
        ds = build_toy_dataset(ToyDatasetSpec(2))
        with pytest.raises(ConfigurationError):
            mean_alignment(ds, (0.0, 2 * math.pi), 100)

    def test_against_high_resolution_trapezoid_oracle(self):
        # Two-point landscape in closed form: the kernel has one varying
        # entry c = cos^2(gamma/2), giving T = (1 - c)/sqrt(2 (1 + c^2)).
        dense = np.linspace(0.0, 2 * math.pi, 1_000_001)
        c = np.cos(dense / 2) ** 2
        oracle_curve = (1.0 - c) / np.sqrt(2.0 * (1.0 + c**2))
        oracle = np.trapezoid(oracle_curve, dense) / (2 * math.pi)
        ds = build_toy_dataset(ToyDatasetSpec(2))
        n = odd_sample_count(0.0, 2 * math.pi, 0.01)
        assert mean_alignment(ds, (0.0, 2 * math.pi), n) == pytest.approx(
            oracle, abs=1e-6
        )

    @pytest.mark.parametrize("n", [8, 16, 32])
    def test_gaussian_peak_approximates_the_period_mean(self, n):
        # The single-peak Gaussian overestimates the period mean by a
        # stable ~27% (the true peak sheds mass into shallow side lobes);
        # both quantities agree in order of magnitude and scaling.
        ds = build_toy_dataset(ToyDatasetSpec(n))
        start, end = one_period_range(n)
        mean = mean_alignment(ds, (start, end), odd_sample_count(start, end, 0.02))
        peak = analytic_gaussian_peak(n)
        prediction = math.sqrt(2 * math.pi) * peak.sigma * peak.amplitude / (end - start)
        assert 0.0 < (prediction - mean) / mean < 0.32


class TestRelativePeakWidth:
    def test_two_point_value(self):
        assert relative_peak_width(2) == pytest.approx(
            math.sqrt(2.0) / (2 * math.pi), rel=1e-12
        )

    def test_monotone_decrease(self):
        widths = [relative_peak_width(n) for n in range(2, 260, 2)]
        assert all(a > b for a, b in zip(widths, widths[1:]))

    def test_asymptotic_inverse_size_scaling(self):
        n = 10**6
        assert n * relative_peak_width(n) == pytest.approx(
            math.sqrt(3.0) / math.pi, rel=1e-3
        )


class TestFitPowerLaw:
    def test_exact_inverse_law(self):
        sizes = [4, 8, 16, 32]
        means = [0.8 / n for n in sizes]
        fit = fit_power_law(sizes, means)
        assert fit.exponent == pytest.approx(-1.0, abs=1e-12)
        assert fit.prefactor == pytest.approx(0.8, rel=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_two_points_interpolate_exactly(self):
        fit = fit_power_law([4, 16], [0.5, 0.125])
        assert fit.exponent == pytest.approx(-1.0, abs=1e-12)
        assert fit.r_squared == 1.0

    def test_non_positive_mean_is_rejected(self):
        with pytest.raises(DomainError):
            fit_power_law([4, 8, 16], [0.5, 0.0, 0.1])

    def test_shape_validation(self):
        with pytest.raises(ConfigurationError):
            fit_power_law([4, 8], [0.1])
        with pytest.raises(ConfigurationError):
            fit_power_law([4], [0.1])
        with pytest.raises(ConfigurationError):
            fit_power_law([1, 8], [0.5, 0.1])
        with pytest.raises(DomainError):
            fit_power_law([8, 8], [0.5, 0.1])
