import math

import numpy as np
import pytest

from tascope import (
    FeatureMapParams,
    LabeledDataset,
    Statevector2,
    ToyDatasetSpec,
    build_toy_dataset,
    encode_point,
    kernel_entry_closed_form,
    kernel_entry_statevector,
    kernel_matrix,
    statevector_fidelity,
)
from tascope.errors import ConfigurationError, DomainError


class TestEncodePoint:
    def test_zero_feature_returns_initial_state(self):
        state = encode_point(0.0, 1.7)
        probs = np.abs(state.amplitudes) ** 2
        np.testing.assert_allclose(probs, [1.0, 0.0], atol=1e-15)

    def test_half_turn_flips_the_qubit(self):
        # gamma * x = pi sends |0> to |1> up to a global phase
        state = encode_point(0.5, 2 * math.pi)
        probs = np.abs(state.amplitudes) ** 2
        np.testing.assert_allclose(probs, [0.0, 1.0], atol=1e-15)

    def test_quarter_turn_is_an_even_split(self):
        state = encode_point(1.0, math.pi / 2)
        probs = np.abs(state.amplitudes) ** 2
        np.testing.assert_allclose(probs, [0.5, 0.5], atol=1e-15)

    def test_norm_is_preserved(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            x, gamma = rng.uniform(0, 1), rng.uniform(-60, 60)
            state = encode_point(x, gamma)
            assert abs(np.sum(np.abs(state.amplitudes) ** 2) - 1.0) < 1e-12

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            encode_point(float("nan"), 1.0)
        with pytest.raises(DomainError):
            encode_point(0.5, float("inf"))


class TestKernelEntry:
    def test_identical_points_have_unit_fidelity(self):
        assert kernel_entry_closed_form(0.7, 0.7, 2.3) == 1.0
        assert kernel_entry_statevector(0.7, 0.7, 2.3) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_at_half_period(self):
        assert kernel_entry_closed_form(0.0, 1.0, math.pi) == pytest.approx(0.0, abs=1e-12)
        assert kernel_entry_statevector(0.0, 1.0, math.pi) == pytest.approx(0.0, abs=1e-12)

    def test_third_point_at_triple_scale(self):
        assert kernel_entry_closed_form(0.0, 1 / 3, 3 * math.pi) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_statevector_matches_closed_form(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            xi, xj = rng.uniform(0, 1, 2)
            gamma = rng.uniform(-100, 100)
            sv = kernel_entry_statevector(xi, xj, gamma)
            cf = kernel_entry_closed_form(xi, xj, gamma)
            assert abs(sv - cf) < 1e-12, (xi, xj, gamma)

    def test_symmetry_in_arguments(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            xi, xj, gamma = rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(-30, 30)
            assert kernel_entry_closed_form(xi, xj, gamma) == pytest.approx(
                kernel_entry_closed_form(xj, xi, gamma), abs=1e-15
            )

    def test_global_phase_leaves_fidelity_unchanged(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            x1, x2 = rng.uniform(0, 1, 2)
            gamma = rng.uniform(-30, 30)
            phi = rng.uniform(0, 2 * math.pi)
            a = encode_point(x1, gamma)
            b = encode_point(x2, gamma)
            shifted = Statevector2(np.exp(1j * phi) * a.amplitudes)
            assert statevector_fidelity(shifted, b) == pytest.approx(
                statevector_fidelity(a, b), abs=1e-14
            )

    def test_entry_periodicity_in_gamma(self):
        rng = np.random.default_rng(19)
        for _ in range(100):
            xi = rng.uniform(0, 0.45)
            xj = rng.uniform(0.55, 1.0)
            gamma = rng.uniform(-20, 20)
            period = 2 * math.pi / (xi - xj)
            assert kernel_entry_closed_form(xi, xj, gamma) == pytest.approx(
                kernel_entry_closed_form(xi, xj, gamma + period), abs=1e-9
            )


class TestKernelMatrix:
    def test_toy_two_points_at_half_period(self):
        ds = build_toy_dataset(ToyDatasetSpec(2))
        k = kernel_matrix(ds, FeatureMapParams((math.pi,)))
        np.testing.assert_allclose(k.values, np.eye(2), atol=1e-12)

    @pytest.mark.parametrize("method", ["closed_form", "statevector"])
    def test_toy_four_points_checkerboard(self, method):
        # At gamma = 3*pi the same-class pairs rephase while cross-class
        # pairs land orthogonal: entries are 1 for even i-j, 0 for odd.
        ds = build_toy_dataset(ToyDatasetSpec(4))
        k = kernel_matrix(ds, FeatureMapParams((3 * math.pi,)), method)
        expected = np.array(
            [
                [1.0, 0.0, 1.0, 0.0],
                [0.0, 1.0, 0.0, 1.0],
                [1.0, 0.0, 1.0, 0.0],
                [0.0, 1.0, 0.0, 1.0],
            ]
        )
        np.testing.assert_allclose(k.values, expected, atol=1e-12)

    @pytest.mark.parametrize("method", ["closed_form", "statevector"])
    def test_product_rule_for_two_dimensions(self, method):
        ds = LabeledDataset([[0.0, 0.0], [1.0, 1.0]], [1, -1])
        k = kernel_matrix(ds, FeatureMapParams((math.pi, math.pi)), method)
        assert k.values[0, 1] == pytest.approx(0.0, abs=1e-12)

    def test_product_rule_is_product_of_per_dimension_entries(self):
        rng = np.random.default_rng(23)
        pts = rng.uniform(0, 1, (5, 3))
        gammas = tuple(rng.uniform(-10, 10, 3))
        ds = LabeledDataset(pts, [1, -1, 1, -1, 1])
        k = kernel_matrix(ds, FeatureMapParams(gammas))
        i, j = 1, 4
        expected = math.prod(
            kernel_entry_closed_form(pts[i, q], pts[j, q], gammas[q])
            for q in range(3)
        )
        assert k.values[i, j] == pytest.approx(expected, abs=1e-14)

    @pytest.mark.parametrize("method", ["closed_form", "statevector"])
    def test_matrix_invariants(self, method):
        rng = np.random.default_rng(29)
        ds = LabeledDataset(rng.uniform(0, 1, 12), rng.choice([-1, 1], 12))
        k = kernel_matrix(ds, FeatureMapParams((rng.uniform(-40, 40),)), method)
        assert np.array_equal(k.values, k.values.T)
        assert k.values.min() >= 0.0 and k.values.max() <= 1.0 + 1e-12
        if method == "closed_form":
            assert np.all(np.diagonal(k.values) == 1.0)
        else:
            np.testing.assert_allclose(np.diagonal(k.values), 1.0, atol=1e-12)

    def test_methods_agree(self):
        rng = np.random.default_rng(31)
        ds = LabeledDataset(rng.uniform(0, 1, 10), rng.choice([-1, 1], 10))
        params = FeatureMapParams((4.2,))
        a = kernel_matrix(ds, params, "closed_form")
        b = kernel_matrix(ds, params, "statevector")
        np.testing.assert_allclose(a.values, b.values, atol=1e-12)

    def test_dimension_mismatch_is_rejected(self):
        ds = build_toy_dataset(ToyDatasetSpec(4))
        with pytest.raises(ConfigurationError):
            kernel_matrix(ds, FeatureMapParams((1.0, 2.0)))

    def test_unknown_method_is_rejected(self):
        ds = build_toy_dataset(ToyDatasetSpec(4))
        with pytest.raises(ConfigurationError):
            kernel_matrix(ds, FeatureMapParams((1.0,)), "sampled")


def test_statevector_requires_two_amplitudes():
    with pytest.raises(DomainError):
        Statevector2(np.array([1.0, 0.0, 0.0], dtype=complex))
    with pytest.raises(DomainError):
        Statevector2(np.array([1.0, 1.0], dtype=complex))  # not normalized
