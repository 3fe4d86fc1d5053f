import numpy as np
import pytest

from tascope import (
    GammaGrid,
    KernelMatrix,
    LabeledDataset,
    ToyDatasetSpec,
    build_toy_dataset,
    validate_dataset,
)
from tascope.errors import ConfigurationError, InvalidSpecError


def test_toy_two_points():
    ds = build_toy_dataset(ToyDatasetSpec(2))
    assert ds.points.ravel().tolist() == [0.0, 1.0]
    assert ds.labels.tolist() == [1, -1]
    assert ds.is_balanced


def test_toy_four_points():
    ds = build_toy_dataset(ToyDatasetSpec(4))
    assert ds.points.ravel().tolist() == [0.0, 1 / 3, 2 / 3, 1.0]
    assert ds.labels.tolist() == [1, -1, 1, -1]


@pytest.mark.parametrize("n", [3, 1, 0, -2, 7])
def test_toy_invalid_sizes(n):
    with pytest.raises(InvalidSpecError):
        build_toy_dataset(ToyDatasetSpec(n))


def test_toy_spec_rejects_non_integer():
    with pytest.raises(InvalidSpecError):
        ToyDatasetSpec(2.5)


@pytest.mark.parametrize("n", range(2, 42, 2))
def test_toy_properties(n):
    ds = build_toy_dataset(ToyDatasetSpec(n))
    report = validate_dataset(ds)
    assert report.is_valid
    assert report.is_balanced
    x = ds.points.ravel()
    np.testing.assert_allclose(np.diff(x), 1.0 / (n - 1), rtol=0, atol=1e-15)
    assert np.all(ds.labels[:-1] * ds.labels[1:] == -1)
    assert x[0] == 0.0 and x[-1] == 1.0


def test_validate_unbalanced():
    report = validate_dataset(LabeledDataset([0.1, 0.9], [1, 1]))
    assert report.is_valid
    assert not report.is_balanced


def test_validate_out_of_range():
    report = validate_dataset(LabeledDataset([0.1, 1.5], [1, -1]))
    assert not report.is_valid
    assert report.out_of_range_points == (1,)
    assert any("out of range" in msg for msg in report.issues())


def test_validate_bad_label_and_mismatch():
    report = validate_dataset(LabeledDataset([[0.1], [0.2], [0.3]], [1, 0]))
    assert not report.is_valid
    assert report.length_mismatch
    assert report.invalid_label_points == (1,)


def test_validate_too_small():
    report = validate_dataset(LabeledDataset([0.5], [1]))
    assert report.too_small
    assert not report.is_valid


def test_dataset_is_immutable():
    ds = build_toy_dataset(ToyDatasetSpec(4))
    with pytest.raises(ValueError):
        ds.points[0, 0] = 0.5
    with pytest.raises(ValueError):
        ds.labels[0] = -1


def test_dataset_subset_keeps_order():
    ds = build_toy_dataset(ToyDatasetSpec(8))
    sub = ds.subset(np.array([0, 3, 5]))
    assert sub.points.ravel().tolist() == [ds.points[i, 0] for i in (0, 3, 5)]
    assert sub.labels.tolist() == [1, -1, -1]


def test_gamma_grid_values_are_reproducible():
    grid = GammaGrid(0.25, 7.75, 301)
    a, b = grid.values(), grid.values()
    assert np.array_equal(a, b)
    assert a[0] == 0.25 and a[-1] == 7.75
    assert len(a) == 301
    assert grid.spacing == pytest.approx(7.5 / 300, abs=0)


@pytest.mark.parametrize(
    "start,end,n", [(0.0, 0.0, 5), (1.0, 0.5, 5), (0.0, 1.0, 1)]
)
def test_gamma_grid_rejects_bad_shapes(start, end, n):
    with pytest.raises(ConfigurationError):
        GammaGrid(start, end, n)


def test_kernel_matrix_validation():
    with pytest.raises(ConfigurationError):
        KernelMatrix(np.array([[1.0, 0.5], [0.4, 1.0]]))  # asymmetric
    with pytest.raises(ConfigurationError):
        KernelMatrix(np.array([[0.9, 0.5], [0.5, 1.0]]))  # diagonal off
    k = KernelMatrix(np.array([[1.0, 0.5], [0.5, 1.0]]))
    assert k.n_points == 2
