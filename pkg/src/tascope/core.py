"""Domain types shared by every other module.

Datasets are plain containers: construction coerces shapes but does not
enforce invariants, so that :func:`validate_dataset` can report problems
instead of raising. Producers inside the package (toy construction,
ingestion) only ever emit datasets that validate cleanly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, InvalidSpecError

_DIAG_ATOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Ordered feature vectors with one class label (+1 or -1) per point.

    ``points`` is stored as an (N, d) float array; 1-d input is treated as
    a single feature column. Instances are immutable and safe to share
    across workers.
    """

    points: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2:
            raise ConfigurationError("points must be a 1-d or 2-d array")
        labels = np.asarray(self.labels).reshape(-1)
        if labels.dtype.kind == "f":
            if not np.all(np.isfinite(labels)) or np.any(labels != np.rint(labels)):
                raise DomainError("labels must be integer-valued")
        labels = labels.astype(np.int64)
        object.__setattr__(self, "points", _frozen(pts))
        object.__setattr__(self, "labels", _frozen(labels))

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def is_balanced(self) -> bool:
        return int(np.sum(self.labels == 1)) == int(np.sum(self.labels == -1))

    def subset(self, indices: np.ndarray) -> "LabeledDataset":
        """Dataset restricted to the given point indices, in the given order."""
        idx = np.asarray(indices, dtype=np.int64)
        return LabeledDataset(self.points[idx], self.labels[idx])


@dataclass(frozen=True)
class ToyDatasetSpec:
    """Equidistant points on [0, 1] with alternating labels.

    Expands to x_i = (i - 1)/(N - 1) for i = 1..N and labels (-1)^(i-1),
    which is balanced exactly when N is even.
    """

    n_points: int

    def __post_init__(self) -> None:
        n = self.n_points
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
            raise InvalidSpecError("n_points must be an integer")
        if n < 2 or n % 2 != 0:
            raise InvalidSpecError(
                f"n_points must be even and >= 2, got {n}"
            )


@dataclass(frozen=True)
class FeatureMapParams:
    """Rotation scale (radians per unit feature), one value per dimension."""

    gamma: tuple[float, ...]

    def __post_init__(self) -> None:
        g = self.gamma
        if isinstance(g, (int, float, np.floating, np.integer)):
            g = (float(g),)
        else:
            g = tuple(float(v) for v in g)
        if len(g) == 0:
            raise ConfigurationError("gamma must have at least one component")
        if not all(np.isfinite(v) for v in g):
            raise DomainError("gamma components must be finite")
        object.__setattr__(self, "gamma", g)

    @property
    def dim(self) -> int:
        return len(self.gamma)

    @classmethod
    def uniform(cls, gamma: float, dim: int) -> "FeatureMapParams":
        """Same scalar scale applied to every feature dimension."""
        return cls(tuple([float(gamma)] * dim))


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Symmetric matrix of pairwise fidelities with unit diagonal.

    Construction checks exact symmetry, a unit diagonal within 1e-12 and
    entries inside [0, 1] (same tolerance).
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ConfigurationError("kernel matrix must be square")
        if not np.array_equal(v, v.T):
            raise ConfigurationError("kernel matrix must be symmetric")
        if np.max(np.abs(np.diagonal(v) - 1.0)) > _DIAG_ATOL:
            raise ConfigurationError("kernel diagonal must be 1 within 1e-12")
        if v.min() < -_DIAG_ATOL or v.max() > 1.0 + _DIAG_ATOL:
            raise ConfigurationError("kernel entries must lie in [0, 1]")
        object.__setattr__(self, "values", _frozen(v))

    @property
    def n_points(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class GammaGrid:
    """Uniform grid of rotation-scale values, reproducible exactly.

    Values are derived on demand from (start, end, n_samples), never
    stored, so two grids with equal fields yield bit-identical samples.
    """

    start: float
    end: float
    n_samples: int

    def __post_init__(self) -> None:
        if not (np.isfinite(self.start) and np.isfinite(self.end)):
            raise ConfigurationError("grid endpoints must be finite")
        if self.end <= self.start:
            raise ConfigurationError("grid end must exceed start")
        if self.n_samples < 2:
            raise ConfigurationError("grid needs at least 2 samples")

    @property
    def spacing(self) -> float:
        return (self.end - self.start) / (self.n_samples - 1)

    def values(self) -> np.ndarray:
        step = (self.end - self.start) / (self.n_samples - 1)
        vals = self.start + step * np.arange(self.n_samples, dtype=np.float64)
        vals[-1] = self.end
        return vals


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate_dataset`; never raises, only reports."""

    too_small: bool
    length_mismatch: bool
    out_of_range_points: tuple[int, ...]
    invalid_label_points: tuple[int, ...]
    is_balanced: bool

    @property
    def is_valid(self) -> bool:
        return not (
            self.too_small
            or self.length_mismatch
            or self.out_of_range_points
            or self.invalid_label_points
        )

    def issues(self) -> list[str]:
        out = []
        if self.too_small:
            out.append("dataset needs at least 2 points")
        if self.length_mismatch:
            out.append("points and labels differ in length")
        for i in self.out_of_range_points:
            out.append(f"feature out of range [0, 1] at point {i}")
        for i in self.invalid_label_points:
            out.append(f"label not in {{+1, -1}} at point {i}")
        return out


def build_toy_dataset(spec: ToyDatasetSpec) -> LabeledDataset:
    """Expand a toy specification into its equidistant alternating dataset."""
    n = spec.n_points
    points = np.arange(n, dtype=np.float64) / (n - 1)
    labels = np.where(np.arange(n) % 2 == 0, 1, -1)
    return LabeledDataset(points, labels)


def validate_dataset(d: LabeledDataset) -> ValidationReport:
    """Check dataset invariants and report every violation found."""
    n_pts = d.points.shape[0]
    n_lab = d.labels.shape[0]
    n = min(n_pts, n_lab)
    out_of_range = tuple(
        int(i)
        for i in range(n_pts)
        if np.any(d.points[i] < 0.0) or np.any(d.points[i] > 1.0)
    )
    bad_labels = tuple(
        int(i) for i in range(n_lab) if d.labels[i] not in (-1, 1)
    )
    return ValidationReport(
        too_small=n < 2,
        length_mismatch=n_pts != n_lab,
        out_of_range_points=out_of_range,
        invalid_label_points=bad_labels,
        is_balanced=d.is_balanced,
    )
