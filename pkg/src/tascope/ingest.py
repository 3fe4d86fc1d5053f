"""Loading and reducing labeled multispectral pixel samples.

The ingestion boundary is a delimited text table: d band values per row
plus one binary label column ({0, 1} or {+1, -1}; 0 maps to -1). Rows
are reduced to their first principal component by a hand-rolled power
iteration on the sample covariance, then min-max rescaled to [0, 1] so
the encoded features live on the same interval as the toy dataset.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import LabeledDataset
from .errors import (
    ConfigurationError,
    DataError,
    DegenerateDataError,
    ParseError,
)

_DIRECTION_TOL = 1e-12
_MAX_POWER_ITERATIONS = 10_000

_VALID_DELIMITERS = (",", "\t")


@dataclass(frozen=True, eq=False)
class RawSampleTable:
    """Rectangular table of band values with one +1/-1 label per row."""

    bands: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        bands = np.asarray(self.bands, dtype=np.float64)
        if bands.ndim != 2:
            raise DataError("band values must form a 2-d table")
        labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        if labels.shape[0] != bands.shape[0]:
            raise DataError("one label per row is required")
        if bands.shape[0] < 2:
            raise DataError("at least 2 sample rows are required")
        if not np.all(np.isin(labels, (-1, 1))):
            raise DataError("labels must be +1 or -1 after mapping")
        bands = np.array(bands, copy=True)
        bands.flags.writeable = False
        labels = np.array(labels, copy=True)
        labels.flags.writeable = False
        object.__setattr__(self, "bands", bands)
        object.__setattr__(self, "labels", labels)

    @property
    def n_rows(self) -> int:
        return self.bands.shape[0]

    @property
    def n_bands(self) -> int:
        return self.bands.shape[1]


@dataclass(frozen=True, eq=False)
class PcaModel:
    """Column means plus the leading eigenpair of the sample covariance."""

    mean: np.ndarray
    component: np.ndarray
    eigenvalue: float

    def __post_init__(self) -> None:
        mean = np.asarray(self.mean, dtype=np.float64).reshape(-1)
        comp = np.asarray(self.component, dtype=np.float64).reshape(-1)
        if mean.shape != comp.shape:
            raise ConfigurationError("mean and component dimensions differ")
        norm = float(np.linalg.norm(comp))
        if abs(norm - 1.0) > _DIRECTION_TOL:
            raise ConfigurationError(f"component norm deviates from 1: {norm!r}")
        mean = np.array(mean, copy=True)
        mean.flags.writeable = False
        comp = np.array(comp, copy=True)
        comp.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "component", comp)

    @property
    def dim(self) -> int:
        return self.mean.shape[0]


def _map_label(value: float, line_no: int) -> int:
    if value in (0.0, -1.0):
        return -1
    if value == 1.0:
        return 1
    raise DataError(
        f"line {line_no}: label must be 0/1 or +1/-1, got {value!r}"
    )


def load_samples(
    path,
    delimiter: str = ",",
    has_header: bool = False,
    label_column: int = -1,
) -> RawSampleTable:
    """Parse a delimited band-value table into a sample table.

    Malformed rows raise :class:`ParseError` naming the offending line;
    labels outside the binary sets raise :class:`DataError`. Zero labels
    are mapped to -1.
    """
    if delimiter not in _VALID_DELIMITERS:
        raise ConfigurationError("delimiter must be a comma or a tab")
    text = Path(path).read_text(encoding="utf-8")
    rows: list[list[float]] = []
    row_lines: list[int] = []
    n_cols: int | None = None
    for line_no, line in enumerate(text.splitlines(), start=1):
        if has_header and line_no == 1:
            continue
        if not line.strip():
            continue
        fields = line.split(delimiter)
        if n_cols is None:
            n_cols = len(fields)
            if n_cols < 2:
                raise ParseError(
                    f"line {line_no}: need at least one band column plus a label"
                )
        elif len(fields) != n_cols:
            raise ParseError(
                f"line {line_no}: expected {n_cols} columns, got {len(fields)}"
            )
        parsed = []
        for field in fields:
            try:
                value = float(field)
            except ValueError:
                raise ParseError(
                    f"line {line_no}: {field.strip()!r} is not a number"
                ) from None
            if not np.isfinite(value):
                raise ParseError(f"line {line_no}: non-finite value {field.strip()!r}")
            parsed.append(value)
        rows.append(parsed)
        row_lines.append(line_no)
    if len(rows) < 2:
        raise DataError("at least 2 sample rows are required")
    assert n_cols is not None
    if not -n_cols <= label_column < n_cols:
        raise ConfigurationError(
            f"label column {label_column} out of range for {n_cols} columns"
        )
    label_idx = label_column % n_cols
    table = np.asarray(rows)
    labels = [
        _map_label(value, line_no)
        for value, line_no in zip(table[:, label_idx], row_lines)
    ]
    bands = np.delete(table, label_idx, axis=1)
    return RawSampleTable(bands, labels)


def fit_pca(table: RawSampleTable) -> PcaModel:
    """Leading principal component of the band table via power iteration.

    Centers by column means, iterates v <- Cv / ||Cv|| on the sample
    covariance (divisor N-1) until the direction moves less than 1e-12,
    and orients the result so its largest-magnitude entry is positive.
    """
    bands = table.bands
    if np.all(bands == bands[0]):
        raise DegenerateDataError("all rows are identical; covariance vanishes")
    mean = bands.mean(axis=0)
    centered = bands - mean
    cov = (centered.T @ centered) / (table.n_rows - 1)
    scale = float(np.max(np.diagonal(cov)))
    if scale == 0.0:
        raise DegenerateDataError("covariance vanishes")
    d = cov.shape[0]
    v = np.full(d, 1.0 / np.sqrt(d))
    if np.linalg.norm(cov @ v) <= _DIRECTION_TOL * scale:
        # The uniform start can be orthogonal to the leading direction;
        # restart from the highest-variance axis.
        v = np.zeros(d)
        v[int(np.argmax(np.diagonal(cov)))] = 1.0
    for _ in range(_MAX_POWER_ITERATIONS):
        w = cov @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            raise DegenerateDataError("covariance annihilated the iterate")
        w = w / norm
        if float(np.linalg.norm(w - v)) < _DIRECTION_TOL:
            v = w
            break
        v = w
    else:
        raise DataError(
            "power iteration did not converge; leading eigenvalue may be degenerate"
        )
    v = v / float(np.linalg.norm(v))
    pivot = int(np.argmax(np.abs(v)))
    if v[pivot] < 0:
        v = -v
    eigenvalue = float(v @ (cov @ v))
    return PcaModel(mean=mean, component=v, eigenvalue=eigenvalue)


def project_and_rescale(table: RawSampleTable, model: PcaModel) -> LabeledDataset:
    """Project rows onto the leading component and min-max rescale to [0, 1]."""
    if model.dim != table.n_bands:
        raise ConfigurationError(
            f"model has {model.dim} dimensions, table has {table.n_bands} bands"
        )
    projections = (table.bands - model.mean) @ model.component
    lo = float(projections.min())
    hi = float(projections.max())
    # Mathematically constant projections keep rounding residue of the
    # matmul, so degeneracy is judged against the projection magnitude.
    if hi - lo <= 1e-12 * max(abs(hi), abs(lo), 1.0):
        raise DegenerateDataError("projections are constant; cannot rescale")
    features = (projections - lo) / (hi - lo)
    return LabeledDataset(features, table.labels)


def balanced_subsample(
    d: LabeledDataset, per_class: int, seed: int
) -> LabeledDataset:
    """Uniform without-replacement draw of ``per_class`` points per class."""
    if per_class < 1:
        raise ConfigurationError("per_class must be >= 1")
    pos = np.flatnonzero(d.labels == 1)
    neg = np.flatnonzero(d.labels == -1)
    if pos.size < per_class or neg.size < per_class:
        raise ConfigurationError(
            f"requested {per_class} per class, have {pos.size} positive / "
            f"{neg.size} negative"
        )
    rng = np.random.default_rng(seed)
    chosen_pos = pos[rng.permutation(pos.size)[:per_class]]
    chosen_neg = neg[rng.permutation(neg.size)[:per_class]]
    idx = np.sort(np.concatenate([chosen_pos, chosen_neg]))
    return d.subset(idx)


def synthetic_blob_table(
    n_per_class: int,
    seed: int,
    n_bands: int = 4,
    separation: float = 0.25,
    spread: float = 0.15,
) -> RawSampleTable:
    """Two overlapping Gaussian blobs of band values, balanced by rows.

    Stands in for real pixel samples in tests: the +1 class is shifted by
    ``separation`` on every band. Rows alternate classes.
    """
    if n_per_class < 1:
        raise ConfigurationError("n_per_class must be >= 1")
    rng = np.random.default_rng(seed)
    base = 0.3 + 0.02 * np.arange(n_bands)
    neg = base + spread * rng.standard_normal((n_per_class, n_bands))
    pos = base + separation + spread * rng.standard_normal((n_per_class, n_bands))
    bands = np.empty((2 * n_per_class, n_bands))
    bands[0::2] = pos
    bands[1::2] = neg
    labels = np.where(np.arange(2 * n_per_class) % 2 == 0, 1, -1)
    return RawSampleTable(bands, labels)


def save_samples(table: RawSampleTable, path, delimiter: str = ",") -> None:
    """Write a sample table in the format :func:`load_samples` reads."""
    if delimiter not in _VALID_DELIMITERS:
        raise ConfigurationError("delimiter must be a comma or a tab")
    lines = []
    for row, label in zip(table.bands, table.labels):
        fields = [repr(float(v)) for v in row] + [str(int(label))]
        lines.append(delimiter.join(fields))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
