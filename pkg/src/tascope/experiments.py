"""The two numerical studies: mean alignment vs size, and incremental data.

The scaling study is fully deterministic. The incremental study draws
balanced subsets of a fixed pool, one seed per trace, with numpy's PCG64
generator so traces reproduce bit for bit across platforms. Subsets are
kept in pool order; with the full pool drawn, the final iteration is
therefore the exact computation the scaling study performs on the same
configuration, not merely a close one.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field

import numpy as np

from .core import LabeledDataset, ToyDatasetSpec, build_toy_dataset
from .errors import ConfigurationError
from .landscape import (
    DEFAULT_GRID_SPACING,
    mean_alignment,
    odd_sample_count,
    one_period_range,
)

RNG_ALGORITHM = "numpy.random.PCG64 (default_rng)"


@dataclass(frozen=True, eq=False)
class IncrementalConfig:
    """Settings for one incremental-data run over a fixed balanced pool."""

    pool: LabeledDataset
    seeds: tuple[int, ...] = tuple(range(10))
    points_per_class_per_iteration: int = 1
    gamma_range: tuple[float, float] | None = None
    grid_spacing: float = DEFAULT_GRID_SPACING
    method: str = "closed_form"
    dataset_label: str = "dataset"

    def resolved_range(self) -> tuple[float, float]:
        if self.gamma_range is not None:
            return (float(self.gamma_range[0]), float(self.gamma_range[1]))
        return one_period_range(self.pool.n_points)


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    subset_size: int
    mean_ta: float
    seed: int


@dataclass(eq=False)
class ExperimentTrace:
    """Per-iteration records for one seed, plus run metadata."""

    seed: int
    records: tuple[IterationRecord, ...]
    metadata: dict = field(default_factory=dict)

    def subset_sizes(self) -> list[int]:
        return [r.subset_size for r in self.records]

    def means(self) -> list[float]:
        return [r.mean_ta for r in self.records]


def scaling_experiment(
    sizes,
    grid_spacing: float = DEFAULT_GRID_SPACING,
    method: str = "closed_form",
) -> list[tuple[int, float]]:
    """Mean alignment over one period of the toy landscape, per size."""
    out = []
    for n in sizes:
        spec = ToyDatasetSpec(int(n))
        dataset = build_toy_dataset(spec)
        start, end = one_period_range(spec.n_points)
        samples = odd_sample_count(start, end, grid_spacing)
        out.append(
            (spec.n_points, mean_alignment(dataset, (start, end), samples, method))
        )
    return out


def subset_schedule(
    pool: LabeledDataset, seed: int, per_class: int = 1
) -> list[np.ndarray]:
    """Index sets of the growing balanced subsets for one seed.

    Starts from one random point per class, then adds ``per_class`` fresh
    points per class each step (fewer on the last step if the pool runs
    short), sampling without replacement. Each index set is sorted into
    pool order.
    """
    if per_class < 1:
        raise ConfigurationError("per-class addition count must be >= 1")
    labels = pool.labels
    pos = np.flatnonzero(labels == 1)
    neg = np.flatnonzero(labels == -1)
    if pos.size != neg.size:
        raise ConfigurationError(
            f"pool must be balanced, got {pos.size} positive / {neg.size} negative"
        )
    if pos.size < 2:
        raise ConfigurationError("pool needs at least 2 points per class")
    rng = np.random.default_rng(seed)
    pos_order = pos[rng.permutation(pos.size)]
    neg_order = neg[rng.permutation(neg.size)]
    schedule = []
    count = 1
    while True:
        idx = np.sort(np.concatenate([pos_order[:count], neg_order[:count]]))
        schedule.append(idx)
        if count == pos.size:
            return schedule
        count = min(count + per_class, pos.size)


def incremental_experiment(cfg: IncrementalConfig) -> list[ExperimentTrace]:
    """Grow balanced subsets of the pool and track their mean alignment.

    Returns one trace per seed. Identical configurations and seeds
    reproduce identical traces bit for bit.
    """
    if not cfg.seeds:
        raise ConfigurationError("at least one seed is required")
    start, end = cfg.resolved_range()
    samples = odd_sample_count(start, end, cfg.grid_spacing)
    created = _dt.datetime.now(_dt.timezone.utc).isoformat()
    traces = []
    for seed in cfg.seeds:
        records = []
        for iteration, idx in enumerate(
            subset_schedule(cfg.pool, seed, cfg.points_per_class_per_iteration)
        ):
            subset = cfg.pool.subset(idx)
            mean = mean_alignment(subset, (start, end), samples, cfg.method)
            records.append(
                IterationRecord(
                    iteration=iteration,
                    subset_size=int(idx.size),
                    mean_ta=mean,
                    seed=int(seed),
                )
            )
        traces.append(
            ExperimentTrace(
                seed=int(seed),
                records=tuple(records),
                metadata={
                    "dataset": cfg.dataset_label,
                    "pool_size": cfg.pool.n_points,
                    "gamma_range": [start, end],
                    "n_samples": samples,
                    "grid_spacing": cfg.grid_spacing,
                    "points_per_class_per_iteration": cfg.points_per_class_per_iteration,
                    "method": cfg.method,
                    "rng": RNG_ALGORITHM,
                    "created_utc": created,
                },
            )
        )
    return traces


def seed_mean_curve(traces: list[ExperimentTrace]) -> list[tuple[int, float]]:
    """Average mean alignment across seeds, per subset size."""
    if not traces:
        raise ConfigurationError("no traces given")
    sizes = traces[0].subset_sizes()
    for t in traces[1:]:
        if t.subset_sizes() != sizes:
            raise ConfigurationError("traces have mismatched subset sizes")
    curve = []
    for i, size in enumerate(sizes):
        curve.append((size, float(np.mean([t.records[i].mean_ta for t in traces]))))
    return curve
