"""Alignment landscapes over rotation-scale grids.

Sweeps evaluate the alignment of the closed-form kernel for every grid
value in vectorized batches; batching and threading never change the
result because each grid point is computed independently with the same
elementwise operations and the same fixed-order reductions. The module
also provides the peak analysis: the closed-form Gaussian approximation
of the central peak, a finite-difference check of its width, the mean
alignment over a range (composite Simpson), and the power-law fit of
mean alignment against dataset size.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._summation import compensated_row_sums, compensated_sum
from .core import FeatureMapParams, GammaGrid, LabeledDataset, ToyDatasetSpec
from .errors import ConfigurationError, DomainError
from .alignment import as_label_array, target_alignment_general, target_alignment_toy
from .qkernel import kernel_matrix

DEFAULT_GRID_SPACING = 0.01
"""Default grid step in radians; resolves the narrowest peak (~sqrt(2) wide)
with >140 samples per standard deviation."""

_GAMMA_CHUNK = 512


@dataclass(frozen=True, eq=False)
class AlignmentLandscape:
    """Alignment values sampled on a uniform rotation-scale grid."""

    grid: GammaGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if vals.shape[0] != self.grid.n_samples:
            raise ConfigurationError(
                f"expected {self.grid.n_samples} values, got {vals.shape[0]}"
            )
        vals = np.array(vals, copy=True)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def gammas(self) -> np.ndarray:
        return self.grid.values()


@dataclass(frozen=True)
class GaussianPeak:
    """Gaussian model amplitude * exp(-((gamma - mu)/sigma)^2 / 2)."""

    mu: float
    sigma: float
    amplitude: float

    def value(self, gamma) -> np.ndarray:
        g = np.asarray(gamma, dtype=np.float64)
        return self.amplitude * np.exp(-0.5 * ((g - self.mu) / self.sigma) ** 2)


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares line on log-log axes: mean = prefactor * size^exponent."""

    exponent: float
    prefactor: float
    r_squared: float


def one_period_range(n_points: int) -> tuple[float, float]:
    """One full period [0, 2*pi*(N-1)] of the toy alignment landscape."""
    return (0.0, 2.0 * math.pi * (n_points - 1))


def odd_sample_count(start: float, end: float, spacing: float) -> int:
    """Smallest odd sample count covering [start, end] at ~spacing steps."""
    if spacing <= 0 or not np.isfinite(spacing):
        raise ConfigurationError(f"spacing must be positive, got {spacing!r}")
    n = int(round((end - start) / spacing)) + 1
    if n % 2 == 0:
        n += 1
    return max(n, 3)


def _worker_count() -> int:
    raw = os.environ.get("TA_SCOPE_THREADS", "0").strip()
    try:
        n = int(raw)
    except ValueError:
        raise ConfigurationError(
            f"TA_SCOPE_THREADS must be an integer, got {raw!r}"
        ) from None
    if n < 0:
        raise ConfigurationError("TA_SCOPE_THREADS must be >= 0")
    if n == 0:
        return min(os.cpu_count() or 1, 8)
    return n


def _closed_form_sweep(dataset: LabeledDataset, gammas: np.ndarray) -> np.ndarray:
    """Alignment per grid value, batched over the grid.

    Evaluates the same per-entry formula as the closed-form kernel matrix
    (cos^2 of half the scaled coordinate difference, multiplied across
    dimensions) for all pairs at once, then reduces each grid row with
    the compensated Frobenius sums used by the scalar alignment path.
    """
    pts = dataset.points
    y = as_label_array(dataset.labels)
    n = dataset.n_points
    if y.shape[0] != n:
        raise ConfigurationError("points and labels differ in length")
    diffs = (pts[:, None, :] - pts[None, :, :]).reshape(n * n, -1)
    label_products = np.outer(y, y).reshape(-1)
    kbar = float(n * n)
    out = np.empty(gammas.shape[0])

    n_pairs = diffs.shape[0]
    chunk = max(1, min(_GAMMA_CHUNK, 4_000_000 // max(1, n_pairs)))
    spans = [
        (s, min(s + chunk, gammas.shape[0]))
        for s in range(0, gammas.shape[0], chunk)
    ]

    def fill(span: tuple[int, int]) -> None:
        lo, hi = span
        half = 0.5 * gammas[lo:hi]
        vals = np.cos(half[:, None] * diffs[:, 0]) ** 2
        for q in range(1, diffs.shape[1]):
            vals = vals * np.cos(half[:, None] * diffs[:, q]) ** 2
        num = compensated_row_sums(vals * label_products)
        den = compensated_row_sums(vals * vals)
        out[lo:hi] = num / np.sqrt(den * kbar)

    workers = _worker_count()
    if workers == 1 or len(spans) == 1:
        for span in spans:
            fill(span)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, spans))
    return out


def sweep(
    dataset: LabeledDataset,
    grid: GammaGrid,
    method: str = "closed_form",
) -> AlignmentLandscape:
    """Sample the alignment of the dataset's kernel over a grid.

    For multi-dimensional data the swept scalar is applied to every
    feature dimension. The statevector route simulates each grid point's
    kernel matrix explicitly and is intended for cross-checks.
    """
    gammas = grid.values()
    if method == "closed_form":
        values = _closed_form_sweep(dataset, gammas)
    elif method == "statevector":
        values = np.empty(gammas.shape[0])
        for i, gamma in enumerate(gammas):
            k = kernel_matrix(
                dataset, FeatureMapParams.uniform(float(gamma), dataset.dim), method
            )
            values[i] = target_alignment_general(k, dataset.labels)
    else:
        raise ConfigurationError(
            f"unknown kernel method {method!r}; use 'closed_form' or 'statevector'"
        )
    return AlignmentLandscape(grid, values)


def find_global_peak(landscape: AlignmentLandscape) -> tuple[float, float]:
    """Grid point of maximal alignment; ties resolve to the smallest gamma."""
    if landscape.values.size == 0:
        raise ConfigurationError("landscape is empty")
    idx = int(np.argmax(landscape.values))
    return float(landscape.gammas()[idx]), float(landscape.values[idx])


def simpson_mean(values: np.ndarray, start: float, end: float) -> float:
    """Mean of a uniformly sampled curve via composite Simpson integration."""
    vals = np.asarray(values, dtype=np.float64).reshape(-1)
    n = vals.shape[0]
    if n < 3 or n % 2 == 0:
        raise ConfigurationError(
            f"composite Simpson needs an odd sample count >= 3, got {n}"
        )
    if end <= start:
        raise ConfigurationError("range end must exceed start")
    h = (end - start) / (n - 1)
    weights = np.ones(n)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    integral = (h / 3.0) * compensated_sum(weights * vals)
    return integral / (end - start)


def mean_alignment(
    dataset: LabeledDataset,
    gamma_range: tuple[float, float],
    n_samples: int,
    method: str = "closed_form",
) -> float:
    """Mean alignment over a rotation-scale range (composite Simpson)."""
    start, end = float(gamma_range[0]), float(gamma_range[1])
    if n_samples < 3 or n_samples % 2 == 0:
        raise ConfigurationError(
            f"n_samples must be odd and >= 3 for Simpson, got {n_samples}"
        )
    landscape = sweep(dataset, GammaGrid(start, end, n_samples), method)
    return simpson_mean(landscape.values, start, end)


def analytic_gaussian_peak(n_points: int) -> GaussianPeak:
    """Gaussian model of the central peak from the second-order expansion.

    The peak sits at mu = pi*(N-1) with height 1/sqrt(2); matching the
    curvature there gives sigma = 2*sqrt(3)*(N-1)/sqrt(N^2+2), which
    grows monotonically towards 2*sqrt(3).
    """
    ToyDatasetSpec(n_points)
    n = n_points
    sigma = 2.0 * math.sqrt(3.0) * (n - 1) / math.sqrt(n * n + 2)
    return GaussianPeak(
        mu=math.pi * (n - 1), sigma=sigma, amplitude=1.0 / math.sqrt(2.0)
    )


def curvature_sigma(spec: ToyDatasetSpec, step: float = 1e-3) -> float:
    """Peak width implied by the measured curvature at the optimum.

    Evaluates the second derivative of the toy alignment at its peak with
    a 5-point central stencil and returns sqrt(-T(mu)/T''(mu)), the width
    of the Gaussian whose second-order expansion matches.
    """
    if not np.isfinite(step) or step <= 0:
        raise ConfigurationError(f"step must be positive, got {step!r}")
    mu = math.pi * (spec.n_points - 1)

    def f(gamma: float) -> float:
        return target_alignment_toy(spec, gamma)

    d2 = (
        -f(mu - 2 * step)
        + 16.0 * f(mu - step)
        - 30.0 * f(mu)
        + 16.0 * f(mu + step)
        - f(mu + 2 * step)
    ) / (12.0 * step * step)
    if d2 >= 0.0:
        raise DomainError(
            f"measured curvature {d2!r} is not negative; not at a maximum"
        )
    return math.sqrt(-f(mu) / d2)


def relative_peak_width(n_points: int) -> float:
    """Central peak width as a fraction of one full period."""
    peak = analytic_gaussian_peak(n_points)
    return peak.sigma / (2.0 * math.pi * (n_points - 1))


def fit_power_law(sizes, means) -> PowerLawFit:
    """Least-squares power law through (size, mean) points on log-log axes."""
    x = np.asarray(sizes, dtype=np.float64).reshape(-1)
    y = np.asarray(means, dtype=np.float64).reshape(-1)
    if x.shape[0] != y.shape[0]:
        raise ConfigurationError("sizes and means must have equal length")
    if x.shape[0] < 2:
        raise ConfigurationError("need at least 2 points to fit")
    if np.any(x < 2):
        raise ConfigurationError("sizes must be >= 2")
    if np.any(y <= 0) or not np.all(np.isfinite(y)):
        raise DomainError("means must be positive and finite")
    lx = np.log(x)
    ly = np.log(y)
    dx = lx - lx.mean()
    sxx = float(np.sum(dx * dx))
    if sxx == 0.0:
        raise DomainError("sizes must not all be equal")
    slope = float(np.sum(dx * (ly - ly.mean())) / sxx)
    intercept = float(ly.mean() - slope * lx.mean())
    residuals = ly - (slope * lx + intercept)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    if ss_tot > 0.0:
        r_squared = min(max(1.0 - ss_res / ss_tot, 0.0), 1.0)
    else:
        r_squared = 1.0 if ss_res < 1e-24 else 0.0
    return PowerLawFit(
        exponent=slope, prefactor=math.exp(intercept), r_squared=r_squared
    )
