"""Fidelity kernels for the single-qubit H - RZ(gamma*x) - H feature map.

Two independent evaluation routes are kept side by side on purpose: an
explicit 2x2 statevector simulation of the circuit, and the closed form
cos^2[(gamma/2)(x_i - x_j)] it induces. Each one is used to test the
other. For d-dimensional inputs the map acts qubit-wise, so the kernel
is the product of the per-dimension fidelities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import FeatureMapParams, KernelMatrix, LabeledDataset
from .errors import ConfigurationError, DomainError

_NORM_ATOL = 1e-12

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)
_ZERO_STATE = np.array([1.0, 0.0], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class Statevector2:
    """Pure single-qubit state as two complex amplitudes, unit norm."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape != (2,):
            raise DomainError("a single-qubit state has exactly 2 amplitudes")
        norm_sq = float(np.real(amps.conj() @ amps))
        if abs(norm_sq - 1.0) > _NORM_ATOL:
            raise DomainError(f"state norm^2 deviates from 1: {norm_sq!r}")
        amps = np.array(amps, copy=True)
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not np.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")


def _rz(theta: float) -> np.ndarray:
    return np.array(
        [[np.exp(-0.5j * theta), 0.0], [0.0, np.exp(0.5j * theta)]],
        dtype=np.complex128,
    )


def encode_point(x: float, gamma: float) -> Statevector2:
    """Run the encoding circuit H * RZ(gamma*x) * H on the |0> state."""
    _require_finite(x=x, gamma=gamma)
    amps = _HADAMARD @ (_rz(gamma * x) @ (_HADAMARD @ _ZERO_STATE))
    return Statevector2(amps)


def statevector_fidelity(a: Statevector2, b: Statevector2) -> float:
    """Squared overlap |<b|a>|^2 of two states."""
    return float(abs(np.vdot(b.amplitudes, a.amplitudes)) ** 2)


def kernel_entry_closed_form(xi: float, xj: float, gamma: float) -> float:
    """Kernel entry cos^2[(gamma/2)(xi - xj)] of the encoding circuit."""
    _require_finite(xi=xi, xj=xj, gamma=gamma)
    return math.cos((0.5 * gamma) * (xi - xj)) ** 2


def kernel_entry_statevector(xi: float, xj: float, gamma: float) -> float:
    """Kernel entry obtained by simulating both circuits and overlapping."""
    return statevector_fidelity(encode_point(xi, gamma), encode_point(xj, gamma))


def _closed_form_pair_values(
    diffs_by_dim: np.ndarray, gamma: tuple[float, ...]
) -> np.ndarray:
    """Product over dimensions of cos^2((gamma_q/2) * diff_q) per pair.

    ``diffs_by_dim`` has shape (d, n_pairs). The multiplication order is
    fixed (dimension 0 first) so results are reproducible bit for bit.
    """
    vals = np.cos((0.5 * gamma[0]) * diffs_by_dim[0]) ** 2
    for q in range(1, len(gamma)):
        vals = vals * np.cos((0.5 * gamma[q]) * diffs_by_dim[q]) ** 2
    return vals


def kernel_matrix(
    d: LabeledDataset,
    params: FeatureMapParams,
    method: str = "closed_form",
) -> KernelMatrix:
    """Pairwise fidelity matrix of a dataset under the encoding map.

    Only the upper triangle is evaluated and then mirrored, which halves
    the work and makes the result exactly symmetric. The closed-form
    route sets the diagonal to 1 exactly; the statevector route computes
    self-fidelities honestly (unit within 1e-12).
    """
    if params.dim != d.dim:
        raise ConfigurationError(
            f"params have {params.dim} gamma value(s) for {d.dim}-dimensional data"
        )
    if not np.all(np.isfinite(d.points)):
        raise DomainError("dataset features must be finite")
    n = d.n_points
    iu, ju = np.triu_indices(n, k=1)
    if method == "closed_form":
        diffs = np.stack(
            [d.points[iu, q] - d.points[ju, q] for q in range(d.dim)]
        )
        upper = _closed_form_pair_values(diffs, params.gamma)
        diag = np.ones(n)
    elif method == "statevector":
        states = np.empty((n, d.dim, 2), dtype=np.complex128)
        for i in range(n):
            for q in range(d.dim):
                states[i, q] = encode_point(
                    float(d.points[i, q]), params.gamma[q]
                ).amplitudes
        overlaps = np.sum(states[iu] * states[ju].conj(), axis=2)
        upper = np.prod(np.abs(overlaps) ** 2, axis=1)
        self_overlaps = np.sum(states * states.conj(), axis=2)
        diag = np.prod(np.abs(self_overlaps) ** 2, axis=1)
    else:
        raise ConfigurationError(
            f"unknown kernel method {method!r}; use 'closed_form' or 'statevector'"
        )
    values = np.zeros((n, n))
    values[np.arange(n), np.arange(n)] = diag
    values[iu, ju] = upper
    values[ju, iu] = upper
    return KernelMatrix(values)
