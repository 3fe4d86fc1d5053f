"""Deterministic compensated summation.

Frobenius sums and quadrature weights accumulate up to millions of terms;
plain left-to-right addition would make results depend on evaluation order
and lose digits. Both helpers here reduce in fixed chunks of the input,
combine chunk totals with an error-free two-sum, and therefore return
bit-identical values regardless of how callers batch or parallelize the
surrounding work.
"""

from __future__ import annotations

import numpy as np

# Chunk boundaries are fixed positions in the input, never derived from
# worker counts, so the reduction order is part of the function contract.
_CHUNK = 2048


def compensated_row_sums(rows: np.ndarray) -> np.ndarray:
    """Sum each row of a 2-d array with chunked Neumaier compensation."""
    rows = np.ascontiguousarray(rows, dtype=np.float64)
    if rows.ndim != 2:
        raise ValueError("expected a 2-d array of rows")
    m, n = rows.shape
    total = np.zeros(m)
    comp = np.zeros(m)
    for start in range(0, n, _CHUNK):
        part = np.ascontiguousarray(rows[:, start:start + _CHUNK]).sum(axis=1)
        fresh = total + part
        err = np.where(
            np.abs(total) >= np.abs(part),
            (total - fresh) + part,
            (part - fresh) + total,
        )
        comp += err
        total = fresh
    return total + comp


def compensated_sum(values: np.ndarray) -> float:
    """Compensated sum of all elements of an array."""
    flat = np.asarray(values, dtype=np.float64).reshape(1, -1)
    if flat.size == 0:
        return 0.0
    return float(compensated_row_sums(flat)[0])
