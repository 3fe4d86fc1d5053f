"""Readers for the tascope CLI file formats, with schema diagnostics."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np


class PlotInputError(Exception):
    """Input file missing or not matching the expected schema."""


def _read_columns(path: Path, expected: list[str]) -> np.ndarray:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise PlotInputError(f"{path}: {exc}") from None
    if not lines:
        raise PlotInputError(f"{path}: empty file")
    header = lines[0].split(",")
    if header != expected:
        raise PlotInputError(
            f"{path}: expected columns {','.join(expected)}; "
            f"found {','.join(header)}"
        )
    try:
        rows = [[float(cell) for cell in line.split(",")] for line in lines[1:]]
    except ValueError as exc:
        raise PlotInputError(f"{path}: {exc}") from None
    if not rows:
        raise PlotInputError(f"{path}: no data rows")
    data = np.asarray(rows)
    if data.shape[1] != len(expected):
        raise PlotInputError(f"{path}: ragged rows")
    return data


def read_landscape(path) -> tuple[np.ndarray, np.ndarray]:
    data = _read_columns(Path(path), ["gamma", "ta"])
    return data[:, 0], data[:, 1]


def read_scaling(path) -> tuple[np.ndarray, np.ndarray]:
    data = _read_columns(Path(path), ["n", "mean_ta"])
    return data[:, 0], data[:, 1]


def read_trace(path) -> tuple[np.ndarray, np.ndarray]:
    data = _read_columns(Path(path), ["iteration", "subset_size", "mean_ta"])
    return data[:, 1], data[:, 2]


def read_seed_mean(path) -> tuple[np.ndarray, np.ndarray]:
    data = _read_columns(Path(path), ["subset_size", "mean_ta"])
    return data[:, 0], data[:, 1]


def read_fit(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            fit = json.load(fh)
    except OSError as exc:
        raise PlotInputError(f"{path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise PlotInputError(f"{path}: invalid JSON ({exc})") from None
    missing = {"exponent", "prefactor"} - set(fit)
    if missing:
        raise PlotInputError(f"{path}: missing fit fields {sorted(missing)}")
    return fit


def sibling_manifest(path) -> dict | None:
    """The run manifest written next to a data file, if present."""
    candidate = Path(path).parent / "manifest.json"
    if not candidate.exists():
        return None
    with open(candidate, encoding="utf-8") as fh:
        return json.load(fh)
