"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np


def as_points_array(points, name: str = "points") -> np.ndarray:
    """Coerce to a finite (n, 2) float64 array or raise ValueError."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"{name} must have shape (n, 2), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite coordinates")
    return arr


def check_finite(arr: np.ndarray, name: str = "array") -> np.ndarray:
    arr = np.asarray(arr, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_probability_vector(scores, name: str = "scores", tol: float = 1e-6) -> np.ndarray:
    """Validate a probability vector: entries in [0, 1], summing to 1."""
    arr = np.asarray(scores, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if np.any(arr < -tol) or np.any(arr > 1.0 + tol):
        raise ValueError(f"{name} entries must lie in [0, 1]")
    if abs(float(arr.sum()) - 1.0) > tol:
        raise ValueError(f"{name} must sum to 1 (got {arr.sum()!r})")
    return arr


def check_positive(value: float, name: str) -> float:
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return float(value)
