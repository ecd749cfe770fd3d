"""Location estimators driven by a pairwise distance matrix.

The central estimator picks the sample point minimizing the sum of
alpha-th powers of its distances to everyone else; with alpha=1 on
geodesic-style distances that is an intrinsic sample median, with
Euclidean distances it is the classical medoid.  Euclidean baselines
live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .geometry import euclidean_distance

__all__ = [
    "IntrinsicEstimate",
    "intrinsic_estimate",
    "euclidean_frechet_mean",
    "euclidean_medoid",
    "cross_sectional_mean",
    "pairwise_euclidean_matrix",
]


@dataclass(frozen=True)
class IntrinsicEstimate:
    index: int
    objective: float
    alpha: float


def intrinsic_estimate(distance_matrix, alpha: float = 1.0) -> IntrinsicEstimate:
    """Index minimizing sum_j d(i, j)**alpha, ties going to the smallest index.

    Row sums are accumulated with compensated summation so the argmin does
    not depend on summation order.
    """
    dm = np.asarray(distance_matrix, dtype=float)
    if dm.size == 0:
        raise UsageError("empty distance matrix")
    if dm.ndim != 2 or dm.shape[0] != dm.shape[1]:
        raise UsageError(f"distance matrix must be square, got shape {dm.shape}")
    if not alpha > 0:
        raise UsageError(f"alpha must be positive, got {alpha}")
    if (dm < 0).any():
        raise UsageError("distance matrix has negative entries")
    powered = dm if alpha == 1.0 else dm**alpha
    objectives = [math.fsum(row) for row in powered.tolist()]
    index = min(range(len(objectives)), key=objectives.__getitem__)
    return IntrinsicEstimate(index=index, objective=objectives[index], alpha=float(alpha))


def euclidean_frechet_mean(cloud) -> np.ndarray:
    """Coordinatewise mean; the squared-Euclidean barycenter of the sample."""
    pts = np.asarray(cloud, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise UsageError("need a nonempty (n, p) cloud")
    return pts.mean(axis=0)


def pairwise_euclidean_matrix(cloud) -> np.ndarray:
    pts = np.asarray(cloud, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise UsageError("need a nonempty (n, p) cloud")
    n = pts.shape[0]
    dm = np.zeros((n, n))
    for i in range(n - 1):
        for j in range(i + 1, n):
            dm[i, j] = dm[j, i] = euclidean_distance(pts[i], pts[j])
    return dm


def euclidean_medoid(cloud, alpha: float = 1.0) -> IntrinsicEstimate:
    """Medoid baseline: the intrinsic objective on plain Euclidean distances."""
    return intrinsic_estimate(pairwise_euclidean_matrix(cloud), alpha=alpha)


def cross_sectional_mean(panel) -> np.ndarray:
    """Pointwise mean curve of a panel (rows = curves).

    Accepts a CurvePanel or a rectangular 2-D array; ragged input is a
    usage error.
    """
    values = getattr(panel, "values", panel)
    arr = np.asarray(values)
    if arr.dtype == object or arr.ndim != 2:
        raise UsageError("panel rows must form a rectangular 2-D array")
    return arr.astype(float).mean(axis=0)
