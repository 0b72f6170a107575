"""Audio feature diversity metrics for candidate windows.

The production metric is the mean pairwise Euclidean distance between the
window's feature rows. Three alternatives are kept for ablation studies:
explained-variance ratios of the window's principal components and the
normalized entropy of a deterministic clustering of the rows.
"""

from __future__ import annotations

import enum
import warnings

import numpy as np
from scipy.spatial.distance import pdist

from .errors import BadClusterCountError, BadComponentCountError, TooFewFramesError

DEFAULT_K = 8


class DiversityMetricKind(enum.Enum):
    MEAN_PAIRWISE_EUCLIDEAN = "pairwise-euclidean"
    PCA_TOP1_EXPLAINED_VARIANCE = "pca-top1"
    PCA_CUMULATIVE_VARIANCE = "pca-cumulative"
    SEMANTIC_ENTROPY = "semantic-entropy"


class DegenerateVarianceWarning(RuntimeWarning):
    """A window has zero total variance; PCA ratios default to 1.0."""


def _check_features(features) -> np.ndarray:
    arr = np.asarray(features, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"features must be 2-D (T, d), got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise TooFewFramesError(f"need at least 2 feature rows, got {arr.shape[0]}")
    if not np.isfinite(arr).all():
        raise ValueError("features contain NaN or Inf")
    return arr


def mean_pairwise_euclidean(features) -> float:
    """Mean of ||f_i - f_j|| over all unordered row pairs i < j."""
    arr = _check_features(features)
    return float(pdist(arr).mean())


def _variance_spectrum(features) -> np.ndarray:
    arr = _check_features(features)
    centered = arr - arr.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    return s * s  # proportional to covariance eigenvalues, descending


def pca_top1_explained_variance(features) -> float:
    """Fraction of total variance captured by the largest principal component.

    Defined as 1.0 (with a DegenerateVarianceWarning) when the window has no
    variance at all.
    """
    spectrum = _variance_spectrum(features)
    total = spectrum.sum()
    if total == 0.0:
        warnings.warn("window has zero variance", DegenerateVarianceWarning, stacklevel=2)
        return 1.0
    return float(spectrum[0] / total)


def pca_cumulative_variance(features, k: int) -> float:
    """Fraction of total variance captured by the k largest components."""
    arr = np.asarray(features)
    if arr.ndim != 2:
        raise ValueError(f"features must be 2-D (T, d), got shape {arr.shape}")
    if not 1 <= k <= arr.shape[1]:
        raise BadComponentCountError(f"k must be in [1, {arr.shape[1]}], got {k}")
    spectrum = _variance_spectrum(arr)
    total = spectrum.sum()
    if total == 0.0:
        warnings.warn("window has zero variance", DegenerateVarianceWarning, stacklevel=2)
        return 1.0
    return float(spectrum[: min(k, spectrum.size)].sum() / total)


def _farthest_point_centers(arr: np.ndarray, k: int) -> np.ndarray:
    # first center: row farthest from the data mean, ties to the lowest index
    offsets = arr - arr.mean(axis=0)
    first = int(np.argmax(np.einsum("ij,ij->i", offsets, offsets)))
    centers = [arr[first]]
    min_d2 = np.sum((arr - arr[first]) ** 2, axis=1)
    for _ in range(1, k):
        nxt = int(np.argmax(min_d2))
        centers.append(arr[nxt])
        min_d2 = np.minimum(min_d2, np.sum((arr - arr[nxt]) ** 2, axis=1))
    return np.stack(centers)


def semantic_entropy(features, k: int, max_iter: int = 50) -> float:
    """Normalized entropy of the cluster-size distribution of the rows.

    Runs a fully deterministic k-means (farthest-point init, argmin ties to
    the lowest center index, empty clusters keep their centroid) and returns
    the Shannon entropy of the k cluster sizes divided by ln k. 0.0 when
    k == 1 by definition.
    """
    arr = _check_features(features)
    if not 1 <= k <= arr.shape[0]:
        raise BadClusterCountError(f"k must be in [1, {arr.shape[0]}], got {k}")
    if k == 1:
        return 0.0

    centers = _farthest_point_centers(arr, k)
    assign = None
    for _ in range(max_iter):
        d2 = ((arr[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_assign = np.argmin(d2, axis=1)
        if assign is not None and np.array_equal(new_assign, assign):
            break
        assign = new_assign
        for c in range(k):
            members = arr[assign == c]
            if members.size:
                centers[c] = members.mean(axis=0)

    sizes = np.bincount(assign, minlength=k)
    p = sizes[sizes > 0] / arr.shape[0]
    entropy = float(-(p * np.log(p)).sum())
    return min(1.0, entropy / np.log(k))


def compute_diversity(features, kind: DiversityMetricKind, k: int = DEFAULT_K) -> float:
    """Dispatch to the configured diversity metric."""
    if kind == DiversityMetricKind.MEAN_PAIRWISE_EUCLIDEAN:
        return mean_pairwise_euclidean(features)
    if kind == DiversityMetricKind.PCA_TOP1_EXPLAINED_VARIANCE:
        return pca_top1_explained_variance(features)
    if kind == DiversityMetricKind.PCA_CUMULATIVE_VARIANCE:
        return pca_cumulative_variance(features, k)
    if kind == DiversityMetricKind.SEMANTIC_ENTROPY:
        return semantic_entropy(features, k)
    raise ValueError(f"unknown diversity metric {kind!r}")
