"""SMOTE oversampling of the minority class."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dataset import LabeledDataset
from .errors import InputError, TooFewMinority

SYNTHETIC_PREFIX = "__smote__/"


@dataclass(frozen=True)
class SmoteConfig:
    k_neighbors: int = 5
    target_ratio: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.k_neighbors < 1:
            raise InputError(f"k_neighbors must be >= 1, got {self.k_neighbors}")
        if not 0 < self.target_ratio <= 1:
            raise InputError(f"target_ratio must lie in (0, 1], got {self.target_ratio}")


def _standardize(X: np.ndarray) -> np.ndarray:
    std = X.std(axis=0)
    std[std == 0] = 1.0
    return (X - X.mean(axis=0)) / std


def nearest_minority_neighbors(Z: np.ndarray, k: int) -> np.ndarray:
    """Indices of the ``k`` nearest other rows of ``Z`` (ties by lower index)."""
    sq = (Z * Z).sum(axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * Z @ Z.T
    np.fill_diagonal(d2, np.inf)
    return np.argsort(d2, axis=1, kind="stable")[:, :k]


def smote(dataset: LabeledDataset, cfg: SmoteConfig = SmoteConfig()) -> LabeledDataset:
    """Append synthetic minority records until minority/majority >= target ratio.

    Neighbours are searched in standardized feature space (whole-dataset
    mean and std); interpolation happens on the raw features. Seed records
    are visited round-robin in dataset order, neighbours are drawn uniformly
    from the k nearest. ``k`` is clamped to ``minority - 1`` with a warning.
    """
    n_clean, n_defect = dataset.class_counts()
    minority_label = 1 if n_defect <= n_clean else 0
    n_min, n_maj = min(n_clean, n_defect), max(n_clean, n_defect)
    if n_min < 2:
        raise TooFewMinority(f"SMOTE needs at least 2 minority records, got {n_min}")
    target = math.ceil(cfg.target_ratio * n_maj)
    n_new = target - n_min
    if n_new <= 0:
        return dataset

    k = cfg.k_neighbors
    if k > n_min - 1:
        warnings.warn(f"SMOTE k_neighbors={k} clamped to {n_min - 1} (only {n_min} minority records)")
        k = n_min - 1

    min_idx = np.flatnonzero(dataset.y == minority_label)
    X_min = dataset.X[min_idx]
    Z = _standardize(dataset.X)[min_idx]
    neighbors = nearest_minority_neighbors(Z, k)

    rng = np.random.default_rng(cfg.seed)
    base = np.arange(n_new) % n_min
    pick = neighbors[base, rng.integers(0, k, size=n_new)]
    gap = rng.random(n_new)[:, None]
    parents = X_min[base]
    partners = X_min[pick]
    synthetic = parents + gap * (partners - parents)
    # rounding must not push a point off its segment
    synthetic = np.clip(synthetic, np.minimum(parents, partners), np.maximum(parents, partners))

    width = max(6, len(str(n_new)))
    new_paths = tuple(f"{SYNTHETIC_PREFIX}{i + 1:0{width}d}" for i in range(n_new))
    return LabeledDataset(
        dataset.feature_names,
        dataset.paths + new_paths,
        np.vstack([dataset.X, synthetic]),
        np.concatenate([dataset.y, np.full(n_new, minority_label, dtype=np.int64)]),
        dataset.source_mix,
        dataset.filtered_generated,
    )
