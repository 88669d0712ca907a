"""Random forest of CART trees (bootstrap + random feature subsets)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..dataset import LabeledDataset
from ..errors import InputError
from ..ingest import path_key
from . import _cart
from .base import ClassifierKind, TrainedModel, require_both_classes


@dataclass(frozen=True)
class ForestConfig:
    n_trees: int = 100
    max_depth: int | None = None
    min_split: int = 2
    # None means floor(sqrt(number of features))
    features_per_split: int | None = None
    seed: int = 0
    bootstrap: bool = True

    def __post_init__(self):
        if self.n_trees < 1:
            raise InputError(f"n_trees must be positive, got {self.n_trees}")
        if self.max_depth is not None and self.max_depth < 1:
            raise InputError(f"max_depth must be positive, got {self.max_depth}")
        if self.min_split < 1:
            raise InputError(f"min_split must be positive, got {self.min_split}")
        if self.features_per_split is not None and self.features_per_split < 1:
            raise InputError("features_per_split must be positive")

    def split_width(self, n_features: int) -> int:
        if self.features_per_split is None:
            return max(1, math.isqrt(n_features))
        return min(self.features_per_split, n_features)


def train_random_forest(dataset: LabeledDataset, cfg: ForestConfig = ForestConfig()) -> TrainedModel:
    """Fit ``cfg.n_trees`` trees; tree ``t`` draws all its randomness from ``seed + t``.

    Rows are put in path order first, so the fitted forest does not depend
    on the order records arrive in.
    """
    require_both_classes(dataset)
    order = sorted(range(len(dataset)), key=lambda i: (path_key(dataset.paths[i]), dataset.paths[i]))
    X = np.ascontiguousarray(dataset.X[order])
    y = np.ascontiguousarray(dataset.y[order])
    n = len(y)
    width = cfg.split_width(dataset.n_features)
    max_depth = -1 if cfg.max_depth is None else cfg.max_depth
    trees = []
    for t in range(cfg.n_trees):
        rng = np.random.default_rng(cfg.seed + t)
        if cfg.bootstrap:
            samples = np.sort(rng.integers(0, n, size=n))
        else:
            samples = np.arange(n, dtype=np.int64)
        tree_seed = int(rng.integers(0, 2**31 - 1))
        feature, threshold, left, right, value = _cart.build_tree(
            X, y, samples, width, max_depth, cfg.min_split, tree_seed
        )
        trees.append(
            {"feature": feature, "threshold": threshold, "left": left, "right": right, "value": value}
        )
    return TrainedModel(ClassifierKind.RANDOM_FOREST, dataset.feature_names, {"trees": trees})


def forest_from_trees(feature_names, trees) -> TrainedModel:
    """Wrap hand-built trees (flat-array dicts) as a forest model."""
    norm = []
    for t in trees:
        norm.append({
            "feature": np.asarray(t["feature"], dtype=np.int64),
            "threshold": np.asarray(t["threshold"], dtype=np.float64),
            "left": np.asarray(t["left"], dtype=np.int64),
            "right": np.asarray(t["right"], dtype=np.int64),
            "value": np.asarray(t["value"], dtype=np.int64),
        })
    return TrainedModel(ClassifierKind.RANDOM_FOREST, tuple(feature_names), {"trees": norm})


def tree_votes(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    X = np.ascontiguousarray(X, dtype=np.float64)
    votes = np.zeros(len(X), dtype=np.int64)
    for t in model.parameters["trees"]:
        votes += _cart.predict_tree(X, t["feature"], t["threshold"], t["left"], t["right"], t["value"])
    return votes


def predict_random_forest(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    votes = tree_votes(model, X)
    n_trees = len(model.parameters["trees"])
    # strict majority for defect-prone; a split vote goes to clean
    return (2 * votes > n_trees).astype(np.int64)
