"""Probabilistic neural network (Parzen window classifier)."""
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist
from scipy.special import logsumexp

from ..dataset import LabeledDataset
from ..errors import InputError
from .base import ClassifierKind, TrainedModel, require_both_classes


@dataclass(frozen=True)
class PnnConfig:
    bandwidth: float = 1.0
    # standardize with training statistics before measuring distances
    standardize: bool = True

    def __post_init__(self):
        if not self.bandwidth > 0:
            raise InputError(f"bandwidth must be positive, got {self.bandwidth}")


def train_pnn(dataset: LabeledDataset, cfg: PnnConfig = PnnConfig()) -> TrainedModel:
    require_both_classes(dataset)
    m = dataset.n_features
    if cfg.standardize:
        center = dataset.X.mean(axis=0)
        scale = dataset.X.std(axis=0)
        scale[scale == 0] = 1.0
    else:
        center, scale = np.zeros(m), np.ones(m)
    Z = (dataset.X - center) / scale
    return TrainedModel(
        ClassifierKind.PNN,
        dataset.feature_names,
        {
            "center": center,
            "scale": scale,
            "bandwidth": float(cfg.bandwidth),
            "patterns": Z,
            "labels": dataset.y.copy(),
        },
    )


def log_class_scores(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    """Log of ``mean_i exp(-|x - x_i|^2 / (2 h^2))`` per class, shape (n, 2).

    Evaluated in log space so tiny bandwidths still rank the nearest pattern.
    """
    p = model.parameters
    Q = (X - p["center"]) / p["scale"]
    d2 = cdist(Q, p["patterns"], "sqeuclidean")
    logk = -d2 / (2.0 * p["bandwidth"] ** 2)
    out = np.empty((len(X), 2))
    for label in (0, 1):
        cols = p["labels"] == label
        out[:, label] = logsumexp(logk[:, cols], axis=1) - np.log(cols.sum())
    return out


def predict_pnn(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    s = log_class_scores(model, X)
    return (s[:, 1] > s[:, 0]).astype(np.int64)
