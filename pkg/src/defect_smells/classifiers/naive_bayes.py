"""Gaussian naive Bayes with a variance floor."""
import numpy as np

from ..dataset import LabeledDataset
from .base import ClassifierKind, TrainedModel, require_both_classes

VARIANCE_FLOOR = 1e-9


def train_naive_bayes(dataset: LabeledDataset) -> TrainedModel:
    """Per class: prior = class frequency, per-feature mean and ML variance."""
    require_both_classes(dataset)
    means, variances, log_priors = [], [], []
    for label in (0, 1):
        Xc = dataset.X[dataset.y == label]
        means.append(Xc.mean(axis=0))
        variances.append(np.maximum(Xc.var(axis=0), VARIANCE_FLOOR))
        log_priors.append(np.log(len(Xc) / len(dataset)))
    return TrainedModel(
        ClassifierKind.NAIVE_BAYES,
        dataset.feature_names,
        {"mean": np.array(means), "var": np.array(variances), "log_prior": np.array(log_priors)},
    )


def log_joint(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    """``log P(c) + sum_j log N(x_j | mean_cj, var_cj)`` for c = clean, defect-prone."""
    p = model.parameters
    mean, var = p["mean"], p["var"]
    diff = X[:, None, :] - mean[None, :, :]
    ll = -0.5 * (np.log(2 * np.pi * var)[None, :, :] + diff * diff / var[None, :, :])
    return p["log_prior"][None, :] + ll.sum(axis=2)


def predict_naive_bayes(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    scores = log_joint(model, X)
    # exact ties go to clean
    return (scores[:, 1] > scores[:, 0]).astype(np.int64)
