"""Naive Bayes, PNN and random forest classifiers behind one predict contract."""
from __future__ import annotations

import numpy as np

from ..errors import SchemaMismatch
from .base import (
    ClassifierKind,
    TrainedModel,
    model_from_json,
    model_to_json,
)
from .forest import ForestConfig, forest_from_trees, predict_random_forest, train_random_forest
from .naive_bayes import predict_naive_bayes, train_naive_bayes
from .pnn import PnnConfig, predict_pnn, train_pnn

_PREDICTORS = {
    ClassifierKind.NAIVE_BAYES: predict_naive_bayes,
    ClassifierKind.PNN: predict_pnn,
    ClassifierKind.RANDOM_FOREST: predict_random_forest,
}


def train(kind, dataset, forest: ForestConfig = ForestConfig(), pnn: PnnConfig = PnnConfig()) -> TrainedModel:
    kind = ClassifierKind(kind)
    if kind is ClassifierKind.NAIVE_BAYES:
        return train_naive_bayes(dataset)
    if kind is ClassifierKind.PNN:
        return train_pnn(dataset, pnn)
    return train_random_forest(dataset, forest)


def predict_many(model: TrainedModel, X) -> np.ndarray:
    """Labels (1 = defect-prone, 0 = clean) for each row of ``X``."""
    X = model.check_schema(X)
    if len(X) == 0:
        return np.zeros(0, dtype=np.int64)
    return _PREDICTORS[model.kind](model, X)


def predict(model: TrainedModel, vector) -> int:
    vector = np.asarray(vector, dtype=np.float64)
    if vector.ndim != 1:
        raise SchemaMismatch("predict takes a single feature vector")
    return int(predict_many(model, vector)[0])


__all__ = [
    "ClassifierKind",
    "ForestConfig",
    "PnnConfig",
    "TrainedModel",
    "forest_from_trees",
    "model_from_json",
    "model_to_json",
    "predict",
    "predict_many",
    "train",
    "train_naive_bayes",
    "train_pnn",
    "train_random_forest",
]
