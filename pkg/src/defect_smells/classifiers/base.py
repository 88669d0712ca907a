"""Shared model container and dispatch."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from ..dataset import LabeledDataset
from ..errors import InputError, SchemaMismatch, SingleClassTraining

MODEL_FORMAT_VERSION = 1


class ClassifierKind(str, enum.Enum):
    NAIVE_BAYES = "NAIVE_BAYES"
    PNN = "PNN"
    RANDOM_FOREST = "RANDOM_FOREST"


@dataclass(eq=False)
class TrainedModel:
    """A fitted classifier. ``parameters`` holds kind-specific numpy state."""

    kind: ClassifierKind
    feature_names: tuple
    parameters: dict = field(default_factory=dict)

    def check_schema(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        if X.ndim != 2 or X.shape[1] != len(self.feature_names):
            raise SchemaMismatch(
                f"model expects {len(self.feature_names)} features, got {X.shape[-1]}"
            )
        return X


def require_both_classes(dataset: LabeledDataset):
    n_clean, n_defect = dataset.class_counts()
    if n_clean == 0 or n_defect == 0:
        raise SingleClassTraining(
            f"training data needs both classes (clean={n_clean}, defect_prone={n_defect})"
        )


def _encode(value):
    if isinstance(value, np.ndarray):
        return {"dtype": value.dtype.str, "shape": list(value.shape), "data": value.ravel().tolist()}
    if isinstance(value, list):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    return value


def _decode(value):
    if isinstance(value, dict) and set(value) == {"dtype", "shape", "data"}:
        return np.asarray(value["data"], dtype=np.dtype(value["dtype"])).reshape(value["shape"])
    if isinstance(value, list):
        return [_decode(v) for v in value]
    if isinstance(value, dict):
        return {k: _decode(v) for k, v in value.items()}
    return value


def model_to_json(model: TrainedModel) -> str:
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "kind": model.kind.value,
        "feature_names": list(model.feature_names),
        "parameters": _encode(model.parameters),
    }
    return json.dumps(doc, sort_keys=True)


def model_from_json(text: str) -> TrainedModel:
    doc = json.loads(text)
    if doc.get("format_version") != MODEL_FORMAT_VERSION:
        raise InputError(f"unsupported model format version {doc.get('format_version')!r}")
    return TrainedModel(
        ClassifierKind(doc["kind"]), tuple(doc["feature_names"]), _decode(doc["parameters"])
    )
