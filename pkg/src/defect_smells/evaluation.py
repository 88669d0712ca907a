"""Stratified splitting, confusion matrices and the derived measures."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .classifiers import TrainedModel, predict_many
from .dataset import LabeledDataset
from .errors import DegenerateSplit, InputError, SchemaMismatch, SingleClass


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts for the defect-prone (positive) class."""

    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        for name in ("tp", "fp", "tn", "fn"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise InputError(f"{name} must be a nonnegative integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.total < 1:
            raise InputError("confusion matrix is empty")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class MeasureSet:
    precision: float
    recall: float
    f_measure: float
    accuracy: float
    kappa: float

    def as_dict(self) -> dict:
        return asdict(self)


def _ratio(num, den) -> float:
    return num / den if den else 0.0


def measures(cm: ConfusionMatrix) -> MeasureSet:
    """Precision, recall, F-measure, accuracy and Cohen's kappa.

    Zero denominators give 0. Kappa uses the marginal-product chance
    agreement and is 0 when chance agreement is 1.
    """
    tp, fp, tn, fn, total = cm.tp, cm.fp, cm.tn, cm.fn, cm.total
    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    f_measure = _ratio(2 * precision * recall, precision + recall)
    accuracy = (tp + tn) / total
    p_e = ((tp + fn) * (tp + fp) + (fp + tn) * (fn + tn)) / (total * total)
    kappa = 0.0 if p_e == 1 else (accuracy - p_e) / (1 - p_e)
    return MeasureSet(precision, recall, f_measure, accuracy, kappa)


def confusion_from_labels(actual, predicted) -> ConfusionMatrix:
    actual = np.asarray(actual)
    predicted = np.asarray(predicted)
    return ConfusionMatrix(
        tp=int(np.sum((predicted == 1) & (actual == 1))),
        fp=int(np.sum((predicted == 1) & (actual == 0))),
        tn=int(np.sum((predicted == 0) & (actual == 0))),
        fn=int(np.sum((predicted == 0) & (actual == 1))),
    )


def confusion(model: TrainedModel, dataset: LabeledDataset) -> ConfusionMatrix:
    if tuple(model.feature_names) != tuple(dataset.feature_names):
        raise SchemaMismatch(
            f"model trained on {list(model.feature_names)}, dataset has {list(dataset.feature_names)}"
        )
    return confusion_from_labels(dataset.y, predict_many(model, dataset.X))


def stratified_split(dataset: LabeledDataset, fraction: float = 0.5, seed: int = 0):
    """Seeded per-class split into ``(train, eval)``.

    Each class contributes ``round(fraction * count)`` records to the train
    part (halves round up), clamped so that a class with two or more records
    appears on both sides. Both parts keep the dataset's row order.
    """
    if not 0 < fraction < 1:
        raise InputError(f"split fraction must lie in (0, 1), got {fraction}")
    counts = dataset.class_counts()
    if min(counts) == 0:
        raise SingleClass(f"stratified split needs both classes, got clean/defect = {counts}")
    rng = np.random.default_rng(seed)
    train_idx = []
    for label in (0, 1):
        idx = np.flatnonzero(dataset.y == label)
        c = len(idx)
        n_train = math.floor(fraction * c + 0.5)
        if c >= 2:
            n_train = min(max(n_train, 1), c - 1)
        train_idx.append(rng.permutation(idx)[:n_train])
    in_train = np.zeros(len(dataset), dtype=bool)
    in_train[np.concatenate(train_idx)] = True
    train, held = dataset.subset(np.flatnonzero(in_train)), dataset.subset(np.flatnonzero(~in_train))
    if min(train.class_counts()) == 0 or min(held.class_counts()) == 0:
        raise DegenerateSplit(
            f"split leaves a part without one class (train {train.class_counts()}, eval {held.class_counts()})"
        )
    return train, held


def mean_std(values) -> tuple[float, float]:
    """Mean and sample (n - 1) standard deviation; std is NaN below two values."""
    arr = np.asarray(list(values), dtype=np.float64)
    if arr.size == 0:
        return math.nan, math.nan
    std = float(arr.std(ddof=1)) if arr.size > 1 else math.nan
    return float(arr.mean()), std
