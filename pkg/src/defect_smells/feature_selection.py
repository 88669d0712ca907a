"""Wrapper feature selection: backward elimination and simulated annealing.

Both searches score a candidate mask by training the configured classifier
on a seeded stratified part of the data and measuring it on the rest.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .classifiers import ClassifierKind, ForestConfig, PnnConfig, train
from .dataset import LabeledDataset
from .errors import DegenerateSplit, InputError, SingleClass
from .evaluation import confusion, measures, stratified_split


class Score(str, enum.Enum):
    F_MEASURE = "F_MEASURE"
    ACCURACY = "ACCURACY"


@dataclass(frozen=True)
class WrapperEvaluator:
    classifier: ClassifierKind = ClassifierKind.RANDOM_FOREST
    forest: ForestConfig = field(default_factory=lambda: ForestConfig(n_trees=20))
    pnn: PnnConfig = field(default_factory=PnnConfig)
    split_fraction: float = 0.5
    seed: int = 0
    score: Score = Score.F_MEASURE

    def __post_init__(self):
        object.__setattr__(self, "classifier", ClassifierKind(self.classifier))
        object.__setattr__(self, "score", Score(self.score))
        if not 0 < self.split_fraction < 1:
            raise InputError(f"split_fraction must lie in (0, 1), got {self.split_fraction}")


@dataclass(frozen=True)
class AnnealingSchedule:
    initial_temperature: float = 1.0
    cooling_rate: float = 0.95
    iterations: int = 200
    seed: int = 0

    def __post_init__(self):
        if not self.initial_temperature > 0:
            raise InputError("initial_temperature must be positive")
        if not 0 < self.cooling_rate < 1:
            raise InputError("cooling_rate must lie in (0, 1)")
        if self.iterations < 0:
            raise InputError("iterations must be nonnegative")


def _check_mask(dataset: LabeledDataset, mask) -> np.ndarray:
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (dataset.n_features,):
        raise InputError(f"mask has {mask.size} bits for {dataset.n_features} features")
    if not mask.any():
        raise InputError("mask selects no feature")
    return mask


def wrapper_score(dataset: LabeledDataset, mask, evaluator: WrapperEvaluator) -> float:
    """Holdout score of the evaluator's classifier on the masked features."""
    mask = _check_mask(dataset, mask)
    projected = dataset.project(mask)
    try:
        fit_part, score_part = stratified_split(projected, evaluator.split_fraction, evaluator.seed)
    except SingleClass as exc:
        raise DegenerateSplit(str(exc)) from None
    model = train(evaluator.classifier, fit_part, forest=evaluator.forest, pnn=evaluator.pnn)
    ms = measures(confusion(model, score_part))
    return ms.f_measure if evaluator.score is Score.F_MEASURE else ms.accuracy


def backward_elimination(dataset: LabeledDataset, evaluator: WrapperEvaluator, trace=None) -> np.ndarray:
    """Greedy reversed elimination down to a single feature.

    Each step scores every single-feature removal and drops the feature whose
    removal scores best (ties: lowest index). Returns the best mask among the
    step results, ties going to the earlier (larger) mask; a single feature is
    returned as is. With ``m`` features this makes ``m(m+1)/2 - 1`` scoring
    calls. ``trace``, if given, receives one ``(mask, score)`` pair per step.
    """
    m = dataset.n_features
    if m < 1:
        raise InputError("feature selection needs at least one feature")
    active = np.ones(m, dtype=bool)
    best_mask, best_score = active.copy(), -math.inf
    while active.sum() > 1:
        step_score, step_mask = -math.inf, None
        for j in np.flatnonzero(active):
            candidate = active.copy()
            candidate[j] = False
            s = wrapper_score(dataset, candidate, evaluator)
            if s > step_score:
                step_score, step_mask = s, candidate
        active = step_mask
        if trace is not None:
            trace.append((active.copy(), step_score))
        if step_score > best_score:
            best_score, best_mask = step_score, active.copy()
    return best_mask


def simulated_annealing_select(
    dataset: LabeledDataset, evaluator: WrapperEvaluator, schedule: AnnealingSchedule = AnnealingSchedule(),
    trace=None,
) -> np.ndarray:
    """Bit-flip simulated annealing over feature masks, starting from all features.

    A worse neighbour is accepted with probability ``exp(delta / T)``; the
    temperature is multiplied by the cooling rate after every iteration.
    Scores are memoized per mask. ``trace`` receives
    ``(iteration, current_score, best_score)`` per iteration.
    """
    m = dataset.n_features
    if m < 1:
        raise InputError("feature selection needs at least one feature")
    current = np.ones(m, dtype=bool)
    if schedule.iterations == 0 or m == 1:
        return current
    rng = np.random.default_rng(schedule.seed)
    cache = {}

    def score(mask):
        key = mask.tobytes()
        if key not in cache:
            cache[key] = wrapper_score(dataset, mask, evaluator)
        return cache[key]

    current_score = score(current)
    best, best_score = current.copy(), current_score
    temperature = schedule.initial_temperature
    for it in range(schedule.iterations):
        while True:
            neighbor = current.copy()
            j = rng.integers(m)
            neighbor[j] = not neighbor[j]
            if neighbor.any():
                break
        s = score(neighbor)
        if s > current_score:
            accept = True
        else:
            accept = rng.random() < math.exp((s - current_score) / temperature)
        if accept:
            current, current_score = neighbor, s
            if current_score > best_score:
                best, best_score = current.copy(), current_score
        if trace is not None:
            trace.append((it, current_score, best_score))
        temperature *= schedule.cooling_rate
    return best


def mask_to_json(mask, feature_names) -> str:
    """JSON array of the retained feature names."""
    return json.dumps([n for n, keep in zip(feature_names, mask) if keep])


def mask_from_json(text: str, feature_names) -> np.ndarray:
    kept = json.loads(text)
    unknown = set(kept) - set(feature_names)
    if unknown:
        raise InputError(f"mask names unknown features: {sorted(unknown)}")
    return np.array([n in kept for n in feature_names], dtype=bool)
