"""The classifier x SMOTE x feature-selection x metric-set matrix and the
per-submodule study.

Every job derives its random streams from the master seed and its own
position, so results do not depend on how many worker processes run them.
Data-level streams (SMOTE, the train/eval split) are keyed by the SMOTE
option only, which gives every classifier and both metric sets the same
split of the same files; model and search streams are keyed by cell. In the
submodule study, streams are keyed by condition only.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import product

import numpy as np

from .balancing import SmoteConfig, smote
from .classifiers import ClassifierKind, ForestConfig, PnnConfig, train
from .dataset import LabeledDataset, SourceMix
from .errors import InputError, PipelineError
from .evaluation import ConfusionMatrix, MeasureSet, confusion, mean_std, measures, stratified_split
from .feature_selection import (
    AnnealingSchedule,
    Score,
    WrapperEvaluator,
    backward_elimination,
    simulated_annealing_select,
)


class Smote(str, enum.Enum):
    WITHOUT = "WITHOUT"
    WITH = "WITH"


class FeatureSelection(str, enum.Enum):
    ANNEALING = "ANNEALING"
    ELIMINATION = "ELIMINATION"
    NONE = "NONE"


class Smells(str, enum.Enum):
    ABSENT = "ABSENT"
    PRESENT = "PRESENT"


def derive_seed(*key: int) -> int:
    return int(np.random.SeedSequence([int(k) for k in key]).generate_state(1)[0])


@dataclass(frozen=True)
class ExperimentPlan:
    classifiers: tuple = tuple(ClassifierKind)
    smote: tuple = (Smote.WITHOUT, Smote.WITH)
    fs: tuple = (FeatureSelection.ANNEALING, FeatureSelection.ELIMINATION, FeatureSelection.NONE)
    smells: tuple = (Smells.ABSENT, Smells.PRESENT)
    seed: int = 0
    smote_config: SmoteConfig = field(default_factory=SmoteConfig)
    forest: ForestConfig = field(default_factory=ForestConfig)
    pnn: PnnConfig = field(default_factory=PnnConfig)
    # classifier settings used inside the wrapper searches
    fs_forest: ForestConfig = field(default_factory=lambda: ForestConfig(n_trees=20))
    fs_score: Score = Score.F_MEASURE
    annealing: AnnealingSchedule = field(default_factory=AnnealingSchedule)
    split_fraction: float = 0.5
    fs_on_full: bool = False
    smote_train_only: bool = False

    def __post_init__(self):
        object.__setattr__(self, "classifiers", tuple(ClassifierKind(c) for c in self.classifiers))
        object.__setattr__(self, "smote", tuple(Smote(s) for s in self.smote))
        object.__setattr__(self, "fs", tuple(FeatureSelection(f) for f in self.fs))
        object.__setattr__(self, "smells", tuple(Smells(s) for s in self.smells))
        object.__setattr__(self, "fs_score", Score(self.fs_score))
        if not self.classifiers:
            raise InputError("experiment plan needs at least one classifier")
        if not (self.smote and self.fs and self.smells):
            raise InputError("experiment plan has an empty option list")

    def cells(self):
        """Cross product in report order: classifier, SMOTE, FS, metric set."""
        return list(product(self.classifiers, self.smote, self.fs, self.smells))


@dataclass
class RunResult:
    classifier: ClassifierKind
    smote: Smote
    fs: FeatureSelection
    smells: Smells
    status: str = "ok"
    confusion: ConfusionMatrix | None = None
    measures: MeasureSet | None = None
    selected_features: tuple = ()
    notes: tuple = ()
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def _select(kind, fs, data, evaluator, schedule):
    if fs is FeatureSelection.ELIMINATION:
        return backward_elimination(data, evaluator)
    if fs is FeatureSelection.ANNEALING:
        return simulated_annealing_select(data, evaluator, schedule)
    return np.ones(data.n_features, dtype=bool)


def _run_cell(args) -> RunResult:
    plan, datasets, cell_index, (kind, smote_opt, fs, smells) = args
    result = RunResult(kind, smote_opt, fs, smells)
    smote_idx = list(Smote).index(smote_opt)
    data_seed = derive_seed(plan.seed, 1, smote_idx)
    cell_seed = derive_seed(plan.seed, 2, cell_index)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            data = datasets[smells]
            smote_cfg = replace(plan.smote_config, seed=data_seed)
            if smote_opt is Smote.WITH and not plan.smote_train_only:
                data = smote(data, smote_cfg)
            train_part, eval_part = stratified_split(data, plan.split_fraction, data_seed)
            if smote_opt is Smote.WITH and plan.smote_train_only:
                train_part = smote(train_part, smote_cfg)
            evaluator = WrapperEvaluator(
                kind, replace(plan.fs_forest, seed=cell_seed), plan.pnn,
                plan.split_fraction, cell_seed, plan.fs_score,
            )
            schedule = replace(plan.annealing, seed=cell_seed)
            mask = _select(kind, fs, data if plan.fs_on_full else train_part, evaluator, schedule)
            model = train(
                kind, train_part.project(mask), forest=replace(plan.forest, seed=cell_seed), pnn=plan.pnn
            )
            cm = confusion(model, eval_part.project(mask))
            result.confusion = cm
            result.measures = measures(cm)
            result.selected_features = tuple(n for n, k in zip(data.feature_names, mask) if k)
        except PipelineError as exc:
            result.status = "failed"
            result.error = f"{type(exc).__name__}: {exc}"
    result.notes = tuple(str(w.message) for w in caught)
    return result


def _run_jobs(func, jobs, n_jobs: int):
    if n_jobs <= 1 or len(jobs) <= 1:
        return [func(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(func, jobs))


def run_experiment_matrix(datasets: dict, plan: ExperimentPlan, jobs: int = 1) -> list[RunResult]:
    """Run every cell of the plan.

    ``datasets`` maps :class:`Smells` (or its value) to the labeled dataset
    with code-smell metrics (PRESENT) and without them (ABSENT). Failed cells
    are kept in the result with ``status == "failed"``.
    """
    datasets = {Smells(k): v for k, v in datasets.items()}
    missing = set(plan.smells) - set(datasets)
    if missing:
        raise InputError(f"no dataset for {sorted(s.value for s in missing)}")
    work = [(plan, datasets, i, cell) for i, cell in enumerate(plan.cells())]
    return _run_jobs(_run_cell, work, jobs)


# -- submodule study ----------------------------------------------------------

STUDY_VARIANTS = (SourceMix.FILE_METRICS_ONLY, SourceMix.WARNINGS_ONLY, SourceMix.COMBINED)
STUDY_MEASURES = ("accuracy", "kappa", "recall", "f_measure")


@dataclass(frozen=True)
class StudyConfig:
    seed: int = 0
    n_submodules: int = 20
    smote_config: SmoteConfig = field(default_factory=SmoteConfig)
    forest: ForestConfig = field(default_factory=ForestConfig)
    fs_method: FeatureSelection = FeatureSelection.ELIMINATION
    fs_forest: ForestConfig = field(default_factory=lambda: ForestConfig(n_trees=20))
    fs_score: Score = Score.F_MEASURE
    annealing: AnnealingSchedule = field(default_factory=AnnealingSchedule)
    split_fraction: float = 0.5
    smote_train_only: bool = False

    def __post_init__(self):
        object.__setattr__(self, "fs_method", FeatureSelection(self.fs_method))
        object.__setattr__(self, "fs_score", Score(self.fs_score))


@dataclass
class ConditionResult:
    variant: SourceMix
    with_fs: bool
    per_submodule: list  # MeasureSet or None for a failed submodule
    errors: list
    mean: dict
    std: dict

    @property
    def n_ok(self) -> int:
        return sum(m is not None for m in self.per_submodule)

    @property
    def n_failed(self) -> int:
        return len(self.per_submodule) - self.n_ok

    @property
    def label(self) -> str:
        return f"{self.variant.value} {'with' if self.with_fs else 'without'} FS"


@dataclass
class StudyResult:
    conditions: list

    def condition(self, variant, with_fs: bool) -> ConditionResult:
        variant = SourceMix(variant)
        for c in self.conditions:
            if c.variant is variant and c.with_fs == with_fs:
                return c
        raise KeyError((variant, with_fs))


def study_conditions():
    """Condition order: without FS first, then with FS; variants inside."""
    return [(v, fs) for fs in (False, True) for v in STUDY_VARIANTS]


def _run_study_job(args):
    config, data, cond_index, with_fs = args
    # seeds ignore the submodule position: identical submodules give identical results
    data_seed = derive_seed(config.seed, 3)
    cell_seed = derive_seed(config.seed, 4, cond_index)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            smote_cfg = replace(config.smote_config, seed=data_seed)
            if not config.smote_train_only:
                data = smote(data, smote_cfg)
            train_part, eval_part = stratified_split(data, config.split_fraction, data_seed)
            if config.smote_train_only:
                train_part = smote(train_part, smote_cfg)
            mask = np.ones(data.n_features, dtype=bool)
            if with_fs:
                evaluator = WrapperEvaluator(
                    ClassifierKind.RANDOM_FOREST, replace(config.fs_forest, seed=cell_seed),
                    PnnConfig(), config.split_fraction, cell_seed, config.fs_score,
                )
                schedule = replace(config.annealing, seed=cell_seed)
                mask = _select(ClassifierKind.RANDOM_FOREST, config.fs_method, train_part, evaluator, schedule)
            model = train(
                ClassifierKind.RANDOM_FOREST, train_part.project(mask),
                forest=replace(config.forest, seed=cell_seed),
            )
            return measures(confusion(model, eval_part.project(mask))), None
        except PipelineError as exc:
            return None, f"{type(exc).__name__}: {exc}"


def aggregate(measure_sets) -> tuple[dict, dict]:
    """Mean and sample standard deviation of each study measure."""
    ok = [m for m in measure_sets if m is not None]
    mean, std = {}, {}
    for name in STUDY_MEASURES:
        mean[name], std[name] = mean_std(getattr(m, name) for m in ok)
    return mean, std


def run_submodule_study(submodules: dict, config: StudyConfig = StudyConfig(), jobs: int = 1) -> StudyResult:
    """Random forest + SMOTE on every submodule of every variant, with and without FS.

    ``submodules`` maps each :class:`SourceMix` variant to its list of
    per-submodule datasets (same length for every variant).
    """
    submodules = {SourceMix(k): list(v) for k, v in submodules.items()}
    if set(submodules) != set(STUDY_VARIANTS):
        raise InputError("study needs submodule lists for all three dataset variants")
    sizes = {len(v) for v in submodules.values()}
    if len(sizes) != 1 or sizes.pop() < 2:
        raise InputError("study needs the same number (at least 2) of submodules per variant")
    work = []
    for ci, (variant, with_fs) in enumerate(study_conditions()):
        for data in submodules[variant]:
            work.append((config, data, ci, with_fs))
    outcomes = _run_jobs(_run_study_job, work, jobs)
    conditions = []
    pos = 0
    for variant, with_fs in study_conditions():
        chunk = outcomes[pos : pos + len(submodules[variant])]
        pos += len(chunk)
        per = [m for m, _ in chunk]
        errors = [(i, e) for i, (_, e) in enumerate(chunk) if e is not None]
        mean, std = aggregate(per)
        conditions.append(ConditionResult(variant, with_fs, per, errors, mean, std))
    return StudyResult(conditions)


# -- reports ------------------------------------------------------------------

_CLASSIFIER_LABEL = {
    ClassifierKind.NAIVE_BAYES: "Naive Bayes",
    ClassifierKind.PNN: "PNN",
    ClassifierKind.RANDOM_FOREST: "Random Forest",
}
_FS_LABEL = {
    FeatureSelection.ANNEALING: "Annealing",
    FeatureSelection.ELIMINATION: "Elimination",
    FeatureSelection.NONE: "None",
}
_VARIANT_LABEL = {
    SourceMix.FILE_METRICS_ONLY: "File metrics",
    SourceMix.WARNINGS_ONLY: "Warnings",
    SourceMix.COMBINED: "File metrics + Warnings",
}
_MEASURE_LABEL = {"accuracy": "Accuracy", "kappa": "Cohen's kappa", "recall": "Recall", "f_measure": "F-measure"}


def _f4(x) -> str:
    return "" if x is None or (isinstance(x, float) and math.isnan(x)) else f"{x:.4f}"


def _json_float(x):
    return None if x is None or (isinstance(x, float) and math.isnan(x)) else x


def matrix_to_csv(rows: list[RunResult]) -> str:
    """One line per cell; measure columns follow the reference results layout."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([
        "Classifier", "SMOTE", "Feature selection", "Bad smells metrics", "F-meas.", "TP", "FP",
        "TN", "FN", "Precision", "Recall", "Accuracy", "Kappa", "Selected features", "Status",
    ])
    for r in rows:
        cm, ms = r.confusion, r.measures
        w.writerow([
            _CLASSIFIER_LABEL[r.classifier],
            "YES" if r.smote is Smote.WITH else "NO",
            _FS_LABEL[r.fs],
            "Yes" if r.smells is Smells.PRESENT else "No",
            _f4(ms.f_measure if ms else None),
            cm.tp if cm else "", cm.fp if cm else "", cm.tn if cm else "", cm.fn if cm else "",
            _f4(ms.precision if ms else None), _f4(ms.recall if ms else None),
            _f4(ms.accuracy if ms else None), _f4(ms.kappa if ms else None),
            ";".join(r.selected_features),
            r.status if r.ok else f"{r.status}: {r.error}",
        ])
    return buf.getvalue()


def matrix_to_json(rows: list[RunResult]) -> str:
    doc = []
    for r in rows:
        doc.append({
            "classifier": r.classifier.value,
            "smote": r.smote.value,
            "fs": r.fs.value,
            "smells": r.smells.value,
            "status": r.status,
            "error": r.error,
            "confusion": None if r.confusion is None else
                {"tp": r.confusion.tp, "fp": r.confusion.fp, "tn": r.confusion.tn, "fn": r.confusion.fn},
            "measures": None if r.measures is None else r.measures.as_dict(),
            "selected_features": list(r.selected_features),
            "notes": list(r.notes),
        })
    return json.dumps(doc, indent=2) + "\n"


def best_row(rows: list[RunResult]) -> RunResult | None:
    ok = [r for r in rows if r.ok]
    if not ok:
        return None
    # first row wins ties
    return max(ok, key=lambda r: (r.measures.f_measure, -rows.index(r)))


def study_to_csv(result: StudyResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["Dataset", "FS", "Measure", "Mean", "Std. deviation", "Submodules", "Failed"])
    for c in result.conditions:
        for name in STUDY_MEASURES:
            w.writerow([
                _VARIANT_LABEL[c.variant], "with FS" if c.with_fs else "without FS",
                _MEASURE_LABEL[name], _f4(c.mean[name]), _f4(c.std[name]), c.n_ok, c.n_failed,
            ])
    return buf.getvalue()


def study_to_json(result: StudyResult) -> str:
    doc = []
    for c in result.conditions:
        doc.append({
            "variant": c.variant.value,
            "with_fs": c.with_fs,
            "n_ok": c.n_ok,
            "n_failed": c.n_failed,
            "errors": [{"submodule": i, "error": e} for i, e in c.errors],
            "mean": {k: _json_float(v) for k, v in c.mean.items()},
            "std": {k: _json_float(v) for k, v in c.std.items()},
            "per_submodule": [None if m is None else m.as_dict() for m in c.per_submodule],
        })
    return json.dumps(doc, indent=2) + "\n"
