"""Seeded synthetic corpora in the three input formats.

Labels are a noisy threshold function of a few latent "risk" drivers. Each
informative file metric and warning category is a monotone function of one
driver; the remaining columns are independent noise. The top
``minority_fraction`` of files by total risk are defect-prone, after which a
``noise_rate`` share of them trade labels with randomly chosen clean files
(so the defect count is exact). Every defect-prone file is touched by a
defect-fixing commit; the other commits never use a fix keyword.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidSpec
from .ingest import (
    WARNING_CATEGORIES,
    ChangeRecord,
    ClassWarningRecord,
    FileMetricRecord,
    format_change_log,
    format_class_warnings,
    format_file_metrics,
)

FILE_METRIC_NAMES = (
    "loc",
    "max_complexity",
    "max_block_depth",
    "methods_per_class",
    "percent_comments",
    "avg_block_depth",
    "statements",
    "percent_branch_statements",
    "calls_per_method",
    "avg_statements_per_method",
    "avg_complexity",
    "classes",
    "percent_docs",
    "functions",
    "blank_lines",
)
# informative warning categories are taken from the front of this order
WARNING_ORDER = (
    "Design",
    "Maintainability",
    "Reliability",
    "Usage",
    "Performance",
    "Security",
    "Globalization",
    "Interoperability",
    "Naming",
    "Portability",
    "Mobility",
)

_TOPICS = (
    "report export", "ECU flashing", "calibration view", "station setup",
    "operator login", "config sync", "mobile handshake", "label printing",
    "audit trail", "vehicle lookup", "firmware cache", "shift summary",
)
_PLAIN_VERBS = ("Add", "Refactor", "Update", "Improve", "Clean up", "Rename", "Document", "Tune")


@dataclass(frozen=True)
class SyntheticSpec:
    n_files: int = 2000
    n_informative_features: int = 3
    noise_rate: float = 0.1
    minority_fraction: float = 0.1
    n_file_metrics: int = 15
    n_informative_warnings: int = 4
    generated_fraction: float = 0.0
    n_modules: int = 20

    def validate(self):
        if self.n_files < 2:
            raise InvalidSpec(f"n_files must be at least 2, got {self.n_files}")
        if not 0 < self.minority_fraction < 0.5:
            raise InvalidSpec(f"minority_fraction must lie in (0, 0.5), got {self.minority_fraction}")
        if not 0 <= self.noise_rate < 0.5:
            raise InvalidSpec(f"noise_rate must lie in [0, 0.5), got {self.noise_rate}")
        if round(self.minority_fraction * self.n_files) < 1:
            raise InvalidSpec("these settings yield no defect-prone file")
        if self.n_file_metrics < 1:
            raise InvalidSpec("need at least the loc metric")
        if not 0 <= self.n_informative_features <= self.n_file_metrics:
            raise InvalidSpec("n_informative_features exceeds n_file_metrics")
        if not 0 <= self.n_informative_warnings <= len(WARNING_CATEGORIES):
            raise InvalidSpec("n_informative_warnings exceeds the 11 categories")
        if self.n_informative_features + self.n_informative_warnings == 0:
            raise InvalidSpec("at least one informative feature is required")
        if not 0 <= self.generated_fraction < 1:
            raise InvalidSpec("generated_fraction must lie in [0, 1)")
        if self.n_modules < 1:
            raise InvalidSpec("n_modules must be positive")


class SyntheticCorpus(NamedTuple):
    file_metrics: str
    warnings: str
    change_log: str
    truth: dict  # path -> 1 (defect-prone) / 0, generated files excluded


def _metric_names(n: int) -> list[str]:
    names = list(FILE_METRIC_NAMES[:n])
    names += [f"metric_{i:02d}" for i in range(len(names) + 1, n + 1)]
    return names


def _metric_value(name: str, u: float) -> float:
    """Map a standard-normal driver onto a plausible metric scale (monotone)."""
    if name == "loc":
        return float(min(1000, max(5, round(np.exp(4.9 + 0.7 * u)))))
    if name.startswith("percent"):
        return round(float(np.clip(30 + 12 * u, 0, 100)), 1)
    if name in ("max_complexity", "max_block_depth", "classes", "functions"):
        return float(max(1, round(4 + 1.6 * u)))
    if name.startswith("avg") or name.endswith("per_class") or name.endswith("per_method"):
        return round(float(max(0.0, 3 + 0.9 * u)), 2)
    if name in ("statements", "blank_lines"):
        return float(max(0, round(np.exp(4.2 + 0.6 * u))))
    return round(10 + 3 * u, 3)


def _split_counts(rng, total: int, parts: int) -> np.ndarray:
    if parts == 1:
        return np.array([total])
    return rng.multinomial(total, np.full(parts, 1.0 / parts))


def generate_synthetic_corpus(spec: SyntheticSpec, seed: int) -> SyntheticCorpus:
    spec.validate()
    rng = np.random.default_rng(seed)
    n = spec.n_files
    metric_names = _metric_names(spec.n_file_metrics)
    informative_metrics = metric_names[: spec.n_informative_features]
    informative_warnings = WARNING_ORDER[: spec.n_informative_warnings]
    n_drivers = len(informative_metrics) + len(informative_warnings)

    latent = rng.standard_normal((n, n_drivers))
    risk = latent.sum(axis=1)
    k = int(round(spec.minority_fraction * n))
    order = np.argsort(-risk, kind="stable")
    labels = np.zeros(n, dtype=np.int64)
    labels[order[:k]] = 1
    n_swap = int(round(spec.noise_rate * k))
    if n_swap:
        flip_down = rng.choice(order[:k], size=n_swap, replace=False)
        flip_up = rng.choice(order[k:], size=n_swap, replace=False)
        labels[flip_down] = 0
        labels[flip_up] = 1

    n_modules = min(spec.n_modules, n)
    module_of = rng.permutation(np.arange(n) % n_modules)
    subdirs = ("Core", "UI", "Services", "Data")
    paths = [
        f"Module{module_of[i] + 1:02d}/{subdirs[rng.integers(len(subdirs))]}/Unit{i + 1:05d}.cs"
        for i in range(n)
    ]

    file_records, class_records = [], []
    class_counter = 0
    driver_of = {name: j for j, name in enumerate(informative_metrics)}
    driver_of.update({c: len(informative_metrics) + j for j, c in enumerate(informative_warnings)})
    for i in range(n):
        metrics = []
        for name in metric_names:
            u = latent[i, driver_of[name]] if name in driver_of else rng.standard_normal()
            metrics.append((name, _metric_value(name, u)))
        file_records.append(FileMetricRecord(paths[i], tuple(metrics)))

        totals = {}
        for category in WARNING_CATEGORIES:
            if category in driver_of:
                lam = np.exp(1.0 + 0.8 * latent[i, driver_of[category]])
            else:
                lam = 0.8
            totals[category] = int(rng.poisson(lam))
        n_classes = 1 + int(rng.poisson(0.6))
        split = {c: _split_counts(rng, totals[c], n_classes) for c in WARNING_CATEGORIES}
        for j in range(n_classes):
            class_counter += 1
            counts = {c: int(split[c][j]) for c in WARNING_CATEGORIES}
            class_records.append(ClassWarningRecord(paths[i], f"Class{class_counter}", counts))

    # oversized generated files: several classes each, never defect-linked
    n_generated = int(round(spec.generated_fraction * n))
    generated_paths = []
    for g in range(n_generated):
        module = rng.integers(n_modules) + 1
        path = f"Module{module:02d}/Generated/Reference{g + 1:04d}.cs"
        generated_paths.append(path)
        metrics = []
        for name in metric_names:
            if name == "loc":
                metrics.append((name, float(rng.integers(1001, 8000))))
            else:
                metrics.append((name, _metric_value(name, rng.standard_normal() + 1.5)))
        file_records.append(FileMetricRecord(path, tuple(metrics)))
        for _ in range(int(rng.integers(2, 7))):
            class_counter += 1
            counts = {c: int(rng.poisson(6.0)) for c in WARNING_CATEGORIES}
            class_records.append(ClassWarningRecord(path, f"Class{class_counter}", counts))

    changes = []
    defect_idx = list(np.flatnonzero(labels))
    rng.shuffle(defect_idx)
    pos = 0
    while pos < len(defect_idx):
        size = int(rng.integers(1, 4))
        touched = [paths[i] for i in defect_idx[pos : pos + size]]
        pos += size
        topic = _TOPICS[rng.integers(len(_TOPICS))]
        changes.append(("Fix DE-{}: wrong behaviour in " + topic, touched))
    all_paths = paths + generated_paths
    for _ in range(n // 2):
        size = int(rng.integers(1, 5))
        touched = [all_paths[i] for i in rng.choice(len(all_paths), size=size, replace=False)]
        verb = _PLAIN_VERBS[rng.integers(len(_PLAIN_VERBS))]
        topic = _TOPICS[rng.integers(len(_TOPICS))]
        changes.append((f"{verb} {topic}", touched))
    perm = rng.permutation(len(changes))
    log = []
    for seq, ci in enumerate(perm, start=1):
        message, touched = changes[ci]
        change_id = f"{int(rng.integers(0, 2**48)):012x}"
        log.append(ChangeRecord(change_id, message.format(1000 + seq), tuple(touched)))

    # shuffle file order so nothing downstream can lean on generation order
    file_perm = rng.permutation(len(file_records))
    file_records = [file_records[i] for i in file_perm]
    truth = {p: int(labels[i]) for i, p in enumerate(paths)}
    return SyntheticCorpus(
        format_file_metrics(file_records),
        format_class_warnings(class_records),
        format_change_log(log),
        truth,
    )
