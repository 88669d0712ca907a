"""Build labeled, file-grain datasets from the ingested records."""
from __future__ import annotations

import csv
import enum
import io
import math
import re
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import EmptyJoin, InputError, InvalidGlob, TooManyPartitions
from .ingest import (
    WARNING_CATEGORIES,
    ChangeRecord,
    ClassWarningRecord,
    FileMetricRecord,
    normalize_path,
    path_key,
)

DEFECT_PRONE = 1
CLEAN = 0

DEFAULT_DEFECT_PATTERN = r"(?i)\b(fix|fixes|fixed|defect|bug)\b"
DEFAULT_PATTERN_EXAMPLES = (
    "fix DE-101 crash",
    "Fixes null reference in report export",
    "Defect 4711: wrong rounding",
    "bug in ECU calibration",
)
DEFAULT_GENERATED_GLOBS = ("**/*.designer.cs", "**/*.g.cs", "**/*.g.i.cs")


class SourceMix(str, enum.Enum):
    FILE_METRICS_ONLY = "FILE_METRICS_ONLY"
    WARNINGS_ONLY = "WARNINGS_ONLY"
    COMBINED = "COMBINED"

    @property
    def slug(self) -> str:
        return self.value.lower()


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Feature matrix plus binary labels, one row per source file.

    ``y`` holds 1 for defect-prone files and 0 for clean ones.
    """

    feature_names: tuple
    paths: tuple
    X: np.ndarray
    y: np.ndarray
    source_mix: SourceMix = SourceMix.COMBINED
    filtered_generated: bool = False

    def __post_init__(self):
        X = np.asarray(self.X, dtype=np.float64).reshape(len(self.paths), len(self.feature_names))
        y = np.asarray(self.y, dtype=np.int64).reshape(len(self.paths))
        if not np.all(np.isfinite(X)):
            raise InputError("feature values must be finite")
        if not np.isin(y, (CLEAN, DEFECT_PRONE)).all():
            raise InputError("labels must be 0 or 1")
        if len({path_key(p) for p in self.paths}) != len(self.paths):
            raise InputError("file paths must be unique")
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "paths", tuple(self.paths))
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "source_mix", SourceMix(self.source_mix))

    def __len__(self):
        return len(self.paths)

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    def class_counts(self) -> tuple[int, int]:
        """(clean, defect_prone) record counts."""
        n_defect = int(self.y.sum())
        return len(self) - n_defect, n_defect

    def subset(self, indices) -> "LabeledDataset":
        idx = np.asarray(indices, dtype=np.int64)
        return LabeledDataset(
            self.feature_names,
            tuple(self.paths[i] for i in idx),
            self.X[idx],
            self.y[idx],
            self.source_mix,
            self.filtered_generated,
        )

    def project(self, mask) -> "LabeledDataset":
        """Keep only the feature columns whose mask bit is set."""
        mask = np.asarray(mask, dtype=bool)
        names = tuple(n for n, keep in zip(self.feature_names, mask) if keep)
        return LabeledDataset(
            names, self.paths, self.X[:, mask], self.y, self.source_mix, self.filtered_generated
        )

    def sorted_by_path(self) -> "LabeledDataset":
        order = sorted(range(len(self)), key=lambda i: (path_key(self.paths[i]), self.paths[i]))
        return self.subset(order)

    def same_as(self, other: "LabeledDataset") -> bool:
        return (
            self.feature_names == other.feature_names
            and self.paths == other.paths
            and np.array_equal(self.X, other.X)
            and np.array_equal(self.y, other.y)
        )


class FileWarnings(NamedTuple):
    file_path: str
    counts: dict

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True, eq=False)
class MergedTable:
    """Unlabeled join result together with its join report."""

    feature_names: tuple
    paths: tuple
    X: np.ndarray
    source_mix: SourceMix
    filtered_generated: bool = False
    report: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.paths)


# -- warning aggregation ------------------------------------------------------

def aggregate_warnings_to_files(class_records: Sequence[ClassWarningRecord]) -> list[FileWarnings]:
    """Sum per-class category counts into one row per file, sorted by path."""
    totals = {}
    spelling = {}
    for rec in class_records:
        key = path_key(rec.file_path)
        spelling.setdefault(key, normalize_path(rec.file_path))
        acc = totals.setdefault(key, dict.fromkeys(WARNING_CATEGORIES, 0))
        for category in WARNING_CATEGORIES:
            acc[category] += rec.counts[category]
    return [FileWarnings(spelling[k], totals[k]) for k in sorted(totals)]


# -- generated code -----------------------------------------------------------

def glob_to_regex(pattern: str) -> re.Pattern:
    """Translate a path glob into an anchored, case-insensitive regex.

    ``**/`` matches zero or more directories, ``*`` and ``?`` never cross a
    ``/``, ``[...]`` is a character class.
    """
    if not pattern or not pattern.strip():
        raise InvalidGlob("empty glob pattern")
    out = []
    i, n = 0, len(pattern)
    while i < n:
        ch = pattern[i]
        if pattern.startswith("**/", i):
            out.append("(?:.*/)?")
            i += 3
        elif pattern.startswith("**", i):
            out.append(".*")
            i += 2
        elif ch == "*":
            out.append("[^/]*")
            i += 1
        elif ch == "?":
            out.append("[^/]")
            i += 1
        elif ch == "[":
            end = pattern.find("]", i + 2 if pattern[i + 1 : i + 2] in ("!", "]") else i + 1)
            if end < 0:
                raise InvalidGlob(f"unterminated character class in {pattern!r}")
            body = pattern[i + 1 : end]
            if body.startswith("!"):
                body = "^" + body[1:]
            out.append("[" + body.replace("\\", "\\\\") + "]")
            i = end + 1
        else:
            out.append(re.escape(ch))
            i += 1
    try:
        return re.compile("".join(out) + r"\Z", re.IGNORECASE)
    except re.error as exc:
        raise InvalidGlob(f"bad glob {pattern!r}: {exc}") from None


@dataclass(frozen=True)
class GeneratedCodeRule:
    """Files matching any glob, or longer than ``loc_threshold`` lines, are generated."""

    path_globs: tuple = ()
    loc_threshold: int | None = 1000

    def __post_init__(self):
        object.__setattr__(self, "path_globs", tuple(self.path_globs))
        if not self.path_globs and self.loc_threshold is None:
            raise InputError("generated-code rule needs globs or a LOC threshold")
        if self.loc_threshold is not None and (
            int(self.loc_threshold) != self.loc_threshold or self.loc_threshold <= 0
        ):
            raise InputError(f"loc_threshold must be a positive integer, got {self.loc_threshold!r}")
        for g in self.path_globs:
            glob_to_regex(g)

    def matches(self, record: FileMetricRecord, _compiled=None) -> bool:
        compiled = _compiled if _compiled is not None else [glob_to_regex(g) for g in self.path_globs]
        if any(rx.match(record.file_path) for rx in compiled):
            return True
        return self.loc_threshold is not None and record.loc > self.loc_threshold


def filter_generated(file_metrics: Sequence[FileMetricRecord], rule: GeneratedCodeRule):
    """Split records into ``(kept, removed)``, preserving input order in both."""
    compiled = [glob_to_regex(g) for g in rule.path_globs]
    kept, removed = [], []
    for rec in file_metrics:
        (removed if rule.matches(rec, compiled) else kept).append(rec)
    return kept, removed


# -- joining ------------------------------------------------------------------

def merge_sources(
    file_metrics: Sequence[FileMetricRecord],
    file_warnings: Sequence[FileWarnings],
    mix: SourceMix | str,
    filtered_generated: bool = False,
) -> MergedTable:
    """Join the two sources on file path (case-insensitive inner join).

    Rows come out sorted by path. The report always lists the paths present
    in only one of the sources, whatever ``mix`` is requested.
    """
    mix = SourceMix(mix)
    metric_names = file_metrics[0].metric_names if file_metrics else ("loc",)
    for rec in file_metrics:
        if rec.metric_names != metric_names:
            raise InputError(f"{rec.file_path}: metric columns differ from the first record")
    fm = {path_key(r.file_path): r for r in file_metrics}
    fw = {path_key(w.file_path): w for w in file_warnings}
    common = sorted(fm.keys() & fw.keys())
    report = {
        "source_mix": mix.value,
        "file_metric_records": len(fm),
        "warning_records": len(fw),
        "matched": len(common),
        "unmatched_file_metrics": sorted(fm[k].file_path for k in fm.keys() - fw.keys()),
        "unmatched_warnings": sorted(fw[k].file_path for k in fw.keys() - fm.keys()),
    }

    if mix is SourceMix.COMBINED:
        if not common:
            raise EmptyJoin("no file path is present in both metric sources")
        names = metric_names + WARNING_CATEGORIES
        if len(set(names)) != len(names):
            raise InputError("file metric names collide with warning category names")
        paths = [fm[k].file_path for k in common]
        rows = [fm[k].values() + [fw[k].counts[c] for c in WARNING_CATEGORIES] for k in common]
    elif mix is SourceMix.FILE_METRICS_ONLY:
        names = metric_names
        keys = sorted(fm)
        paths = [fm[k].file_path for k in keys]
        rows = [fm[k].values() for k in keys]
    else:
        names = WARNING_CATEGORIES
        keys = sorted(fw)
        paths = [fw[k].file_path for k in keys]
        rows = [[fw[k].counts[c] for c in WARNING_CATEGORIES] for k in keys]

    X = np.asarray(rows, dtype=np.float64).reshape(len(paths), len(names))
    return MergedTable(tuple(names), tuple(paths), X, mix, filtered_generated, report)


# -- labeling -----------------------------------------------------------------

@dataclass(frozen=True)
class DefectLinkConfig:
    """Which change messages count as defect fixes.

    ``examples`` are messages the pattern is required to match; the default
    pattern ships with its own.
    """

    defect_pattern: str = DEFAULT_DEFECT_PATTERN
    examples: tuple = None

    def __post_init__(self):
        try:
            rx = re.compile(self.defect_pattern)
        except re.error as exc:
            raise InputError(f"defect pattern does not compile: {exc}") from None
        examples = self.examples
        if examples is None:
            examples = DEFAULT_PATTERN_EXAMPLES if self.defect_pattern == DEFAULT_DEFECT_PATTERN else ()
        object.__setattr__(self, "examples", tuple(examples))
        for msg in self.examples:
            if not rx.search(msg):
                raise InputError(f"defect pattern does not match its example {msg!r}")

    @property
    def regex(self) -> re.Pattern:
        return re.compile(self.defect_pattern)


def defect_fixing_changes(changes: Sequence[ChangeRecord], cfg: DefectLinkConfig) -> list[ChangeRecord]:
    rx = cfg.regex
    return [c for c in changes if rx.search(c.message)]


def label_defect_prone(
    merged: MergedTable, changes: Sequence[ChangeRecord], cfg: DefectLinkConfig | None = None
) -> LabeledDataset:
    """A file is defect-prone iff a defect-fixing change touched it."""
    cfg = cfg or DefectLinkConfig()
    touched = {path_key(f) for c in defect_fixing_changes(changes, cfg) for f in c.files}
    y = np.array([DEFECT_PRONE if path_key(p) in touched else CLEAN for p in merged.paths], dtype=np.int64)
    return LabeledDataset(
        merged.feature_names, merged.paths, merged.X, y, merged.source_mix, merged.filtered_generated
    )


class BuildResult(NamedTuple):
    datasets: dict  # SourceMix -> LabeledDataset
    removed: list  # FileMetricRecord dropped as generated code
    join_reports: dict  # SourceMix -> merge report


def build_datasets(
    file_metrics: Sequence[FileMetricRecord],
    class_warnings: Sequence[ClassWarningRecord],
    changes: Sequence[ChangeRecord],
    rule: GeneratedCodeRule | None = None,
    link: DefectLinkConfig | None = None,
    variants=tuple(SourceMix),
) -> BuildResult:
    """Filter generated files, aggregate warnings, join and label each variant.

    Files removed as generated code are dropped from the warning side too,
    so WARNINGS_ONLY rows never include them.
    """
    rule = rule or GeneratedCodeRule(DEFAULT_GENERATED_GLOBS)
    kept, removed = filter_generated(file_metrics, rule)
    removed_keys = {path_key(r.file_path) for r in removed}
    file_warnings = [
        w for w in aggregate_warnings_to_files(class_warnings) if path_key(w.file_path) not in removed_keys
    ]
    datasets, reports = {}, {}
    for variant in map(SourceMix, variants):
        merged = merge_sources(kept, file_warnings, variant, filtered_generated=True)
        datasets[variant] = label_defect_prone(merged, changes, link)
        reports[variant] = merged.report
    return BuildResult(datasets, removed, reports)


# -- submodules ---------------------------------------------------------------

def _top_dir(path: str) -> str:
    key = path_key(path)
    return key.split("/", 1)[0] if "/" in key else ""


def partition_submodules(dataset: LabeledDataset, n: int, seed: int) -> list[LabeledDataset]:
    """Cut the dataset into ``n`` near-equal parts that follow directory structure.

    Top-level directories are laid out in a seeded order and records are
    concatenated directory by directory (by path within a directory). The
    sequence is then cut into consecutive chunks whose sizes differ by at most
    one, so a directory only spills into a neighbouring part when balance
    requires it. Assignment depends on paths only, never on labels, which
    keeps the parts aligned across dataset variants with the same files.
    """
    if n < 1:
        raise TooManyPartitions(f"number of partitions must be positive, got {n}")
    if n > len(dataset):
        raise TooManyPartitions(f"cannot split {len(dataset)} records into {n} partitions")
    groups = {}
    for i, p in enumerate(dataset.paths):
        groups.setdefault(_top_dir(p), []).append(i)
    dirs = sorted(groups)
    rng = np.random.default_rng(seed)
    dirs = [dirs[i] for i in rng.permutation(len(dirs))]
    order = []
    for d in dirs:
        order.extend(sorted(groups[d], key=lambda i: path_key(dataset.paths[i])))
    base, extra = divmod(len(order), n)
    parts, start = [], 0
    for k in range(n):
        size = base + (1 if k < extra else 0)
        parts.append(dataset.subset(order[start : start + size]).sorted_by_path())
        start += size
    return parts


# -- CSV ----------------------------------------------------------------------

def _fmt(value: float) -> str:
    return str(int(value)) if float(value).is_integer() and abs(value) < 2**53 else repr(float(value))


def format_dataset_csv(dataset: LabeledDataset) -> str:
    """``file_path,<features...>,label`` with label 1 = defect-prone."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("file_path",) + dataset.feature_names + ("label",))
    for path, row, label in zip(dataset.paths, dataset.X, dataset.y):
        writer.writerow([path] + [_fmt(v) for v in row] + [int(label)])
    return buf.getvalue()


def _infer_mix(names: Sequence[str]) -> SourceMix:
    cats = set(WARNING_CATEGORIES)
    if set(names) == cats:
        return SourceMix.WARNINGS_ONLY
    if cats <= set(names):
        return SourceMix.COMBINED
    return SourceMix.FILE_METRICS_ONLY


def parse_dataset_csv(text: str, source_mix: SourceMix | str | None = None,
                      filtered_generated: bool = False) -> LabeledDataset:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InputError("empty dataset file", 1) from None
    if len(header) < 2 or header[0] != "file_path" or header[-1] != "label":
        raise InputError("dataset header must be file_path,<features...>,label", 1)
    names = tuple(header[1:-1])
    paths, rows, labels = [], [], []
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise InputError(f"expected {len(header)} fields, got {len(row)}", line_no)
        try:
            values = [float(v) for v in row[1:-1]]
        except ValueError:
            raise InputError("non-numeric feature value", line_no) from None
        if not all(math.isfinite(v) for v in values):
            raise InputError("non-finite feature value", line_no)
        if row[-1] not in ("0", "1"):
            raise InputError(f"label must be 0 or 1, got {row[-1]!r}", line_no)
        paths.append(row[0])
        rows.append(values)
        labels.append(int(row[-1]))
    mix = SourceMix(source_mix) if source_mix is not None else _infer_mix(names)
    X = np.asarray(rows, dtype=np.float64).reshape(len(paths), len(names))
    return LabeledDataset(names, tuple(paths), X, np.asarray(labels, dtype=np.int64), mix, filtered_generated)
