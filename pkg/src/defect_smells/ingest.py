"""Readers and writers for the three pipeline inputs.

* per-file metrics: CSV with mandatory ``file_path`` and ``loc`` columns,
* per-class warning counts: a small XML document
  (``<Targets><Target Name=..><Class Name=..><Issue Category=.. Count=../>``),
* change log: JSON Lines with ``commit``, ``message`` and ``files`` fields.

Every parser takes the document text and is free of side effects.
"""
from __future__ import annotations

import csv
import io
import json
import math
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .errors import (
    DuplicateFile,
    InputError,
    MalformedDocument,
    MalformedLine,
    MissingColumn,
    NegativeCount,
    NonNumericValue,
    RaggedRow,
    UnknownCategory,
)

WARNING_CATEGORIES = (
    "Design",
    "Globalization",
    "Interoperability",
    "Maintainability",
    "Mobility",
    "Naming",
    "Performance",
    "Portability",
    "Reliability",
    "Security",
    "Usage",
)

_COUNT_RE = re.compile(r"[0-9]+")
_NEGATIVE_RE = re.compile(r"-[0-9]+")


def normalize_path(path: str) -> str:
    """Forward slashes, no leading ``./`` or ``/``, no empty or ``.`` segments."""
    parts = [p for p in path.strip().replace("\\", "/").split("/") if p not in ("", ".")]
    return "/".join(parts)


def path_key(path: str) -> str:
    """Comparison key: paths are matched case-insensitively after normalization."""
    return normalize_path(path).casefold()


@dataclass(frozen=True)
class FileMetricRecord:
    file_path: str
    metrics: tuple[tuple[str, float], ...]

    @property
    def loc(self) -> int:
        return int(dict(self.metrics)["loc"])

    @property
    def metric_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.metrics)

    def values(self) -> list[float]:
        return [value for _, value in self.metrics]


@dataclass(frozen=True)
class ClassWarningRecord:
    file_path: str
    class_name: str
    counts: dict = field(default_factory=dict)

    def __post_init__(self):
        # always carry the full category set, absent ones at zero
        full = {cat: int(self.counts.get(cat, 0)) for cat in WARNING_CATEGORIES}
        object.__setattr__(self, "counts", full)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class ChangeRecord:
    change_id: str
    message: str
    files: tuple[str, ...] = ()


# -- file metrics -------------------------------------------------------------

def _parse_real(cell: str, column: str, line: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise NonNumericValue(f"column {column!r}: {cell!r} is not a number", line) from None
    if not math.isfinite(value):
        raise NonNumericValue(f"column {column!r}: {cell!r} is not finite", line)
    return value


def parse_file_metrics(text: str) -> list[FileMetricRecord]:
    """Parse the per-file metric CSV.

    Metric order follows the header; every column except ``file_path`` is a
    metric. Blank lines are ignored. Errors carry the 1-based line number.
    """
    rows = csv.reader(io.StringIO(text))
    header = None
    records = []
    seen = {}
    for line_no, row in enumerate(rows, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if header is None:
            header = [cell.strip() for cell in row]
            for required in ("file_path", "loc"):
                if required not in header:
                    raise MissingColumn(f"header lacks {required!r} column", line_no)
            path_col = header.index("file_path")
            metric_cols = [i for i in range(len(header)) if i != path_col]
            continue
        if len(row) != len(header):
            raise RaggedRow(f"expected {len(header)} fields, got {len(row)}", line_no)
        path = normalize_path(row[path_col])
        if not path:
            raise InputError("empty file_path", line_no)
        key = path.casefold()
        if key in seen:
            raise DuplicateFile(f"{path!r} already listed on line {seen[key]}", line_no)
        seen[key] = line_no
        metrics = []
        for i in metric_cols:
            value = _parse_real(row[i].strip(), header[i], line_no)
            if header[i] == "loc":
                if value < 0 or value != int(value):
                    raise InputError(f"loc must be a nonnegative integer, got {row[i]!r}", line_no)
                value = int(value)
            metrics.append((header[i], value))
        records.append(FileMetricRecord(path, tuple(metrics)))
    if header is None:
        raise MissingColumn("no header row", 1)
    return records


def _format_number(value) -> str:
    if isinstance(value, int) or (isinstance(value, float) and value.is_integer()):
        return str(int(value))
    return repr(float(value))


def format_file_metrics(records: list[FileMetricRecord]) -> str:
    if not records:
        return "file_path,loc\n"
    names = records[0].metric_names
    lines = [",".join(("file_path",) + names)]
    for rec in records:
        lines.append(",".join([rec.file_path] + [_format_number(v) for v in rec.values()]))
    return "\n".join(lines) + "\n"


# -- class warnings -----------------------------------------------------------

def _parse_count(raw, where: str) -> int:
    raw = (raw or "").strip()
    if _COUNT_RE.fullmatch(raw):
        return int(raw)
    if _NEGATIVE_RE.fullmatch(raw):
        raise NegativeCount(f"{where}: negative count {raw}")
    raise MalformedDocument(f"{where}: count {raw!r} is not a base-10 integer")


def parse_class_warnings(text: str) -> list[ClassWarningRecord]:
    """Parse the warning XML into one record per ``Class`` element.

    Repeated ``Issue`` elements of one category are summed, so a report
    listing individual rules collapses into category counts.
    """
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        line = exc.position[0] if exc.position else None
        raise MalformedDocument(f"XML parse error: {exc}", line) from None
    if root.tag != "Targets":
        raise MalformedDocument(f"root element is <{root.tag}>, expected <Targets>")
    records = []
    seen = set()
    for target in root:
        if target.tag != "Target":
            raise MalformedDocument(f"unexpected <{target.tag}> under <Targets>")
        path = normalize_path(target.get("Name", ""))
        if not path:
            raise MalformedDocument("<Target> without Name")
        for cls in target:
            if cls.tag != "Class":
                raise MalformedDocument(f"unexpected <{cls.tag}> under <Target Name={path!r}>")
            name = (cls.get("Name") or "").strip()
            if not name:
                raise MalformedDocument(f"<Class> without Name in {path!r}")
            key = (path.casefold(), name)
            if key in seen:
                raise MalformedDocument(f"class {name!r} listed twice in {path!r}")
            seen.add(key)
            counts = dict.fromkeys(WARNING_CATEGORIES, 0)
            for issue in cls:
                if issue.tag != "Issue":
                    raise MalformedDocument(f"unexpected <{issue.tag}> in class {name!r}")
                category = issue.get("Category")
                if category not in counts:
                    raise UnknownCategory(f"{path}/{name}: unknown category {category!r}")
                counts[category] += _parse_count(issue.get("Count"), f"{path}/{name}/{category}")
            records.append(ClassWarningRecord(path, name, counts))
    return records


def format_class_warnings(records: list[ClassWarningRecord]) -> str:
    root = ET.Element("Targets")
    target = None
    for rec in records:
        # consecutive classes of one file share a Target; record order is kept
        if target is None or target.get("Name") != rec.file_path:
            target = ET.SubElement(root, "Target", Name=rec.file_path)
        cls = ET.SubElement(target, "Class", Name=rec.class_name)
        for category in WARNING_CATEGORIES:
            if rec.counts[category]:
                ET.SubElement(cls, "Issue", Category=category, Count=str(rec.counts[category]))
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


# -- change log ---------------------------------------------------------------

def parse_change_log(text: str) -> list[ChangeRecord]:
    """One change per JSON line; blank lines are skipped but still counted."""
    changes = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedLine(f"invalid JSON ({exc.msg})", line_no) from None
        if not isinstance(obj, dict):
            raise MalformedLine("expected a JSON object", line_no)
        commit, message, files = obj.get("commit"), obj.get("message"), obj.get("files")
        if not isinstance(commit, str) or not commit:
            raise MalformedLine("'commit' must be a non-empty string", line_no)
        if not isinstance(message, str):
            raise MalformedLine("'message' must be a string", line_no)
        if not isinstance(files, list) or not all(isinstance(f, str) for f in files):
            raise MalformedLine("'files' must be an array of strings", line_no)
        changes.append(ChangeRecord(commit, message, tuple(normalize_path(f) for f in files)))
    return changes


def format_change_log(changes: list[ChangeRecord]) -> str:
    return "".join(
        json.dumps({"commit": c.change_id, "message": c.message, "files": list(c.files)}) + "\n"
        for c in changes
    )
