import numpy as np
import pytest

from conftest import make_dataset
from defect_smells.dataset import SourceMix, merge_sources
from defect_smells.errors import UnknownMetric
from defect_smells.ingest import WARNING_CATEGORIES, FileMetricRecord
from defect_smells.dataset import FileWarnings
from defect_smells.plotting import TOTAL_ISSUES, count_markers, metric_column, scatter_svg


def test_one_marker_per_record():
    ds = make_dataset(np.arange(10.0).reshape(5, 2), [0, 1, 0, 1, 0], names=("loc", "Design"))
    svg = scatter_svg(ds, "loc", "Design")
    assert svg.startswith("<?xml")
    assert count_markers(svg) == 5
    assert "xlink:href=\"http" not in svg


def test_unknown_metric():
    ds = make_dataset(np.zeros((3, 1)), [0, 1, 0], names=("loc",))
    with pytest.raises(UnknownMetric):
        scatter_svg(ds, "loc", "cyclomatic")


def test_total_issues_column():
    metrics = [FileMetricRecord("a.cs", (("loc", 10),)), FileMetricRecord("b.cs", (("loc", 2000),))]
    counts = dict.fromkeys(WARNING_CATEGORIES, 1)
    warnings = [FileWarnings("a.cs", counts), FileWarnings("b.cs", counts)]
    table = merge_sources(metrics, warnings, SourceMix.COMBINED)
    assert metric_column(table, TOTAL_ISSUES).tolist() == [11, 11]
    assert count_markers(scatter_svg(table, "loc", TOTAL_ISSUES)) == 2


def test_svg_is_deterministic():
    ds = make_dataset(np.random.default_rng(0).normal(size=(30, 2)), [0, 1] * 15)
    assert scatter_svg(ds, "f0", "f1", "t") == scatter_svg(ds, "f0", "f1", "t")
