"""Metric-vs-metric scatter plots as standalone SVG."""
from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .errors import UnknownMetric  # noqa: E402
from .ingest import WARNING_CATEGORIES  # noqa: E402

TOTAL_ISSUES = "total_issues"
MARKER_GROUP_ID = "records"


def metric_column(table, name: str) -> np.ndarray:
    """Column ``name`` of a dataset; ``total_issues`` sums the warning categories."""
    names = list(table.feature_names)
    if name in names:
        return table.X[:, names.index(name)]
    if name == TOTAL_ISSUES and all(c in names for c in WARNING_CATEGORIES):
        return table.X[:, [names.index(c) for c in WARNING_CATEGORIES]].sum(axis=1)
    raise UnknownMetric(f"unknown metric {name!r}; available: {', '.join(names)}")


def scatter_svg(table, x_metric: str, y_metric: str, title: str | None = None) -> str:
    """Render one marker per record. Markers sit in the ``<g id="records">`` group.

    Labeled datasets colour defect-prone records differently.
    """
    x = metric_column(table, x_metric)
    y = metric_column(table, y_metric)
    labels = getattr(table, "y", None)
    colors = "#1f77b4" if labels is None else np.where(labels == 1, "#d62728", "#1f77b4")
    with plt.rc_context({"svg.hashsalt": "defect-smells", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.8))
        ax.scatter(x, y, s=10, c=colors, alpha=0.7, linewidths=0, gid=MARKER_GROUP_ID)
        ax.set_xlabel(x_metric)
        ax.set_ylabel(y_metric)
        if title:
            ax.set_title(title)
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()


def count_markers(svg: str) -> int:
    """Number of record markers in an SVG made by :func:`scatter_svg`."""
    start = svg.find(f'id="{MARKER_GROUP_ID}"')
    if start < 0:
        return 0
    # the marker group ends at the first closing tag at its own indentation
    line_start = svg.rfind("\n", 0, start) + 1
    indent = svg[line_start : svg.index("<", line_start)]
    end = svg.find("\n" + indent + "</g>", start)
    return svg[start:end].count("<use ")
