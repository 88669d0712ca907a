"""
From raw reports to labeled datasets
====================================

A synthetic corpus stands in for a real code base: a per-file metrics CSV,
a per-class warning report (XML) and a change log (JSON Lines). We parse
all three, drop generated code, fold class warnings up to files, and label
every file touched by a defect-fixing change.
"""
import os

import numpy as np

from defect_smells import (
    GeneratedCodeRule,
    SourceMix,
    aggregate_warnings_to_files,
    build_datasets,
    filter_generated,
    merge_sources,
    parse_change_log,
    parse_class_warnings,
    parse_file_metrics,
)
from defect_smells.plotting import TOTAL_ISSUES, scatter_svg
from defect_smells.synth import SyntheticSpec, generate_synthetic_corpus

OUT = "demo_output"
os.makedirs(OUT, exist_ok=True)

# 500 ordinary files plus 5% oversized generated ones
corpus = generate_synthetic_corpus(SyntheticSpec(n_files=500, generated_fraction=0.05), seed=1)
print(corpus.file_metrics.splitlines()[0])
print(corpus.warnings[:300])
print(corpus.change_log.splitlines()[0])

metrics = parse_file_metrics(corpus.file_metrics)
classes = parse_class_warnings(corpus.warnings)
changes = parse_change_log(corpus.change_log)
print(f"{len(metrics)} files, {len(classes)} classes, {len(changes)} changes")

# warnings are reported per class; a file's row is the sum over its classes
files = aggregate_warnings_to_files(classes)
print("first file:", files[0].file_path, files[0].total, "issues")

# anything over 1000 lines (or matching a designer/generated glob) is treated as generated
kept, removed = filter_generated(metrics, GeneratedCodeRule(("**/*.designer.cs",), 1000))
print(f"kept {len(kept)}, removed {len(removed)}; largest removed loc = {max(r.loc for r in removed)}")

# the LOC-vs-issues picture before and after the filter
before = merge_sources(metrics, files, SourceMix.COMBINED)
after = merge_sources(kept, files, SourceMix.COMBINED)
for name, table in (("all", before), ("filtered", after)):
    with open(os.path.join(OUT, f"loc_vs_issues_{name}.svg"), "w") as fh:
        fh.write(scatter_svg(table, "loc", TOTAL_ISSUES, name))

# build_datasets does all of the above for the three metric sets at once
built = build_datasets(metrics, classes, changes)
for variant, ds in built.datasets.items():
    clean, defect = ds.class_counts()
    print(f"{variant.value:18s} {len(ds)} rows x {ds.n_features} features, {defect} defect-prone")

# labels agree with the generator's ground truth
combined = built.datasets[SourceMix.COMBINED]
truth = np.array([corpus.truth[p] for p in combined.paths])
print("labels match ground truth:", bool(np.all(truth == combined.y)))
