"""
The classifier x SMOTE x selection x metric-set matrix
======================================================

36 cells: three classifiers, with and without SMOTE, three selection
options, and file metrics with or without warning counts. The run below
uses a small corpus and light settings so it finishes in well under a
minute; the defaults (100 trees, 200 annealing steps) are heavier.
"""
from defect_smells import (
    AnnealingSchedule,
    ExperimentPlan,
    ForestConfig,
    SourceMix,
    build_datasets,
    parse_change_log,
    parse_class_warnings,
    parse_file_metrics,
    run_experiment_matrix,
)
from defect_smells.experiments import Smells, best_row, matrix_to_csv
from defect_smells.synth import SyntheticSpec, generate_synthetic_corpus

corpus = generate_synthetic_corpus(SyntheticSpec(n_files=600), seed=5)
built = build_datasets(parse_file_metrics(corpus.file_metrics), parse_class_warnings(corpus.warnings),
                       parse_change_log(corpus.change_log))
datasets = {Smells.PRESENT: built.datasets[SourceMix.COMBINED],
            Smells.ABSENT: built.datasets[SourceMix.FILE_METRICS_ONLY]}

plan = ExperimentPlan(seed=5, forest=ForestConfig(n_trees=30), fs_forest=ForestConfig(n_trees=8),
                      annealing=AnnealingSchedule(iterations=40))
rows = run_experiment_matrix(datasets, plan)
print(matrix_to_csv(rows))

best = best_row(rows)
print("best:", best.classifier.value, best.smote.value, best.fs.value, best.smells.value,
      f"F = {best.measures.f_measure:.4f}")
