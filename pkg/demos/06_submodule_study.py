"""
Per-submodule study
===================

The data set is cut into submodules along top-level directories. Each
submodule gets SMOTE, a stratified split and a random forest, once with
all features and once after backward elimination; accuracy, kappa,
recall and F-measure are then summarized as mean and sample standard
deviation per metric set.
"""
from defect_smells import (
    ForestConfig,
    StudyConfig,
    build_datasets,
    parse_change_log,
    parse_class_warnings,
    parse_file_metrics,
    partition_submodules,
    run_submodule_study,
)
from defect_smells.experiments import study_to_csv
from defect_smells.synth import SyntheticSpec, generate_synthetic_corpus

corpus = generate_synthetic_corpus(SyntheticSpec(n_files=800, minority_fraction=0.15), seed=9)
built = build_datasets(parse_file_metrics(corpus.file_metrics), parse_class_warnings(corpus.warnings),
                       parse_change_log(corpus.change_log))

submodules = {variant: partition_submodules(ds, 5, seed=9) for variant, ds in built.datasets.items()}
print("submodule sizes:", [len(s) for s in submodules[next(iter(submodules))]])

config = StudyConfig(seed=9, n_submodules=5, forest=ForestConfig(n_trees=30), fs_forest=ForestConfig(n_trees=8))
result = run_submodule_study(submodules, config)
print(study_to_csv(result))
