"""Defect prediction from file metrics and code-smell warnings.

The pipeline reads per-file metrics, per-class warning counts and a change
log, joins them at file grain, labels files touched by defect fixes, and
evaluates naive Bayes, PNN and random forest classifiers with optional SMOTE
balancing and wrapper feature selection.
"""
from .balancing import SmoteConfig, smote
from .classifiers import (
    ClassifierKind,
    ForestConfig,
    PnnConfig,
    TrainedModel,
    predict,
    predict_many,
    train,
    train_naive_bayes,
    train_pnn,
    train_random_forest,
)
from .dataset import (
    DefectLinkConfig,
    GeneratedCodeRule,
    LabeledDataset,
    SourceMix,
    aggregate_warnings_to_files,
    build_datasets,
    filter_generated,
    label_defect_prone,
    merge_sources,
    partition_submodules,
)
from .evaluation import ConfusionMatrix, MeasureSet, confusion, measures, stratified_split
from .experiments import ExperimentPlan, StudyConfig, run_experiment_matrix, run_submodule_study
from .feature_selection import (
    AnnealingSchedule,
    WrapperEvaluator,
    backward_elimination,
    simulated_annealing_select,
    wrapper_score,
)
from .ingest import (
    WARNING_CATEGORIES,
    ChangeRecord,
    ClassWarningRecord,
    FileMetricRecord,
    parse_change_log,
    parse_class_warnings,
    parse_file_metrics,
)
from .synth import SyntheticSpec, generate_synthetic_corpus

__version__ = "0.1.0"
