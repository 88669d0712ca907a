import numpy as np
import pytest

from defect_smells.dataset import LabeledDataset, SourceMix

ACCEPTANCE_LINES = []


def make_dataset(X, y, names=None, paths=None, mix=SourceMix.COMBINED):
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    names = names or tuple(f"f{j}" for j in range(X.shape[1]))
    paths = paths or tuple(f"mod/file{i:04d}.cs" for i in range(len(X)))
    return LabeledDataset(tuple(names), tuple(paths), X, np.asarray(y), mix)


@pytest.fixture
def separable():
    """Feature 0 equals the label, features 1-4 are noise."""
    rng = np.random.default_rng(11)
    y = np.array([1] * 30 + [0] * 50)
    X = np.column_stack([y, rng.normal(size=(80, 4))])
    return make_dataset(X, y)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def small_corpus():
    """Labeled variants built from a 300-file synthetic corpus."""
    from defect_smells.dataset import build_datasets
    from defect_smells.ingest import parse_change_log, parse_class_warnings, parse_file_metrics
    from defect_smells.synth import SyntheticSpec, generate_synthetic_corpus

    corpus = generate_synthetic_corpus(SyntheticSpec(n_files=300, minority_fraction=0.2), seed=21)
    return build_datasets(
        parse_file_metrics(corpus.file_metrics),
        parse_class_warnings(corpus.warnings),
        parse_change_log(corpus.change_log),
    ).datasets
