"""Command-line front end.

Usage: ``defect-smells [--config FILE] COMMAND [--key value ...]``

Every configuration field can be overridden with a dotted flag such as
``--forest.n_trees 50`` or ``--plan.classifiers '["RANDOM_FOREST"]'``.
Exit codes: 0 success, 2 input or parse error, 3 pipeline precondition
failure, 4 every experiment cell (or a whole study condition) failed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

from . import config as C
from .balancing import smote
from .dataset import (
    SourceMix,
    aggregate_warnings_to_files,
    build_datasets,
    format_dataset_csv,
    merge_sources,
    parse_dataset_csv,
    partition_submodules,
)
from .errors import InputError, PipelineError, PreconditionError
from .experiments import (
    FeatureSelection,
    Smells,
    best_row,
    matrix_to_csv,
    matrix_to_json,
    run_experiment_matrix,
    run_submodule_study,
    study_to_csv,
    study_to_json,
)
from .feature_selection import WrapperEvaluator, backward_elimination, simulated_annealing_select
from .ingest import parse_change_log, parse_class_warnings, parse_file_metrics
from .plotting import TOTAL_ISSUES, scatter_svg
from .synth import generate_synthetic_corpus

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_ALL_FAILED = 0, 2, 3, 4

COMMANDS = ("ingest", "build", "balance", "select", "experiment", "study", "plot", "synth")


class CommandError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _out(cfg, *parts) -> str:
    path = os.path.join(cfg["outdir"], *parts)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    return path


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _read(path, what) -> str:
    if not path:
        raise InputError(f"no {what} input configured")
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: cannot read {what} ({exc.strerror})") from None


def _parse(path, what, parser):
    text = _read(path, what)
    try:
        return parser(text)
    except InputError as exc:
        raise type(exc)(f"{path}: {exc}") from None


def _dataset_path(cfg, variant: SourceMix) -> str:
    override = cfg.get("datasets", {}).get(variant.slug)
    return override or os.path.join(cfg["outdir"], "datasets", f"{variant.slug}.csv")


def _load_dataset(cfg, variant: SourceMix):
    path = _dataset_path(cfg, variant)
    return _parse(path, f"{variant.slug} dataset", lambda t: parse_dataset_csv(t, variant, True))


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- commands -----------------------------------------------------------------

def cmd_synth(cfg) -> int:
    corpus = generate_synthetic_corpus(C.synthetic_spec(cfg), cfg["seed"])
    paths = {
        "file_metrics": _out(cfg, "inputs", "file_metrics.csv"),
        "warnings": _out(cfg, "inputs", "warnings.xml"),
        "change_log": _out(cfg, "inputs", "changes.jsonl"),
    }
    _write(paths["file_metrics"], corpus.file_metrics)
    _write(paths["warnings"], corpus.warnings)
    _write(paths["change_log"], corpus.change_log)
    n_defect = sum(corpus.truth.values())
    print(f"synthetic corpus: {len(corpus.truth)} files, {n_defect} defect-prone")
    for k, p in paths.items():
        print(f"  {k}: {p}")
    return EXIT_OK


def cmd_ingest(cfg) -> int:
    inputs = cfg["inputs"]
    summary = {}
    if inputs.get("file_metrics"):
        fm = _parse(inputs["file_metrics"], "file metrics", parse_file_metrics)
        summary["file_metrics"] = {
            "records": len(fm), "metrics": list(fm[0].metric_names) if fm else [],
        }
    if inputs.get("warnings"):
        cw = _parse(inputs["warnings"], "warnings", parse_class_warnings)
        summary["warnings"] = {
            "classes": len(cw), "files": len({r.file_path.casefold() for r in cw}),
            "issues": sum(r.total for r in cw),
        }
    if inputs.get("change_log"):
        ch = _parse(inputs["change_log"], "change log", parse_change_log)
        summary["change_log"] = {"changes": len(ch)}
    if not summary:
        raise InputError("no inputs configured")
    _write(_out(cfg, "reports", "ingest.json"), _dumps(summary))
    for name, info in summary.items():
        print(name + ": " + ", ".join(f"{k}={v if not isinstance(v, list) else len(v)}" for k, v in info.items()))
    return EXIT_OK


def cmd_build(cfg) -> int:
    inputs = cfg["inputs"]
    variants = [SourceMix(v) for v in cfg["variants"]]
    needs_metrics = any(v is not SourceMix.WARNINGS_ONLY for v in variants)
    needs_warnings = any(v is not SourceMix.FILE_METRICS_ONLY for v in variants)
    file_metrics = _parse(inputs.get("file_metrics"), "file metrics", parse_file_metrics) if needs_metrics else []
    class_warnings = _parse(inputs.get("warnings"), "warnings", parse_class_warnings) if needs_warnings else []
    changes = _parse(inputs.get("change_log"), "change log", parse_change_log)
    rule = C.generated_rule(cfg)
    link = C.defect_link(cfg)

    if needs_metrics and needs_warnings:
        # before/after view of the generated-code filter
        before = merge_sources(file_metrics, aggregate_warnings_to_files(class_warnings), SourceMix.COMBINED)
        _write(_out(cfg, "plots", "loc_vs_issues_all.svg"),
               scatter_svg(before, "loc", TOTAL_ISSUES, "All files"))
    built = build_datasets(file_metrics, class_warnings, changes, rule, link, variants)
    if needs_metrics and needs_warnings:
        after = merge_sources(
            [r for r in file_metrics if r not in built.removed],
            aggregate_warnings_to_files(class_warnings), SourceMix.COMBINED,
        )
        _write(_out(cfg, "plots", "loc_vs_issues_filtered.svg"),
               scatter_svg(after, "loc", TOTAL_ISSUES, "Generated code removed"))

    _write(_out(cfg, "reports", "filter_report.json"), _dumps({
        "rule": {"path_globs": list(rule.path_globs), "loc_threshold": rule.loc_threshold},
        "kept": len(file_metrics) - len(built.removed),
        "removed": sorted(r.file_path for r in built.removed),
    }))
    for variant, dataset in built.datasets.items():
        _write(_out(cfg, "datasets", f"{variant.slug}.csv"), format_dataset_csv(dataset))
        clean, defect = dataset.class_counts()
        print(f"{variant.slug}: {len(dataset)} files ({defect} defect-prone, {clean} clean), "
              f"{dataset.n_features} features")
    _write(_out(cfg, "reports", "join_report.json"),
           _dumps({v.value: r for v, r in built.join_reports.items()}))
    return EXIT_OK


def cmd_balance(cfg) -> int:
    variant = SourceMix(cfg.get("variant", "COMBINED"))
    dataset = _load_dataset(cfg, variant)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        balanced = smote(dataset, C.smote_config(cfg))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _write(_out(cfg, "datasets", f"{variant.slug}_smote.csv"), format_dataset_csv(balanced))
    clean, defect = balanced.class_counts()
    print(f"{variant.slug}: {len(dataset)} -> {len(balanced)} records ({defect} defect-prone, {clean} clean)")
    return EXIT_OK


def cmd_select(cfg) -> int:
    variant = SourceMix(cfg.get("variant", "COMBINED"))
    method = FeatureSelection(cfg["fs"]["method"])
    dataset = _load_dataset(cfg, variant)
    evaluator = WrapperEvaluator(
        cfg.get("classifier", "RANDOM_FOREST"), C.forest_config(cfg, cfg["fs"]["forest"]), C.pnn_config(cfg),
        cfg["plan"]["split_fraction"], cfg["seed"], cfg["fs"]["score"],
    )
    if method is FeatureSelection.ANNEALING:
        mask = simulated_annealing_select(dataset, evaluator, C.annealing_schedule(cfg))
    elif method is FeatureSelection.ELIMINATION:
        mask = backward_elimination(dataset, evaluator)
    else:
        raise InputError("fs.method must be ELIMINATION or ANNEALING for select")
    kept = [n for n, k in zip(dataset.feature_names, mask) if k]
    _write(_out(cfg, "reports", f"selection_{variant.slug}_{method.value.lower()}.json"),
           json.dumps(kept) + "\n")
    print(f"{method.value.lower()} kept {len(kept)}/{dataset.n_features}: {', '.join(kept)}")
    return EXIT_OK


def cmd_experiment(cfg) -> int:
    plan = C.experiment_plan(cfg)
    variant_of = {Smells.PRESENT: SourceMix.COMBINED, Smells.ABSENT: SourceMix.FILE_METRICS_ONLY}
    datasets = {s: _load_dataset(cfg, variant_of[s]) for s in plan.smells}
    rows = run_experiment_matrix(datasets, plan, jobs=int(cfg["jobs"]))
    _write(_out(cfg, "reports", "experiment.csv"), matrix_to_csv(rows))
    _write(_out(cfg, "reports", "experiment.json"), matrix_to_json(rows))
    failed = [r for r in rows if not r.ok]
    for r in failed:
        print(f"cell failed: {r.classifier.value}/{r.smote.value}/{r.fs.value}/{r.smells.value}: {r.error}",
              file=sys.stderr)
    best = best_row(rows)
    if best is None:
        raise CommandError("every experiment cell failed", EXIT_ALL_FAILED)
    cm = best.confusion
    print(f"{len(rows) - len(failed)}/{len(rows)} cells ok; best F-measure {best.measures.f_measure:.4f}: "
          f"{best.classifier.value} smote={best.smote.value} fs={best.fs.value} smells={best.smells.value} "
          f"(TP={cm.tp} FP={cm.fp} TN={cm.tn} FN={cm.fn})")
    return EXIT_OK


def cmd_study(cfg) -> int:
    study_cfg = C.study_config(cfg)
    submodules = {}
    for variant in (SourceMix.FILE_METRICS_ONLY, SourceMix.WARNINGS_ONLY, SourceMix.COMBINED):
        dataset = _load_dataset(cfg, variant)
        submodules[variant] = partition_submodules(dataset, study_cfg.n_submodules, cfg["seed"])
    result = run_submodule_study(submodules, study_cfg, jobs=int(cfg["jobs"]))
    _write(_out(cfg, "reports", "study.csv"), study_to_csv(result))
    _write(_out(cfg, "reports", "study.json"), study_to_json(result))
    empty = [c.label for c in result.conditions if c.n_ok == 0]
    for c in result.conditions:
        print(f"{c.label}: accuracy {c.mean['accuracy']:.4f} kappa {c.mean['kappa']:.4f} "
              f"recall {c.mean['recall']:.4f} F {c.mean['f_measure']:.4f} ({c.n_ok} ok, {c.n_failed} failed)")
    if empty:
        raise CommandError(f"no successful submodule for: {', '.join(empty)}", EXIT_ALL_FAILED)
    return EXIT_OK


def cmd_plot(cfg) -> int:
    variant = SourceMix(cfg.get("variant", "COMBINED"))
    path = cfg.get("dataset") or _dataset_path(cfg, variant)
    dataset = _parse(path, "dataset", parse_dataset_csv)
    x, y = cfg.get("x", "loc"), cfg.get("y", TOTAL_ISSUES)
    out = cfg.get("out") or _out(cfg, "plots", f"{x}_vs_{y}.svg")
    svg = scatter_svg(dataset, x, y)
    os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
    _write(out, svg)
    print(f"wrote {out} ({len(dataset)} points)")
    return EXIT_OK


HANDLERS = {
    "ingest": cmd_ingest, "build": cmd_build, "balance": cmd_balance, "select": cmd_select,
    "experiment": cmd_experiment, "study": cmd_study, "plot": cmd_plot, "synth": cmd_synth,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="defect-smells",
        description="Build defect-prediction datasets from metric and warning reports and run experiments.",
        epilog="Any configuration key can be overridden as --section.key VALUE (JSON values accepted).",
    )
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("command", choices=COMMANDS)
    args, rest = parser.parse_known_args(argv)
    try:
        cfg = C.load_config(args.config, C.parse_overrides(rest))
        return HANDLERS[args.command](cfg)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        # bad enum names and similar config values
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
