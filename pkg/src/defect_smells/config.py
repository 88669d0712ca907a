"""Pipeline configuration: one JSON document, overridable key by key."""
from __future__ import annotations

import copy
import json

from .balancing import SmoteConfig
from .classifiers import ForestConfig, PnnConfig
from .dataset import DEFAULT_DEFECT_PATTERN, DEFAULT_GENERATED_GLOBS, DefectLinkConfig, GeneratedCodeRule
from .errors import InputError
from .experiments import ExperimentPlan, StudyConfig
from .feature_selection import AnnealingSchedule
from .synth import SyntheticSpec

DEFAULTS = {
    "seed": None,
    "outdir": "out",
    "jobs": 1,
    "inputs": {"file_metrics": None, "warnings": None, "change_log": None},
    "variants": ["FILE_METRICS_ONLY", "WARNINGS_ONLY", "COMBINED"],
    "generated": {"path_globs": list(DEFAULT_GENERATED_GLOBS), "loc_threshold": 1000},
    "defect_pattern": DEFAULT_DEFECT_PATTERN,
    "smote": {"k_neighbors": 5, "target_ratio": 1.0},
    "forest": {"n_trees": 100, "max_depth": None, "min_split": 2, "features_per_split": None},
    "pnn": {"bandwidth": 1.0, "standardize": True},
    "fs": {
        "forest": {"n_trees": 20},
        "score": "F_MEASURE",
        "method": "ELIMINATION",
        "annealing": {"initial_temperature": 1.0, "cooling_rate": 0.95, "iterations": 200},
    },
    "plan": {
        "classifiers": ["NAIVE_BAYES", "PNN", "RANDOM_FOREST"],
        "smote": ["WITHOUT", "WITH"],
        "fs": ["ANNEALING", "ELIMINATION", "NONE"],
        "smells": ["ABSENT", "PRESENT"],
        "split_fraction": 0.5,
        "fs_on_full": False,
        "smote_train_only": False,
    },
    "study": {"n_submodules": 20},
    "synth": {
        "n_files": 2000,
        "n_informative_features": 3,
        "noise_rate": 0.1,
        "minority_fraction": 0.1,
        "n_file_metrics": 15,
        "n_informative_warnings": 4,
        "generated_fraction": 0.0,
        "n_modules": 20,
    },
    "datasets": {},
}

# flat flag names accepted as shorthands for nested keys
ALIASES = {
    "fs_on_full": "plan.fs_on_full",
    "smote_train_only": "plan.smote_train_only",
    "n_submodules": "study.n_submodules",
    "file_metrics": "inputs.file_metrics",
    "warnings": "inputs.warnings",
    "change_log": "inputs.change_log",
    "split_fraction": "plan.split_fraction",
}


def deep_merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def set_dotted(cfg: dict, dotted: str, value):
    dotted = ALIASES.get(dotted, dotted)
    keys = dotted.split(".")
    node = cfg
    for k in keys[:-1]:
        node = node.setdefault(k, {})
        if not isinstance(node, dict):
            raise InputError(f"cannot set {dotted!r}: {k!r} is not a section")
    node[keys[-1]] = value


def parse_overrides(tokens: list[str]) -> list[tuple[str, object]]:
    """``--a.b value`` pairs; a flag without a value means ``true``.

    Values are read as JSON when possible, else kept as strings.
    """
    out = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if not tok.startswith("--") or len(tok) <= 2:
            raise InputError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, raw = key.split("=", 1)
            i += 1
        elif i + 1 < len(tokens) and not tokens[i + 1].startswith("--"):
            raw = tokens[i + 1]
            i += 2
        else:
            raw = "true"
            i += 1
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        out.append((key.replace("-", "_"), value))
    return out


def load_config(path: str | None, overrides: list[tuple[str, object]]) -> dict:
    cfg = copy.deepcopy(DEFAULTS)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise InputError(f"{path}: cannot read config ({exc.strerror})") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON config ({exc.msg})", exc.lineno) from None
        if not isinstance(doc, dict):
            raise InputError(f"{path}: config must be a JSON object")
        cfg = deep_merge(cfg, doc)
    for key, value in overrides:
        set_dotted(cfg, key, value)
    if cfg.get("seed") is None:
        raise InputError("a seed is mandatory (set \"seed\" in the config or pass --seed N)")
    if not isinstance(cfg["seed"], int) or isinstance(cfg["seed"], bool):
        raise InputError(f"seed must be an integer, got {cfg['seed']!r}")
    return cfg


def _build(cls, section: dict, **extra):
    try:
        return cls(**{**section, **extra})
    except TypeError as exc:
        raise InputError(f"bad {cls.__name__} settings: {exc}") from None


def generated_rule(cfg) -> GeneratedCodeRule:
    return _build(GeneratedCodeRule, {"path_globs": tuple(cfg["generated"]["path_globs"] or ()),
                                      "loc_threshold": cfg["generated"]["loc_threshold"]})


def defect_link(cfg) -> DefectLinkConfig:
    return DefectLinkConfig(cfg["defect_pattern"])


def smote_config(cfg) -> SmoteConfig:
    return _build(SmoteConfig, cfg["smote"], seed=cfg["seed"])


def forest_config(cfg, section=None) -> ForestConfig:
    return _build(ForestConfig, section if section is not None else cfg["forest"], seed=cfg["seed"])


def pnn_config(cfg) -> PnnConfig:
    return _build(PnnConfig, cfg["pnn"])


def annealing_schedule(cfg) -> AnnealingSchedule:
    return _build(AnnealingSchedule, cfg["fs"]["annealing"], seed=cfg["seed"])


def experiment_plan(cfg) -> ExperimentPlan:
    p = cfg["plan"]
    try:
        return ExperimentPlan(
            classifiers=tuple(p["classifiers"]),
            smote=tuple(p["smote"]),
            fs=tuple(p["fs"]),
            smells=tuple(p["smells"]),
            seed=cfg["seed"],
            smote_config=smote_config(cfg),
            forest=forest_config(cfg),
            pnn=pnn_config(cfg),
            fs_forest=forest_config(cfg, cfg["fs"]["forest"]),
            fs_score=cfg["fs"]["score"],
            annealing=annealing_schedule(cfg),
            split_fraction=p["split_fraction"],
            fs_on_full=bool(p["fs_on_full"]),
            smote_train_only=bool(p["smote_train_only"]),
        )
    except ValueError as exc:
        raise InputError(f"bad experiment plan: {exc}") from None


def study_config(cfg) -> StudyConfig:
    try:
        return StudyConfig(
            seed=cfg["seed"],
            n_submodules=int(cfg["study"]["n_submodules"]),
            smote_config=smote_config(cfg),
            forest=forest_config(cfg),
            fs_method=cfg["fs"]["method"],
            fs_forest=forest_config(cfg, cfg["fs"]["forest"]),
            fs_score=cfg["fs"]["score"],
            annealing=annealing_schedule(cfg),
            split_fraction=cfg["plan"]["split_fraction"],
            smote_train_only=bool(cfg["plan"]["smote_train_only"]),
        )
    except ValueError as exc:
        raise InputError(f"bad study settings: {exc}") from None


def synthetic_spec(cfg) -> SyntheticSpec:
    return _build(SyntheticSpec, cfg["synth"])
