"""Experiment configuration: a single versioned JSON document.

Schema (version 1):

    {
      "schema_version": 1,
      "model": {"kind": "csbm", "n_nodes": 2000, "p_intra": 0.0095,
                "q_inter": 0.0038, "mu1": 1.0, "mu2": 1.5, "sigma2": 1.0,
                "feature_dim": 1, "seed": 7}
            or {"kind": "ingest", "edges": "...", "labels": "...",
                "features": null},
      "operators": [{"kind": "random_walk", "terminal_relu": false},
                    {"kind": "appnp", "alpha": 0.1},
                    {"kind": "ppnp", "alpha": 0.1, "truncation": 50},
                    {"kind": "symmetric"}],
      "n_max": 20,
      "trials": 5,
      "split_fractions": [0.6, 0.2, 0.2],
      "decision_rule": "auto" | "population" | "empirical",
      "concentration": {"r_exponent": 1.0, "constant_c": 1.0, "horizon_k": 8},
      "verify": {... statement-specific overrides ...},
      "output": {"path": "out.csv", "format": "csv"}
    }

Only "model" is mandatory; everything else has the defaults shown.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .csbm import CsbmParams
from .propagation import OperatorSpec
from .theory import ConcentrationConfig

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class IngestPaths:
    edges: str
    labels: str
    features: str | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    model: CsbmParams | IngestPaths
    operators: tuple[OperatorSpec, ...]
    n_max: int = 20
    trials: int = 5
    split_fractions: tuple[float, float, float] = (0.6, 0.2, 0.2)
    decision_rule: str = "auto"
    concentration: ConcentrationConfig = field(default_factory=ConcentrationConfig)
    verify_options: dict = field(default_factory=dict)
    output_path: str | None = None
    output_format: str = "csv"
    config_digest: str = ""

    @property
    def is_csbm(self) -> bool:
        return isinstance(self.model, CsbmParams)

    @property
    def seed(self) -> int:
        return self.model.seed if self.is_csbm else 0


def config_hash(document: dict) -> str:
    """sha256 of the canonical (sorted, compact) JSON rendering."""
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def _parse_operator(entry: dict, index: int) -> OperatorSpec:
    if not isinstance(entry, dict) or "kind" not in entry:
        raise ConfigError(f"operators[{index}] must be an object with a 'kind'")
    kind = entry["kind"]
    relu = bool(entry.get("terminal_relu", False))
    try:
        if kind == "random_walk":
            return OperatorSpec.random_walk(terminal_relu=relu)
        if kind == "symmetric":
            return OperatorSpec.symmetric(terminal_relu=relu)
        if kind == "ppnp":
            return OperatorSpec.ppnp(
                alpha=float(entry.get("alpha", 0.1)),
                truncation=int(entry.get("truncation", 50)),
                terminal_relu=relu,
            )
        if kind == "appnp":
            return OperatorSpec.appnp(alpha=float(entry.get("alpha", 0.1)), terminal_relu=relu)
    except ValueError as exc:
        raise ConfigError(f"operators[{index}]: {exc}") from exc
    raise ConfigError(f"operators[{index}]: unknown kind {kind!r}")


def parse_config(document: dict, seed_override: int | None = None, trials_override: int | None = None) -> ExperimentConfig:
    if not isinstance(document, dict):
        raise ConfigError("config root must be a JSON object")
    version = document.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version}; this tool reads version {SCHEMA_VERSION}")
    if "model" not in document:
        raise ConfigError("config needs a 'model' section")
    model_doc = document["model"]
    kind = model_doc.get("kind", "csbm")
    if kind == "csbm":
        try:
            model: CsbmParams | IngestPaths = CsbmParams(
                n_nodes=int(model_doc["n_nodes"]),
                p_intra=float(model_doc["p_intra"]),
                q_inter=float(model_doc["q_inter"]),
                mu1=float(model_doc["mu1"]),
                mu2=float(model_doc["mu2"]),
                sigma2=float(model_doc["sigma2"]),
                feature_dim=int(model_doc.get("feature_dim", 1)),
                seed=int(seed_override if seed_override is not None else model_doc.get("seed", 0)),
            )
        except KeyError as exc:
            raise ConfigError(f"model.{exc.args[0]} is required for a csbm model") from exc
        except ValueError as exc:
            raise ConfigError(f"model: {exc}") from exc
    elif kind == "ingest":
        if "edges" not in model_doc or "labels" not in model_doc:
            raise ConfigError("ingest model needs 'edges' and 'labels' paths")
        model = IngestPaths(
            edges=str(model_doc["edges"]),
            labels=str(model_doc["labels"]),
            features=model_doc.get("features"),
        )
    else:
        raise ConfigError(f"model.kind must be 'csbm' or 'ingest', got {kind!r}")

    operators_doc = document.get("operators", [{"kind": "random_walk"}])
    if not isinstance(operators_doc, list) or not operators_doc:
        raise ConfigError("'operators' must be a non-empty list")
    operators = tuple(_parse_operator(entry, i) for i, entry in enumerate(operators_doc))

    n_max = int(document.get("n_max", 20))
    if n_max < 0:
        raise ConfigError(f"n_max must be >= 0, got {n_max}")
    trials = int(trials_override if trials_override is not None else document.get("trials", 5))
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")

    fractions = tuple(float(x) for x in document.get("split_fractions", (0.6, 0.2, 0.2)))
    if len(fractions) != 3 or any(f <= 0 for f in fractions) or abs(sum(fractions) - 1.0) > 1e-9:
        raise ConfigError(f"split_fractions must be three positive numbers summing to 1, got {fractions}")

    rule = document.get("decision_rule", "auto")
    if rule not in ("auto", "population", "empirical"):
        raise ConfigError(f"decision_rule must be auto|population|empirical, got {rule!r}")

    conc_doc = document.get("concentration", {})
    try:
        concentration = ConcentrationConfig(
            r_exponent=float(conc_doc.get("r_exponent", 1.0)),
            constant_c=float(conc_doc.get("constant_c", 1.0)),
            horizon_k=int(conc_doc.get("horizon_k", 8)),
        )
    except ValueError as exc:
        raise ConfigError(f"concentration: {exc}") from exc

    output_doc = document.get("output", {})
    output_format = output_doc.get("format", "csv")
    if output_format not in ("csv", "json"):
        raise ConfigError(f"output.format must be csv or json, got {output_format!r}")

    digest_doc = dict(document)
    if seed_override is not None and kind == "csbm":
        digest_doc = json.loads(json.dumps(document))
        digest_doc["model"]["seed"] = seed_override
    if trials_override is not None:
        digest_doc = dict(digest_doc)
        digest_doc["trials"] = trials_override

    return ExperimentConfig(
        model=model,
        operators=operators,
        n_max=n_max,
        trials=trials,
        split_fractions=fractions,  # type: ignore[arg-type]
        decision_rule=rule,
        concentration=concentration,
        verify_options=dict(document.get("verify", {})),
        output_path=output_doc.get("path"),
        output_format=output_format,
        config_digest=config_hash(digest_doc),
    )


def load_config(path: str | Path, seed_override: int | None = None, trials_override: int | None = None) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return parse_config(document, seed_override=seed_override, trials_override=trials_override)
