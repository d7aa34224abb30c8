"""Command-line front end.

Commands: sweep, theory, predict-depth, verify <statement>, ingest.  Every
command reads a JSON config (--config), optionally overridden by --seed and
--trials, and writes CSV or JSON to --out (default: the config's
output.path, else stdout).  Delimited outputs carry a '#' comment line with
tool version, config hash and seed; matplotlib figures are rendered next to
file outputs unless --no-plot is given.

Exit codes: 0 success (and verification passed), 1 runtime failure or failed
verification, 2 usage/config error.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click

from . import __version__, theory
from .config import ConfigError, ExperimentConfig, IngestPaths, load_config
from .csbm import CsbmParams
from .depth import predict_depth
from .empirics import STATEMENTS, SweepRow, layerwise_sweep, verify
from .io import load_graph
from .propagation import APPNP, PPNP, RANDOM_WALK, SYMMETRIC, OperatorSpec, ppnp, propagate
from .structure import triangle_with_pendant


def _fmt(value) -> str:
    """Shortest round-trip rendering: repr for floats, str otherwise."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(
    path: str | None,
    columns: list[str],
    rows: list[dict],
    config: ExperimentConfig,
    seed: int,
    extra_comments: list[str] | None = None,
) -> None:
    lines = [f"# csbmlab {__version__} config={config.config_digest} seed={seed}"]
    lines.extend(f"# {c}" for c in (extra_comments or []))
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in columns))
    text = "\n".join(lines) + "\n"
    if path is None:
        click.echo(text, nl=False)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _write_json(path: str | None, payload: dict) -> None:
    def clean(obj):
        if isinstance(obj, float) and math.isnan(obj):
            return None
        if isinstance(obj, dict):
            return {k: clean(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [clean(v) for v in obj]
        return obj

    text = json.dumps(clean(payload), indent=2, sort_keys=True) + "\n"
    if path is None:
        click.echo(text, nl=False)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _resolve_out(config: ExperimentConfig, out: str | None) -> str | None:
    return out if out is not None else config.output_path


def _load_ingest(model: IngestPaths):
    graph, features = load_graph(model.edges, model.labels, model.features)
    if features is None:
        raise click.UsageError("this command needs node features; provide model.features")
    return graph, features


class _Fail(Exception):
    """Runtime failure carrying an exit message (exit code 1)."""


def _run(fn):
    try:
        return fn()
    except (ConfigError, click.UsageError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    except _Fail as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    except Exception as exc:  # runtime failures map to exit 1
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


_config_opt = click.option("--config", "config_path", required=True, type=click.Path(), help="JSON experiment config.")
_out_opt = click.option("--out", "out", type=click.Path(), default=None, help="Output file (default: config output.path or stdout).")
_seed_opt = click.option("--seed", "seed", type=int, default=None, help="Override the model seed.")
_trials_opt = click.option("--trials", "trials", type=int, default=None, help="Override the trial count.")
_plot_opt = click.option("--plot/--no-plot", "do_plot", default=True, help="Render a PNG next to file output.")


@click.group()
@click.version_option(__version__, prog_name="csbmlab")
def main() -> None:
    """Graph-convolution mixing/denoising laboratory on the two-class CSBM."""


@main.command()
@_config_opt
@_out_opt
@_seed_opt
@_trials_opt
@_plot_opt
def sweep(config_path: str, out: str | None, seed: int | None, trials: int | None, do_plot: bool) -> None:
    """Layerwise accuracy/mixing/denoising sweep over the configured operators."""

    def body() -> None:
        config = load_config(config_path, seed_override=seed, trials_override=trials)
        run_seed = seed if seed is not None else config.seed
        if config.is_csbm:
            source = config.model
        else:
            graph, features = _load_ingest(config.model)
            source = (graph, features, graph.labels)
        rows = layerwise_sweep(
            source,
            list(config.operators),
            n_max=config.n_max,
            trials=config.trials,
            split_fractions=config.split_fractions,
            rule=config.decision_rule,
            seed=run_seed,
        )
        columns = [
            "depth",
            "operator",
            "train_acc",
            "test_acc",
            "train_acc_stderr",
            "test_acc_stderr",
            "mixing_metric",
            "denoising_metric",
            "empirical_z",
        ]
        dict_rows = [row.__dict__ for row in rows]
        out_path = _resolve_out(config, out)
        _write_rows(out_path, columns, dict_rows, config, run_seed)
        if do_plot and out_path is not None:
            from .plots import render_sweep

            render_sweep(rows, out_path)

    _run(body)


def _theory_rows(params: CsbmParams, op: OperatorSpec, n_max: int) -> list[dict]:
    d = params.feature_dim
    rows = []
    if op.kind == RANDOM_WALK:
        for n in range(n_max + 1):
            tb = theory.theory_bounds(params, n)
            rows.append(
                {
                    "depth": n,
                    "operator": op.label,
                    "mean_gap": tb.mean_gap,
                    "var_lower": tb.var_lower,
                    "var_upper": tb.var_upper,
                    "z_lower": tb.z_lower,
                    "z_upper": tb.z_upper,
                    "bayes_err_lower": tb.bayes_err_lower,
                    "bayes_err_upper": tb.bayes_err_upper,
                    "band_consistent": tb.band_consistent,
                }
            )
    elif op.kind == APPNP:
        for n in range(n_max + 1):
            gap = theory.appnp_mean_gap(params, op.alpha, n)
            if n == 0:
                lo = up = params.sigma2
            else:
                lo, up = theory.appnp_variance_bounds(params, op.alpha, n)
            z_lo, z_up = gap / (2 * math.sqrt(up)), gap / (2 * math.sqrt(lo))
            rows.append(
                {
                    "depth": n,
                    "operator": op.label,
                    "mean_gap": gap,
                    "var_lower": lo,
                    "var_upper": up,
                    "z_lower": z_lo,
                    "z_upper": z_up,
                    "bayes_err_lower": theory.bayes_error(gap, math.sqrt(lo), d),
                    "bayes_err_upper": theory.bayes_error(gap, math.sqrt(up), d),
                    "band_consistent": bool(lo <= up),
                }
            )
    elif op.kind == PPNP:
        gap = theory.ppnp_mean_gap(params, op.alpha)
        lo, up = theory.ppnp_variance_bounds(params, op.alpha, op.truncation)
        rows.append(
            {
                "depth": op.truncation,
                "operator": op.label,
                "mean_gap": gap,
                "var_lower": lo,
                "var_upper": up,
                "z_lower": gap / (2 * math.sqrt(up)),
                "z_upper": gap / (2 * math.sqrt(lo)),
                "bayes_err_lower": theory.bayes_error(gap, math.sqrt(lo), d),
                "bayes_err_upper": theory.bayes_error(gap, math.sqrt(up), d),
                "band_consistent": bool(lo <= up),
            }
        )
    return rows


@main.command(name="theory")
@_config_opt
@_out_opt
@_seed_opt
@_trials_opt
@_plot_opt
def theory_cmd(config_path: str, out: str | None, seed: int | None, trials: int | None, do_plot: bool) -> None:
    """Closed-form mean-gap / variance / z-score / Bayes-error curves."""

    def body() -> None:
        config = load_config(config_path, seed_override=seed, trials_override=trials)
        if not config.is_csbm:
            raise click.UsageError("theory curves need a csbm model")
        params = config.model
        comments: list[str] = []
        all_rows: list[dict] = []
        for op in config.operators:
            if op.kind == SYMMETRIC:
                comments.append(f"operator {op.label} skipped: no closed-form mean/variance theory (empirics only)")
                continue
            rows = _theory_rows(params, op, config.n_max)
            bad = [r["depth"] for r in rows if not r["band_consistent"]]
            if bad:
                comments.append(f"operator {op.label}: variance band crosses (lower > upper) at depths {bad}")
            if op.kind == PPNP and rows and rows[0]["var_upper"] > params.sigma2:
                comments.append(f"operator {op.label}: series upper bound exceeds sigma2 (vacuous)")
            all_rows.extend(rows)
        columns = [
            "depth",
            "operator",
            "mean_gap",
            "var_lower",
            "var_upper",
            "z_lower",
            "z_upper",
            "bayes_err_lower",
            "bayes_err_upper",
            "band_consistent",
        ]
        out_path = _resolve_out(config, out)
        _write_rows(out_path, columns, all_rows, config, config.seed, extra_comments=comments)
        if do_plot and out_path is not None:
            from collections import defaultdict

            from .plots import render_theory

            curves: dict[str, list[dict]] = defaultdict(list)
            for row in all_rows:
                curves[row["operator"]].append(row)
            render_theory(curves, out_path)

    _run(body)


@main.command(name="predict-depth")
@_config_opt
@_out_opt
@_seed_opt
@_trials_opt
def predict_depth_cmd(config_path: str, out: str | None, seed: int | None, trials: int | None) -> None:
    """Bracket the break-even and optimal depths from the z-score bands."""

    def body() -> None:
        config = load_config(config_path, seed_override=seed, trials_override=trials)
        if not config.is_csbm:
            raise click.UsageError("depth prediction needs a csbm model")
        prediction = predict_depth(config.model, horizon=config.n_max)
        payload = {
            "scenario": prediction.scenario,
            "n0_interval": list(prediction.n0_interval),
            "nstar_interval": list(prediction.nstar_interval),
            "nstar_floor": prediction.nstar_floor,
            "horizon": prediction.horizon,
            "horizon_flags": list(prediction.flags),
            "config": config.config_digest,
        }
        _write_json(_resolve_out(config, out), payload)

    _run(body)


@main.command(name="verify")
@click.argument("statement", type=click.Choice(STATEMENTS))
@_config_opt
@_out_opt
@_seed_opt
@_trials_opt
def verify_cmd(statement: str, config_path: str, out: str | None, seed: int | None, trials: int | None) -> None:
    """Check one theoretical statement against simulation; exit 0 iff it holds."""

    def body() -> None:
        config = load_config(config_path, seed_override=seed, trials_override=trials)
        opts = dict(config.verify_options)
        graph = None
        if "graph" in opts:
            graph, _ = load_graph(opts.pop("graph"), opts.pop("graph_labels"))
        elif statement == "VarianceLimit":
            graph = triangle_with_pendant()
        kwargs = {}
        for key in (
            "c_budget",
            "min_pass",
            "sigma2",
            "limit_depth",
            "limit_tol",
            "sym_graphs",
            "sym_max_nodes",
            "sym_n_max",
            "relu_depth",
            "rule",
        ):
            if key in opts:
                kwargs[key] = opts[key]
        if "depths" in opts:
            kwargs["depths"] = tuple(int(d) for d in opts["depths"])
        params = config.model if config.is_csbm else None
        report = verify(
            statement,
            params=params,
            graph=graph,
            trials=config.trials,
            cfg=config.concentration,
            seed=config.seed,
            **kwargs,
        )
        payload = {
            "statement": report.statement,
            "trials": report.trials,
            "pass_fraction": report.pass_fraction,
            "worst_deviation": report.worst_deviation,
            "implied_constant": report.implied_constant,
            "passed": report.passed,
            "threshold": report.threshold,
            "detail": report.detail,
            "config": config.config_digest,
        }
        _write_json(_resolve_out(config, out), payload)
        if not report.passed:
            raise _Fail(f"verification {statement} failed: pass_fraction={report.pass_fraction:.4f}")

    _run(body)


@main.command()
@_config_opt
@_out_opt
@_seed_opt
@_trials_opt
@_plot_opt
def ingest(config_path: str, out: str | None, seed: int | None, trials: int | None, do_plot: bool) -> None:
    """Per-depth class statistics (mixing/denoising metrics) for an ingested graph."""

    def body() -> None:
        from .empirics import class_stats, empirical_zscore
        import numpy as np

        config = load_config(config_path, seed_override=seed, trials_override=trials)
        if config.is_csbm:
            raise click.UsageError("ingest needs an ingest model (kind='ingest')")
        graph, features = _load_ingest(config.model)
        rows: list[dict] = []
        for op in config.operators:
            for n in range(config.n_max + 1):
                h = propagate(graph, features, op, n).matrix if op.kind != PPNP else None
                if op.kind == PPNP:
                    h, _ = ppnp(graph, features.matrix, op.alpha, op.truncation)
                    if op.terminal_relu:
                        h = np.maximum(h, 0.0)
                stats = class_stats(h, graph.labels, depth=n)
                c = stats.pairwise_mean_dists.shape[0]
                off = stats.pairwise_mean_dists[~np.eye(c, dtype=bool)] if c > 1 else np.zeros(1)
                rows.append(
                    {
                        "depth": n,
                        "operator": op.label,
                        "mean_inter_class_dist": float(off.mean()),
                        "min_inter_class_dist": float(off.min()),
                        "max_inter_class_dist": float(off.max()),
                        "pooled_within_var": stats.pooled_within_var,
                        "empirical_z": empirical_zscore(stats),
                    }
                )
        columns = [
            "depth",
            "operator",
            "mean_inter_class_dist",
            "min_inter_class_dist",
            "max_inter_class_dist",
            "pooled_within_var",
            "empirical_z",
        ]
        out_path = _resolve_out(config, out)
        _write_rows(out_path, columns, rows, config, config.seed)
        if do_plot and out_path is not None:
            from .plots import render_ingest

            render_ingest(rows, out_path)

    _run(body)


if __name__ == "__main__":
    main()
