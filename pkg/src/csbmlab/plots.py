"""Figure rendering for the CLI report paths.

Each renderer takes the rows already written to the delimited output and
saves one PNG next to it.  The Agg backend produces byte-identical files for
identical inputs, preserving the CLI determinism contract.
"""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .empirics import SweepRow  # noqa: E402


def figure_path(out_path: str | Path) -> Path:
    return Path(out_path).with_suffix(".png")


def render_sweep(rows: list[SweepRow], path: str | Path) -> Path:
    """Test accuracy and mixing/denoising metrics against depth, one line per
    operator."""
    by_op: dict[str, list[SweepRow]] = defaultdict(list)
    for row in rows:
        by_op[row.operator].append(row)
    fig, (ax_acc, ax_fx) = plt.subplots(1, 2, figsize=(11, 4.2))
    for op, op_rows in by_op.items():
        op_rows = sorted(op_rows, key=lambda r: r.depth)
        depths = [r.depth for r in op_rows]
        accs = [r.test_acc for r in op_rows]
        errs = [r.test_acc_stderr for r in op_rows]
        ax_acc.errorbar(depths, accs, yerr=errs, marker="o", markersize=3, capsize=2, label=op)
        ax_fx.semilogy(depths, [max(r.mixing_metric, 1e-300) for r in op_rows], marker="o", markersize=3, label=f"{op} mixing")
        ax_fx.semilogy(depths, [max(r.denoising_metric, 1e-300) for r in op_rows], marker="s", markersize=3, linestyle="--", label=f"{op} within-var")
    ax_acc.set_xlabel("depth")
    ax_acc.set_ylabel("test accuracy")
    ax_acc.legend(fontsize=8)
    ax_fx.set_xlabel("depth")
    ax_fx.set_ylabel("class-mean distance / within-class variance")
    ax_fx.legend(fontsize=7)
    fig.tight_layout()
    out = figure_path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def render_theory(curves: dict[str, list[dict]], path: str | Path) -> Path:
    """Mean gap, variance band and z band against depth per operator."""
    fig, (ax_gap, ax_var, ax_z) = plt.subplots(1, 3, figsize=(13, 4.0))
    for op, rows in curves.items():
        depths = [r["depth"] for r in rows]
        ax_gap.semilogy(depths, [max(r["mean_gap"], 1e-300) for r in rows], marker="o", markersize=3, label=op)
        ax_var.fill_between(
            depths,
            [max(r["var_lower"], 1e-300) for r in rows],
            [max(r["var_upper"], 1e-300) for r in rows],
            alpha=0.25,
        )
        ax_var.semilogy(depths, [max(r["var_upper"], 1e-300) for r in rows], marker="^", markersize=3, label=f"{op} upper")
        ax_var.semilogy(depths, [max(r["var_lower"], 1e-300) for r in rows], marker="v", markersize=3, label=f"{op} lower")
        ax_z.plot(depths, [r["z_upper"] for r in rows], marker="^", markersize=3, label=f"{op} z upper")
        ax_z.plot(depths, [r["z_lower"] for r in rows], marker="v", markersize=3, label=f"{op} z lower")
    ax_gap.set_xlabel("depth")
    ax_gap.set_ylabel("mean gap")
    ax_gap.legend(fontsize=8)
    ax_var.set_xlabel("depth")
    ax_var.set_ylabel("variance band")
    ax_var.legend(fontsize=7)
    ax_z.set_xlabel("depth")
    ax_z.set_ylabel("z-score band")
    ax_z.legend(fontsize=7)
    fig.tight_layout()
    out = figure_path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def render_ingest(rows: list[dict], path: str | Path) -> Path:
    """Mixing (inter-class mean distance) and denoising (within-class
    variance) against depth for an ingested graph."""
    fig, (ax_mix, ax_den) = plt.subplots(1, 2, figsize=(10, 4.0))
    by_op: dict[str, list[dict]] = defaultdict(list)
    for row in rows:
        by_op[row["operator"]].append(row)
    for op, op_rows in by_op.items():
        op_rows = sorted(op_rows, key=lambda r: r["depth"])
        depths = [r["depth"] for r in op_rows]
        ax_mix.plot(depths, [r["mean_inter_class_dist"] for r in op_rows], marker="o", markersize=3, label=op)
        ax_den.semilogy(depths, [max(r["pooled_within_var"], 1e-300) for r in op_rows], marker="o", markersize=3, label=op)
    ax_mix.set_xlabel("depth")
    ax_mix.set_ylabel("mean inter-class distance")
    ax_mix.legend(fontsize=8)
    ax_den.set_xlabel("depth")
    ax_den.set_ylabel("pooled within-class variance")
    ax_den.legend(fontsize=8)
    fig.tight_layout()
    out = figure_path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
