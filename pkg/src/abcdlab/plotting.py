"""Matplotlib renderings of the experiment outputs, written straight to files."""

from __future__ import annotations

from contextlib import contextmanager
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FSIZE_SMALL = 8
FSIZE_MEDIUM = 10
EMPIRICAL = "tab:blue"
THEORY = "tab:orange"


@contextmanager
def _style():
    rc = {
        "font.size": FSIZE_SMALL,
        "axes.titlesize": FSIZE_MEDIUM,
        "axes.labelsize": FSIZE_SMALL,
        "xtick.labelsize": FSIZE_SMALL,
        "ytick.labelsize": FSIZE_SMALL,
        "legend.fontsize": FSIZE_SMALL,
        "axes.linewidth": 0.6,
        "savefig.dpi": 150,
        # keeps PNG bytes stable across runs
        "svg.hashsalt": "abcdlab",
    }
    with matplotlib.rc_context(rc):
        yield


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_ccdf(panels, path) -> Path:
    """Log-log empirical vs theoretical ccdf, one axis per panel."""
    with _style():
        fig, axes = plt.subplots(1, len(panels), figsize=(3.2 * len(panels), 2.8))
        for ax, panel in zip(np.atleast_1d(axes), panels):
            k = panel.law.support
            ax.loglog(k, panel.emp.at(k), color=EMPIRICAL, label="empirical")
            ax.loglog(k, panel.law.ccdf(k), color=THEORY, label="theory")
            ax.set_title(panel.title)
            ax.set_xlabel("degree k")
            ax.grid(True, which="both", alpha=0.3)
        np.atleast_1d(axes)[0].set_ylabel("P(degree >= k)")
        np.atleast_1d(axes)[0].legend(frameon=False)
        return _save(fig, path)


def plot_volumes(buckets, path, title: str = "") -> Path:
    with _style():
        fig, ax = plt.subplots(figsize=(4.0, 3.0))
        x = [b.index for b in buckets]
        ax.errorbar(
            x,
            [b.mean_degree for b in buckets],
            yerr=[b.std_degree for b in buckets],
            color=EMPIRICAL,
            capsize=3,
            label="empirical",
        )
        ax.plot(x, [b.predicted for b in buckets], "--", color=THEORY, label="predicted")
        ax.set_xlabel("bucket (smallest to largest communities)")
        ax.set_ylabel("average degree")
        ax.set_xticks(x)
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_collisions(summary, path, title: str = "") -> Path:
    """Collision counts per community vs log2(n), with one-std error bars."""
    names = ["S_c", "M_c", "S_b", "M_b", "M_bc"]
    with _style():
        fig, axes = plt.subplots(1, len(names), figsize=(2.6 * len(names), 2.6))
        x = [np.log2(row["n"]) for row in summary]
        for ax, name in zip(axes, names):
            mean = [row[f"{name}/L_mean"] for row in summary]
            std = [row[f"{name}/L_std"] or 0.0 for row in summary]
            ax.errorbar(x, mean, yerr=std, color=EMPIRICAL, marker="o", ms=3, capsize=2)
            ax.set_title(f"{name}/L")
            ax.set_xlabel("log2 n")
        if title:
            fig.suptitle(title)
        return _save(fig, path)
