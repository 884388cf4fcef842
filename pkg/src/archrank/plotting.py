"""Figure rendering for the report commands (headless backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_ladder_figure(rows, path) -> Path:
    """Bar chart of the ablation ladder: mean tau per variant with std bars."""
    path = Path(path)
    names = [r.variant for r in rows]
    means = [r.mean for r in rows]
    stds = [r.std for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    x = np.arange(len(names))
    ax.bar(x, means, yerr=stds, capsize=4, color="#4878d0")
    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=20, ha="right")
    ax.set_ylabel("validation Kendall tau")
    ax.set_title("ablation ladder")
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_trace_figure(values, path) -> Path:
    """Tuning trace: per-evaluation objective and its running best."""
    path = Path(path)
    vals = np.asarray(values, dtype=float)
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(vals, ".", color="#777777", label="evaluation")
    ax.plot(np.maximum.accumulate(vals), "-", color="#d65f5f", label="running best")
    ax.set_xlabel("evaluation")
    ax.set_ylabel("objective (mean validation tau)")
    ax.set_title("kernel weight tuning")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_tau_figure(names, taus, path) -> Path:
    """Per-task tau bars plus the mean line."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    x = np.arange(len(names))
    ax.bar(x, taus, color="#6acc64")
    ax.axhline(float(np.mean(taus)), color="#d65f5f", linestyle="--", label="mean")
    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=20, ha="right")
    ax.set_ylabel("Kendall tau")
    ax.set_title("evaluation report")
    ax.legend()
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
