"""Synthetic task generation.

Desk-scale stand-in for proprietary benchmark tables: features are drawn
uniformly over the categories, a fixed random linear function (optionally
plus one pairwise interaction) defines the latent quality, Gaussian noise
is added relative to the signal's spread, and the observed labels are the
ranks of the noisy quality.  The noiseless latent scores are kept as ground
truth for evaluation.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .dataset import TaskDataset, save_dataset
from .labels import scores_to_ranks


def make_synth_task(
    n: int,
    dim: int = 6,
    cardinality: int = 4,
    noise: float = 0.0,
    seed: int = 0,
    informative=None,
    interaction: float = 0.0,
    task_id: int = 0,
) -> tuple[TaskDataset, np.ndarray]:
    """Generate a task; returns (dataset with rank labels, latent truth scores).

    ``noise`` is the noise standard deviation as a fraction of the latent
    scores' standard deviation.  ``informative`` optionally restricts the
    linear coefficients to the given column indices (others are zeroed).
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    if dim < 1 or cardinality < 2:
        raise ValueError("need dim >= 1 and cardinality >= 2")
    if noise < 0:
        raise ValueError(f"noise must be non-negative, got {noise}")
    rng = np.random.default_rng(seed)
    features = rng.integers(0, cardinality, size=(n, dim))
    coef = rng.choice([-1.0, 1.0], size=dim) * rng.uniform(0.5, 1.5, size=dim)
    if informative is not None:
        informative = [int(j) for j in informative]
        if not informative or any(j < 0 or j >= dim for j in informative):
            raise ValueError(f"informative columns must be within 0..{dim - 1}")
        mask = np.zeros(dim)
        mask[informative] = 1.0
        coef = coef * mask
    latent = features @ coef
    if interaction != 0.0:
        a, b = rng.choice(dim, size=2, replace=False)
        latent = latent + interaction * features[:, a] * features[:, b]
    spread = float(latent.std())
    observed = latent
    if noise > 0 and spread > 0:
        observed = latent + rng.normal(0.0, noise * spread, size=n)
    ranks = scores_to_ranks(observed)
    ds = TaskDataset(features, ranks, [cardinality] * dim, "rank", task_id)
    return ds, latent


def truth_path_for(dataset_path) -> Path:
    """Sidecar path holding the ground-truth scores for a generated dataset."""
    p = Path(dataset_path)
    return p.with_name(p.stem + ".truth.csv")


def write_synth_files(ds: TaskDataset, truth: np.ndarray, out_path) -> tuple[Path, Path]:
    """Write the dataset plus its ground-truth sidecar; returns both paths."""
    out_path = Path(out_path)
    save_dataset(ds, out_path)
    sidecar = truth_path_for(out_path)
    with sidecar.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "score"])
        for i, s in enumerate(truth):
            writer.writerow([i, repr(float(s))])
    return out_path, sidecar
