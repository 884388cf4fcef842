"""Rank/score label transformation.

Rank labels carry only relative order, but the regressors want real-valued
targets whose distribution resembles plausible accuracy values.  Rank ``r``
among ``n`` is mapped deterministically to the inverse CDF of a chosen
distribution at quantile ``(n - r + 0.5) / n`` -- best rank, highest score.
The half-step offset keeps quantiles strictly inside (0, 1), and the mapping
realizes the distribution's shape without the irreproducibility of literal
random sampling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .dataset import TaskDataset
from .errors import DataError


@dataclass(frozen=True)
class NormalScores:
    """Scores shaped like a normal distribution."""

    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    def ppf(self, q) -> np.ndarray:
        return stats.norm.ppf(q, loc=self.mu, scale=self.sigma)

    def to_dict(self) -> dict:
        return {"kind": "normal", "mu": self.mu, "sigma": self.sigma}


@dataclass(frozen=True)
class LeftSkewedScores:
    """Scores shaped like a left-skewed bell (skew-normal, negative shape)."""

    location: float = 0.0
    scale: float = 1.0
    shape: float = -4.0

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if self.shape >= 0:
            raise ValueError(f"shape must be negative for a left skew, got {self.shape}")

    def ppf(self, q) -> np.ndarray:
        return stats.skewnorm.ppf(q, self.shape, loc=self.location, scale=self.scale)

    def to_dict(self) -> dict:
        return {
            "kind": "left_skewed",
            "location": self.location,
            "scale": self.scale,
            "shape": self.shape,
        }


def distribution_from_dict(obj: dict):
    kind = obj.get("kind")
    if kind == "normal":
        return NormalScores(mu=obj.get("mu", 0.0), sigma=obj.get("sigma", 1.0))
    if kind == "left_skewed":
        return LeftSkewedScores(
            location=obj.get("location", 0.0),
            scale=obj.get("scale", 1.0),
            shape=obj.get("shape", -4.0),
        )
    raise ValueError(f"unknown score distribution kind {kind!r}")


def ranks_to_scores(ranks, dist) -> np.ndarray:
    """Map ranks (1 = best) to strictly order-reversed real scores.

    Tied ranks receive identical scores.
    """
    r = np.asarray(ranks, dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ValueError("ranks must be a non-empty vector")
    n = r.size
    if np.any(r != np.floor(r)) or np.any(r < 1) or np.any(r > n):
        raise DataError(f"ranks must be integers in 1..{n}")
    q = (n - r + 0.5) / n
    return np.asarray(dist.ppf(q), dtype=float)


def scores_to_ranks(scores) -> np.ndarray:
    """Ranks from scores: highest score is rank 1, ties share the minimum rank."""
    s = np.asarray(scores, dtype=float)
    if s.ndim != 1 or s.size == 0:
        raise ValueError("scores must be a non-empty vector")
    if np.any(np.isnan(s)):
        raise DataError("scores contain NaN")
    # rank = 1 + number of strictly greater scores
    return 1 + (s[None, :] > s[:, None]).sum(axis=1)


def rerank(ranks) -> np.ndarray:
    """Minimum-rank re-ranking of an ascending rank vector.

    Needed after taking a row subset: subset rank values still refer to the
    parent table.  Order and ties are preserved; values become a valid
    ranking of the subset (1 = best).
    """
    r = np.asarray(ranks, dtype=float)
    if np.any(np.isnan(r)):
        raise DataError("cannot re-rank with missing labels")
    return 1 + (r[None, :] < r[:, None]).sum(axis=1)


def score_like(labels, label_kind: str) -> np.ndarray:
    """Orient labels so that larger is better (negated ranks, raw scores)."""
    labels = np.asarray(labels, dtype=float)
    return -labels if label_kind == "rank" else labels


def training_scores(labels, label_kind: str, dist) -> np.ndarray:
    """Regression targets for a training subset.

    Rank labels are re-ranked within the subset and quantile-mapped through
    ``dist``; score labels pass through unchanged.
    """
    labels = np.asarray(labels, dtype=float)
    if np.any(np.isnan(labels)):
        raise DataError("training labels are incomplete")
    if label_kind == "rank":
        return ranks_to_scores(rerank(labels), dist)
    return labels.copy()


def rerank_subset(ds: TaskDataset, indices) -> TaskDataset:
    """Row subset of a dataset with rank labels re-ranked within the subset."""
    idx = np.asarray(indices, dtype=np.int64)
    labels = ds.labels[idx]
    if ds.label_kind == "rank":
        if np.any(np.isnan(labels)):
            raise DataError("cannot re-rank a subset with missing labels")
        labels = rerank(labels)
    return TaskDataset(
        ds.features[idx], labels, ds.cardinalities, ds.label_kind, ds.task_id
    )
