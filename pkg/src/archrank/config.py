"""Per-task pipeline configuration and the shipped presets.

A :class:`TaskConfig` pins everything that differs between tasks: kernel
length, the two mixing ratios of the composite kernel (absent means a plain
square-root RBF), the rank-to-score distribution, the base-learner set, the
encoder used by KNN/SVR and the final GP, and optional tuned feature
weights.  The presets ``task0`` .. ``task7`` ship the configurations the
pipeline was originally run with.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .labels import (
    LeftSkewedScores,
    NormalScores,
    distribution_from_dict,
)

GP_ONE_HOT = "gp_one_hot"
GP_TWO_HOT = "gp_two_hot"
KNN = "knn"
SVR = "svr"
LEARNER_NAMES = (GP_ONE_HOT, GP_TWO_HOT, KNN, SVR)

# Both GP base models travel together: they differ only by one-hot vs
# two-hot inputs.
GP_PAIR = (GP_ONE_HOT, GP_TWO_HOT)


@dataclass(frozen=True)
class TaskConfig:
    """Everything the ensemble pipeline needs for one task."""

    kernel_length: float = 22.0
    beta: tuple[float, float] | None = (0.3, 0.7)
    label_dist: object = field(default_factory=NormalScores)
    base_learners: tuple[str, ...] = GP_PAIR + (SVR,)
    encoder_k: int = 2
    tuned_weights: tuple[float, ...] | None = None
    sigma_n2: float = 1e-6
    prior_ridge: float = 1e-6
    knn_k: int = 5
    knn_metric: str = "euclidean"
    svr_c: float = 1.0
    svr_epsilon: float = 0.01
    svr_tol: float = 1e-3
    svr_max_iter: int = 1000

    def __post_init__(self):
        if self.kernel_length <= 0:
            raise ValueError(f"kernel_length must be positive, got {self.kernel_length}")
        if self.beta is not None:
            b1, b2 = self.beta
            if b1 < 0 or b2 < 0 or b1 + b2 <= 0:
                raise ValueError(f"beta must be non-negative with positive sum, got {self.beta}")
            object.__setattr__(self, "beta", (float(b1), float(b2)))
        if not self.base_learners:
            raise ValueError("base_learners must be non-empty")
        unknown = [n for n in self.base_learners if n not in LEARNER_NAMES]
        if unknown:
            raise ValueError(f"unknown base learners {unknown}; choose from {LEARNER_NAMES}")
        object.__setattr__(self, "base_learners", tuple(dict.fromkeys(self.base_learners)))
        if self.encoder_k < 1:
            raise ValueError(f"encoder_k must be >= 1, got {self.encoder_k}")
        if self.tuned_weights is not None:
            w = tuple(float(v) for v in self.tuned_weights)
            if any(v < 0 for v in w):
                raise ValueError("tuned_weights must be non-negative")
            object.__setattr__(self, "tuned_weights", w)
        if self.sigma_n2 < 0:
            raise ValueError(f"sigma_n2 must be non-negative, got {self.sigma_n2}")

    def with_weights(self, weights: Sequence[float]) -> "TaskConfig":
        return replace(self, tuned_weights=tuple(float(w) for w in weights))

    def to_dict(self) -> dict:
        return {
            "kernel_length": self.kernel_length,
            "beta": list(self.beta) if self.beta is not None else None,
            "label_dist": self.label_dist.to_dict(),
            "base_learners": list(self.base_learners),
            "encoder_k": self.encoder_k,
            "tuned_weights": list(self.tuned_weights)
            if self.tuned_weights is not None
            else None,
            "sigma_n2": self.sigma_n2,
            "prior_ridge": self.prior_ridge,
            "knn_k": self.knn_k,
            "knn_metric": self.knn_metric,
            "svr_c": self.svr_c,
            "svr_epsilon": self.svr_epsilon,
            "svr_tol": self.svr_tol,
            "svr_max_iter": self.svr_max_iter,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "TaskConfig":
        kwargs = dict(obj)
        beta = kwargs.get("beta")
        if beta is not None:
            kwargs["beta"] = tuple(beta)
        dist = kwargs.get("label_dist")
        if isinstance(dist, dict):
            kwargs["label_dist"] = distribution_from_dict(dist)
        learners = kwargs.get("base_learners")
        if learners is not None:
            kwargs["base_learners"] = tuple(learners)
        weights = kwargs.get("tuned_weights")
        if weights is not None:
            kwargs["tuned_weights"] = tuple(weights)
        unknown = set(kwargs) - {f.name for f in cls.__dataclass_fields__.values()}
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        return cls(**kwargs)


def _preset(
    length: float,
    beta: tuple[float, float] | None,
    dist,
    learners: tuple[str, ...],
    encoder_k: int = 2,
) -> TaskConfig:
    return TaskConfig(
        kernel_length=length,
        beta=beta,
        label_dist=dist,
        base_learners=learners,
        encoder_k=encoder_k,
    )


def task_presets() -> dict[str, TaskConfig]:
    """The eight shipped per-task configurations, keyed ``task0`` .. ``task7``."""
    normal = NormalScores()
    skewed = LeftSkewedScores()
    return {
        "task0": _preset(22.0, (0.18, 0.82), normal, GP_PAIR + (KNN,)),
        "task1": _preset(28.0, (0.62, 0.38), skewed, GP_PAIR + (SVR,)),
        "task2": _preset(24.0, (0.02, 0.98), skewed, GP_PAIR + (SVR,)),
        "task3": _preset(25.0, (0.6, 0.4), normal, GP_PAIR + (SVR,)),
        "task4": _preset(22.0, (0.7, 0.3), skewed, GP_PAIR + (SVR,)),
        "task5": _preset(22.0, (0.3, 0.7), normal, GP_PAIR + (SVR,)),
        "task6": _preset(22.0, None, normal, GP_PAIR, encoder_k=9),
        "task7": _preset(22.0, (0.3, 0.7), normal, GP_PAIR + (SVR,)),
    }
