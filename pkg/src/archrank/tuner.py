"""Derivative-free tuning of the weighted kernel's diagonal.

The objective is the mean held-out Kendall tau, over a few fixed splits, of
a GP using the weighted kernel with the candidate weights.  A small
Bayesian-optimization loop maximizes it inside the weight box: a
Latin-hypercube initial design (seeded with the unit-weight baseline), a GP
surrogate over the evaluated points, and expected improvement ranked over a
seeded batch of random candidates.  Everything is deterministic given the
seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr
from scipy.stats import qmc

from .config import TaskConfig
from .dataset import TaskDataset, split
from .encoding import EncoderSpec, encode, expand_column_weights
from .errors import NumericalError
from .gp import GaussianProcess, LinearMean, fit_linear_mean
from .kernels import SqrtRBF, WeightedSqrtRBF
from .labels import score_like, training_scores
from .metrics import kendall_tau

OBJECTIVES = ("validation_tau", "train_tau")
FAILED_OBJECTIVE = -1.0


@dataclass(frozen=True)
class TuneSpec:
    """Search-box and budget description for one tuning run."""

    dims: int
    bounds: tuple[tuple[float, float], ...] | tuple[float, float] = (0.0, 1.0)
    budget: int = 60
    init_points: int = 10
    seed: int = 0
    objective: str = "validation_tau"
    split_fraction: float = 0.8
    split_seeds: int = 3
    candidates: int = 1024
    surrogate_length: float = 1.0
    surrogate_sigma_n2: float = 1e-6

    def __post_init__(self):
        if self.dims < 1:
            raise ValueError(f"dims must be >= 1, got {self.dims}")
        if not self.init_points >= 2:
            raise ValueError(f"init_points must be >= 2, got {self.init_points}")
        if self.budget < self.init_points:
            raise ValueError(
                f"budget {self.budget} is below init_points {self.init_points}"
            )
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        object.__setattr__(self, "bounds", self._normalized_bounds())

    def _normalized_bounds(self) -> tuple[tuple[float, float], ...]:
        b = self.bounds
        if len(b) == 2 and np.isscalar(b[0]):
            b = tuple((float(b[0]), float(b[1])) for _ in range(self.dims))
        else:
            b = tuple((float(lo), float(hi)) for lo, hi in b)
        if len(b) != self.dims:
            raise ValueError(f"{len(b)} bounds for {self.dims} dims")
        if any(lo >= hi for lo, hi in b):
            raise ValueError("every bound must satisfy low < high")
        return b

    @property
    def low(self) -> np.ndarray:
        return np.array([lo for lo, _ in self.bounds])

    @property
    def high(self) -> np.ndarray:
        return np.array([hi for _, hi in self.bounds])


@dataclass
class TuneTrace:
    """Evaluated points with their objective values, in evaluation order."""

    points: list[list[float]] = field(default_factory=list)
    values: list[float] = field(default_factory=list)

    def add(self, point, value: float):
        self.points.append([float(v) for v in point])
        self.values.append(float(value))

    @property
    def best_index(self) -> int:
        return int(np.argmax(self.values))

    @property
    def best_point(self) -> np.ndarray:
        return np.asarray(self.points[self.best_index])

    @property
    def best_value(self) -> float:
        return self.values[self.best_index]

    def to_dict(self) -> dict:
        return {
            "points": self.points,
            "values": self.values,
            "best_index": self.best_index,
            "best_point": list(self.best_point),
            "best_value": self.best_value,
        }


def expected_improvement(mean, std, best):
    """EI for maximization; at zero std it degenerates to max(mean - best, 0)."""
    scalar = np.isscalar(mean) or np.ndim(mean) == 0
    mean = np.atleast_1d(np.asarray(mean, dtype=float))
    std = np.atleast_1d(np.asarray(std, dtype=float))
    if np.any(std < 0):
        raise ValueError("std must be non-negative")
    improve = mean - best
    out = np.maximum(improve, 0.0)
    positive = std > 0
    if np.any(positive):
        z = improve[positive] / std[positive]
        pdf = np.exp(-0.5 * z * z) / np.sqrt(2.0 * np.pi)
        out[positive] = improve[positive] * ndtr(z) + std[positive] * pdf
    return float(out[0]) if scalar else out


def _make_objective(ds: TaskDataset, config: TaskConfig, spec: TuneSpec, rng):
    labels = ds.required_labels()
    enc_spec = EncoderSpec.for_dataset(ds, config.encoder_k)
    X = encode(ds, enc_spec).data
    per_column = spec.dims == ds.dim
    if not per_column and spec.dims != X.shape[1]:
        raise ValueError(
            f"dims {spec.dims} matches neither the {ds.dim} feature columns "
            f"nor the {X.shape[1]} encoded bits"
        )
    oriented = score_like(labels, ds.label_kind)

    folds = []
    if spec.objective == "validation_tau":
        for _ in range(spec.split_seeds):
            plan = split(ds, spec.split_fraction, int(rng.integers(2**31)))
            tr = plan.train_indices
            va = plan.validation_indices
            y_tr = training_scores(labels[tr], ds.label_kind, config.label_dist)
            folds.append((tr, va, y_tr))
    else:
        y_all = training_scores(labels, ds.label_kind, config.label_dist)
        all_idx = np.arange(ds.n)
        folds.append((all_idx, all_idx, y_all))

    def objective(w: np.ndarray) -> float:
        bits = expand_column_weights(enc_spec, w) if per_column else np.asarray(w)
        kernel = WeightedSqrtRBF(config.kernel_length, bits)
        taus = []
        for tr, va, y_tr in folds:
            try:
                # Constant prior: a richer prior would absorb the signal and
                # leave the kernel (the thing being tuned) smoothing noise.
                prior = LinearMean(np.zeros(X.shape[1]), float(np.mean(y_tr)))
                gp = GaussianProcess(kernel, prior, config.sigma_n2).fit(X[tr], y_tr)
                pred = gp.predict(X[va])
                taus.append(kendall_tau(pred, oriented[va]).tau)
            except (NumericalError, ValueError):
                return FAILED_OBJECTIVE
        return float(np.mean(taus))

    return objective


def tune_weights(
    ds: TaskDataset, config: TaskConfig, spec: TuneSpec
) -> tuple[np.ndarray, TuneTrace]:
    """Maximize held-out tau over the weight box; returns (best weights, trace)."""
    rng = np.random.default_rng(spec.seed)
    objective = _make_objective(ds, config, spec, rng)
    low, high = spec.low, spec.high

    lhs = qmc.LatinHypercube(d=spec.dims, seed=int(rng.integers(2**31)))
    design = low + lhs.random(spec.init_points - 1) * (high - low)
    baseline = np.clip(np.ones(spec.dims), low, high)

    trace = TuneTrace()
    for point in [baseline, *design]:
        trace.add(point, objective(point))

    while len(trace.values) < spec.budget:
        candidates = rng.uniform(low, high, size=(spec.candidates, spec.dims))
        evaluated = np.asarray(trace.points)
        values = np.asarray(trace.values)
        scale = high - low
        try:
            normalized = (evaluated - low) / scale
            prior = fit_linear_mean(normalized, values, ridge=1e-6)
            surrogate = GaussianProcess(
                SqrtRBF(spec.surrogate_length), prior, spec.surrogate_sigma_n2
            ).fit(normalized, values)
            mean, var = surrogate.predict((candidates - low) / scale, return_var=True)
            ei = expected_improvement(mean, np.sqrt(var), values.max())
            chosen = candidates[int(np.argmax(ei))]
        except NumericalError:
            chosen = candidates[0]
        trace.add(chosen, objective(chosen))

    return trace.best_point, trace
