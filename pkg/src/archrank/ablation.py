"""Ablation ladder: measure what each pipeline stage adds on held-out data.

Five rungs, cumulative:

1. ``gp_ordinal`` -- GP on the raw ordinal features, raw (sign-oriented)
   labels as targets.
2. ``gp_encoded`` -- same, on the configured k-hot encoding.
3. ``gp_transformed`` -- adds the rank-to-score label transform.
4. ``ensemble`` -- full base-learner ensemble, plain square-root RBF
   final kernel.
5. ``weighted_ensemble`` -- adds the composite weighted kernel with
   freshly tuned per-feature weights.

Each rung is scored by validation Kendall tau over the given seeds; means
and standard deviations are reported as observations, with no claim that
later rungs must beat earlier ones on any particular dataset.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .config import TaskConfig
from .dataset import TaskDataset, split
from .encoding import EncoderSpec, encode
from .ensemble import fit_ensemble
from .gp import GaussianProcess, fit_linear_mean
from .kernels import SqrtRBF
from .labels import rerank_subset, score_like, training_scores
from .metrics import kendall_tau
from .tuner import TuneSpec, tune_weights

VARIANTS = (
    "gp_ordinal",
    "gp_encoded",
    "gp_transformed",
    "ensemble",
    "weighted_ensemble",
)


@dataclass(frozen=True)
class AblationRow:
    variant: str
    taus: tuple[float, ...]

    @property
    def mean(self) -> float:
        return float(np.mean(self.taus))

    @property
    def std(self) -> float:
        return float(np.std(self.taus))


def _gp_rung(X_tr, y_tr, X_va, config: TaskConfig) -> np.ndarray:
    prior = fit_linear_mean(X_tr, y_tr, config.prior_ridge)
    gp = GaussianProcess(SqrtRBF(config.kernel_length), prior, config.sigma_n2)
    return gp.fit(X_tr, y_tr).predict(X_va)


def run_ablation(
    ds: TaskDataset,
    config: TaskConfig,
    seeds,
    split_fraction: float = 0.8,
    tune_budget: int = 60,
    tune_init: int = 10,
) -> list[AblationRow]:
    """Evaluate all five rungs over the given split seeds."""
    labels = ds.required_labels()
    oriented = score_like(labels, ds.label_kind)
    enc_spec = EncoderSpec.for_dataset(ds, config.encoder_k)
    X_enc = encode(ds, enc_spec).data
    X_raw = ds.features.astype(float)
    beta = config.beta if config.beta is not None else (0.5, 0.5)

    taus = {name: [] for name in VARIANTS}
    for seed in seeds:
        plan = split(ds, split_fraction, int(seed))
        tr, va = plan.train_indices, plan.validation_indices
        truth_va = oriented[va]
        y_raw = oriented[tr]
        y_scores = training_scores(labels[tr], ds.label_kind, config.label_dist)
        ds_tr = rerank_subset(ds, tr)

        pred = _gp_rung(X_raw[tr], y_raw, X_raw[va], config)
        taus["gp_ordinal"].append(kendall_tau(pred, truth_va).tau)

        pred = _gp_rung(X_enc[tr], y_raw, X_enc[va], config)
        taus["gp_encoded"].append(kendall_tau(pred, truth_va).tau)

        pred = _gp_rung(X_enc[tr], y_scores, X_enc[va], config)
        taus["gp_transformed"].append(kendall_tau(pred, truth_va).tau)

        plain = replace(config, beta=None, tuned_weights=None)
        model = fit_ensemble(ds_tr, plain)
        pred, _ = model.predict(ds.features[va])
        taus["ensemble"].append(kendall_tau(pred, truth_va).tau)

        tune_spec = TuneSpec(
            dims=ds.dim, budget=tune_budget, init_points=tune_init, seed=int(seed)
        )
        weights, _ = tune_weights(ds_tr, replace(config, beta=beta), tune_spec)
        weighted = replace(config, beta=beta, tuned_weights=tuple(weights))
        model = fit_ensemble(ds_tr, weighted)
        pred, _ = model.predict(ds.features[va])
        taus["weighted_ensemble"].append(kendall_tau(pred, truth_va).tau)

    return [AblationRow(name, tuple(taus[name])) for name in VARIANTS]
