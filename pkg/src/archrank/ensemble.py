"""The four-step ensemble pipeline.

1. choose the final kernel (plain square-root RBF, or its composite with a
   per-feature weighted variant),
2. build the base models: GPs on one-hot and two-hot inputs plus optional
   KNN/SVR on the configured encoding,
3. train every base model on the full training set,
4. fit a final GP whose prior mean is the arithmetic mean of the base-model
   predictions, so the posterior corrects the ensemble consensus.

Predictions come back as scores plus competition-style ranks.
"""

from __future__ import annotations

import numpy as np

from .config import GP_ONE_HOT, GP_TWO_HOT, KNN, TaskConfig
from .dataset import TaskDataset
from .encoding import EncodedMatrix, EncoderSpec, decode, encode, expand_column_weights
from .errors import ArchRankError, DataError
from .gp import GaussianProcess, fit_linear_mean
from .kernels import EnsembleKernel, SqrtRBF, WeightedSqrtRBF
from .labels import scores_to_ranks, training_scores
from .learners import KNNRegressor, SupportVectorRegressor


class BaseLearnerMean:
    """Prior mean provider: average of the fitted base learners.

    Operates on the final GP's encoded inputs; rows are decoded back to
    ordinal features and re-encoded per learner, so every member sees the
    representation it was trained on.
    """

    def __init__(self, members, final_spec: EncoderSpec):
        self.members = list(members)
        self.final_spec = final_spec
        self._offsets = final_spec.offsets()

    def predict(self, X) -> np.ndarray:
        feats = decode(EncodedMatrix(np.asarray(X, dtype=float), self._offsets, self.final_spec))
        preds = [
            model.predict(encode(feats, enc_spec).data)
            for _, model, enc_spec in self.members
        ]
        return np.mean(preds, axis=0)

    def to_dict(self) -> dict:
        return {"kind": "base_learner_mean"}


def _fit_stage(stage: str, fn):
    try:
        return fn()
    except (ArchRankError, ValueError) as exc:
        raise type(exc)(f"{stage}: {exc}") from exc


def _final_kernel(config: TaskConfig, spec: EncoderSpec, dim: int):
    rbf = SqrtRBF(config.kernel_length)
    if config.beta is None:
        return rbf
    if config.tuned_weights is None:
        weights = np.ones(spec.encoded_dim)
    else:
        w = np.asarray(config.tuned_weights, dtype=float)
        if w.size == dim:
            weights = expand_column_weights(spec, w)
        elif w.size == spec.encoded_dim:
            weights = w
        else:
            raise DataError(
                f"tuned_weights has {w.size} entries; expected {dim} (per column) "
                f"or {spec.encoded_dim} (per encoded bit)"
            )
    weighted = WeightedSqrtRBF(config.kernel_length, weights)
    return EnsembleKernel(config.beta[0], config.beta[1], rbf, weighted)


def fit_ensemble(ds: TaskDataset, config: TaskConfig) -> "EnsembleModel":
    """Fit the full pipeline on a labeled dataset."""
    labels = ds.required_labels()
    scores = training_scores(labels, ds.label_kind, config.label_dist)

    members = []
    for name in config.base_learners:
        if name in (GP_ONE_HOT, GP_TWO_HOT):
            k = 1 if name == GP_ONE_HOT else 2
        else:
            k = config.encoder_k
        enc_spec = EncoderSpec.for_dataset(ds, k)
        X = encode(ds, enc_spec).data
        if name in (GP_ONE_HOT, GP_TWO_HOT):
            def fit_gp(X=X):
                prior = fit_linear_mean(X, scores, config.prior_ridge)
                return GaussianProcess(
                    SqrtRBF(config.kernel_length), prior, config.sigma_n2
                ).fit(X, scores)

            model = _fit_stage(name, fit_gp)
        elif name == KNN:
            model = _fit_stage(
                name,
                lambda X=X: KNNRegressor(
                    k=min(config.knn_k, ds.n), metric=config.knn_metric
                ).fit(X, scores),
            )
        else:
            model = _fit_stage(
                name,
                lambda X=X: SupportVectorRegressor(
                    SqrtRBF(config.kernel_length),
                    C=config.svr_c,
                    epsilon=config.svr_epsilon,
                    tol=config.svr_tol,
                    max_iter=config.svr_max_iter,
                ).fit(X, scores),
            )
        members.append((name, model, enc_spec))

    final_spec = EncoderSpec.for_dataset(ds, config.encoder_k)
    X_final = encode(ds, final_spec).data
    kernel = _final_kernel(config, final_spec, ds.dim)
    prior = BaseLearnerMean(members, final_spec)
    final_gp = _fit_stage(
        "final_gp",
        lambda: GaussianProcess(kernel, prior, config.sigma_n2).fit(X_final, scores),
    )
    return EnsembleModel(config, members, final_spec, final_gp)


class EnsembleModel:
    """Fitted pipeline: base learners plus the correcting final GP."""

    def __init__(self, config: TaskConfig, members, final_spec: EncoderSpec, final_gp):
        self.config = config
        self.members = list(members)
        self.final_spec = final_spec
        self.final_gp = final_gp

    def predict(self, data) -> tuple[np.ndarray, np.ndarray]:
        """Scores and ranks for a TaskDataset or an ``(n, d)`` feature array."""
        X = encode(data, self.final_spec).data
        scores = self.final_gp.predict(X)
        return scores, scores_to_ranks(scores)

    def prior_mean(self, data) -> np.ndarray:
        """Base-learner average at the given points (diagnostics)."""
        X = encode(data, self.final_spec).data
        return self.final_gp.prior.predict(X)

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "members": [
                {"name": name, "encoder": enc.to_dict(), "model": model.to_dict()}
                for name, model, enc in self.members
            ],
            "final_encoder": self.final_spec.to_dict(),
            "final_gp": self.final_gp.to_dict(),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "EnsembleModel":
        config = TaskConfig.from_dict(obj["config"])
        members = []
        for entry in obj["members"]:
            model_obj = entry["model"]
            kind = model_obj.get("kind", "gp")
            if kind == "knn":
                model = KNNRegressor.from_dict(model_obj)
            elif kind == "svr":
                model = SupportVectorRegressor.from_dict(model_obj)
            else:
                model = GaussianProcess.from_dict(model_obj)
            members.append((entry["name"], model, EncoderSpec.from_dict(entry["encoder"])))
        final_spec = EncoderSpec.from_dict(obj["final_encoder"])
        prior = BaseLearnerMean(members, final_spec)
        final_gp = GaussianProcess.from_dict(obj["final_gp"], prior=prior)
        return cls(config, members, final_spec, final_gp)
