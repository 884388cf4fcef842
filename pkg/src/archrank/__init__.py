"""archrank: small-sample architecture performance prediction.

A Gaussian-process pipeline for ranking candidate designs described by
ordinal feature vectors: k-hot binary encodings, rank-to-score label
transforms, composite square-root RBF kernels with tunable per-feature
weights, KNN/SVR base learners averaged into the GP prior mean, and
Kendall-tau-driven Bayesian weight tuning.
"""

__version__ = "0.1.0"

from .ablation import AblationRow, run_ablation
from .config import LEARNER_NAMES, TaskConfig, task_presets
from .dataset import (
    ArchRecord,
    SplitPlan,
    TaskDataset,
    load_dataset,
    save_dataset,
    split,
)
from .encoding import EncodedMatrix, EncoderSpec, decode, encode, expand_column_weights
from .ensemble import EnsembleModel, fit_ensemble
from .errors import ArchRankError, DataError, NumericalError
from .gp import GaussianProcess, LinearMean, ZeroMean, fit_linear_mean
from .kernels import EnsembleKernel, Kernel, SqrtRBF, WeightedSqrtRBF, kernel_from_dict
from .labels import (
    LeftSkewedScores,
    NormalScores,
    ranks_to_scores,
    rerank,
    rerank_subset,
    score_like,
    scores_to_ranks,
    training_scores,
)
from .learners import KNNRegressor, SupportVectorRegressor
from .metrics import TauResult, kendall_tau
from .persistence import load_model, save_model
from .synth import make_synth_task, write_synth_files
from .tuner import TuneSpec, TuneTrace, expected_improvement, tune_weights

__all__ = [
    "AblationRow",
    "ArchRankError",
    "ArchRecord",
    "DataError",
    "EncodedMatrix",
    "EncoderSpec",
    "EnsembleKernel",
    "EnsembleModel",
    "GaussianProcess",
    "KNNRegressor",
    "Kernel",
    "LEARNER_NAMES",
    "LeftSkewedScores",
    "LinearMean",
    "NormalScores",
    "NumericalError",
    "SplitPlan",
    "SqrtRBF",
    "SupportVectorRegressor",
    "TaskConfig",
    "TaskDataset",
    "TauResult",
    "TuneSpec",
    "TuneTrace",
    "WeightedSqrtRBF",
    "ZeroMean",
    "decode",
    "encode",
    "expand_column_weights",
    "expected_improvement",
    "fit_ensemble",
    "fit_linear_mean",
    "kendall_tau",
    "kernel_from_dict",
    "load_dataset",
    "load_model",
    "make_synth_task",
    "ranks_to_scores",
    "rerank",
    "rerank_subset",
    "run_ablation",
    "save_dataset",
    "save_model",
    "score_like",
    "scores_to_ranks",
    "split",
    "task_presets",
    "training_scores",
    "tune_weights",
    "write_synth_files",
]
