"""Kernel functions used by the GP and SVR models.

Three variants:

* :class:`SqrtRBF` -- ``exp(-sqrt(||x1 - x2||) / l)``, the square root of the
  Euclidean norm of the difference (an exponential kernel of the distance
  raised to the 1/2 power).
* :class:`WeightedSqrtRBF` -- same shape, but the norm is taken in the
  metric scaled per-dimension by a non-negative diagonal weight vector, so
  individual features can be emphasised or switched off.
* :class:`EnsembleKernel` -- ``beta1 * rbf + beta2 * weighted``, a conic
  combination of the two (sums of kernels are kernels).

With unit weights the weighted kernel reduces exactly to :class:`SqrtRBF`.
Gram matrices over a single point set are built from one distance per
unordered pair and mirrored, so they are bit-exact symmetric.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist


def _as_matrix(x) -> np.ndarray:
    a = np.asarray(x, dtype=float)
    if a.ndim == 1:
        a = a[None, :]
    if a.ndim != 2:
        raise ValueError(f"expected a vector or matrix, got shape {a.shape}")
    return a


def _sq_dists(X: np.ndarray, Y: np.ndarray | None) -> np.ndarray:
    """Pairwise squared Euclidean distances; symmetric case mirrored exactly."""
    if Y is None:
        sq = np.triu(cdist(X, X, "sqeuclidean"), k=1)
        return sq + sq.T
    return cdist(X, Y, "sqeuclidean")


class Kernel:
    """Positive kernel over real vectors."""

    def gram(self, X, Y=None) -> np.ndarray:
        """Matrix of kernel values; ``Y=None`` means ``gram(X, X)``."""
        raise NotImplementedError

    def __call__(self, x1, x2) -> float:
        x1 = _as_matrix(x1)
        x2 = _as_matrix(x2)
        if x1.shape != x2.shape or x1.shape[0] != 1:
            raise ValueError("eval takes two single vectors of equal dimension")
        return float(self.gram(x1, x2)[0, 0])

    def to_dict(self) -> dict:
        raise NotImplementedError


class SqrtRBF(Kernel):
    """``exp(-||x1 - x2||^(1/2) / length)``."""

    def __init__(self, length: float):
        if length <= 0:
            raise ValueError(f"length must be positive, got {length}")
        self.length = float(length)

    def gram(self, X, Y=None) -> np.ndarray:
        X = _as_matrix(X)
        if Y is not None:
            Y = _as_matrix(Y)
            if Y.shape[1] != X.shape[1]:
                raise ValueError(
                    f"dimension mismatch: {X.shape[1]} vs {Y.shape[1]}"
                )
        sq = _sq_dists(X, Y)
        # sq ** 0.25 is the square root of the Euclidean norm.
        return np.exp(-(sq ** 0.25) / self.length)

    def to_dict(self) -> dict:
        return {"kind": "sqrt_rbf", "length": self.length}

    def __repr__(self) -> str:
        return f"SqrtRBF(length={self.length})"


class WeightedSqrtRBF(Kernel):
    """Square-root RBF in the metric ``diag(weights)``.

    The quadratic form ``(x1-x2)^T diag(w) (x1-x2)`` replaces the squared
    Euclidean distance; unit weights recover :class:`SqrtRBF` exactly.
    """

    def __init__(self, length: float, weights):
        if length <= 0:
            raise ValueError(f"length must be positive, got {length}")
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a non-empty vector")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        self.length = float(length)
        self.weights = w.copy()
        self.weights.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.weights.size

    def gram(self, X, Y=None) -> np.ndarray:
        X = _as_matrix(X)
        if X.shape[1] != self.dim:
            raise ValueError(f"expected dimension {self.dim}, got {X.shape[1]}")
        scale = np.sqrt(self.weights)
        Xs = X * scale
        Ys = None
        if Y is not None:
            Y = _as_matrix(Y)
            if Y.shape[1] != self.dim:
                raise ValueError(f"expected dimension {self.dim}, got {Y.shape[1]}")
            Ys = Y * scale
        sq = _sq_dists(Xs, Ys)
        return np.exp(-(sq ** 0.25) / self.length)

    def to_dict(self) -> dict:
        return {
            "kind": "weighted",
            "length": self.length,
            "weights": [float(w) for w in self.weights],
        }

    def __repr__(self) -> str:
        return f"WeightedSqrtRBF(length={self.length}, dim={self.dim})"


class EnsembleKernel(Kernel):
    """``beta1 * k_rbf + beta2 * k_weighted`` with non-negative betas."""

    def __init__(
        self,
        beta1: float,
        beta2: float,
        rbf: SqrtRBF,
        weighted: WeightedSqrtRBF,
    ):
        if beta1 < 0 or beta2 < 0 or beta1 + beta2 <= 0:
            raise ValueError(
                f"betas must be non-negative with a positive sum, got "
                f"({beta1}, {beta2})"
            )
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.rbf = rbf
        self.weighted = weighted

    def gram(self, X, Y=None) -> np.ndarray:
        return self.beta1 * self.rbf.gram(X, Y) + self.beta2 * self.weighted.gram(X, Y)

    def to_dict(self) -> dict:
        return {
            "kind": "ensemble",
            "beta1": self.beta1,
            "beta2": self.beta2,
            "rbf": self.rbf.to_dict(),
            "weighted": self.weighted.to_dict(),
        }

    def __repr__(self) -> str:
        return (
            f"EnsembleKernel(beta1={self.beta1}, beta2={self.beta2}, "
            f"rbf={self.rbf!r}, weighted={self.weighted!r})"
        )


def kernel_from_dict(obj: dict) -> Kernel:
    kind = obj.get("kind")
    if kind == "sqrt_rbf":
        return SqrtRBF(length=obj["length"])
    if kind == "weighted":
        return WeightedSqrtRBF(length=obj["length"], weights=obj["weights"])
    if kind == "ensemble":
        rbf = kernel_from_dict(obj["rbf"])
        weighted = kernel_from_dict(obj["weighted"])
        if not isinstance(rbf, SqrtRBF) or not isinstance(weighted, WeightedSqrtRBF):
            raise ValueError("ensemble kernel needs sqrt_rbf and weighted parts")
        return EnsembleKernel(obj["beta1"], obj["beta2"], rbf, weighted)
    raise ValueError(f"unknown kernel kind {kind!r}")
