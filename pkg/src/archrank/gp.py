"""Gaussian-process regression with a pluggable prior mean.

The posterior mean at test points is

    m(X*) + K(X*, X) (K(X, X) + sigma_n^2 I)^(-1) (y - m(X))

i.e. the prior guess corrected by a gain term built from the Gram matrix.
The linear system is solved through a Cholesky factorization with an
escalating jitter ladder; explicit inversion is reserved for test oracles.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import LinAlgError, cho_solve, cholesky, solve, solve_triangular

from .errors import NumericalError
from .kernels import Kernel, kernel_from_dict

DEFAULT_SIGMA_N2 = 1e-6
# Jitter ladder: 0, then 1e-10 escalating tenfold up to 1e-4.
JITTER_LADDER = (0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4)


class LinearMean:
    """Affine prior mean ``m(x) = w . x + bias``."""

    def __init__(self, weights, bias: float):
        self.weights = np.asarray(weights, dtype=float).copy()
        self.weights.setflags(write=False)
        self.bias = float(bias)

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.shape[1] != self.weights.size:
            raise ValueError(
                f"expected dimension {self.weights.size}, got {X.shape[1]}"
            )
        return X @ self.weights + self.bias

    def to_dict(self) -> dict:
        return {
            "kind": "linear",
            "weights": [float(w) for w in self.weights],
            "bias": self.bias,
        }


class ZeroMean:
    """Prior mean identically zero."""

    def predict(self, X) -> np.ndarray:
        return np.zeros(np.asarray(X).shape[0])

    def to_dict(self) -> dict:
        return {"kind": "zero"}


def fit_linear_mean(X, y, ridge: float = 0.0) -> LinearMean:
    """Least-squares affine fit, optionally ridge-penalized on the weights.

    Minimizes ``||X w + b - y||^2 + ridge * ||w||^2`` (the bias is never
    penalized).  With ``ridge == 0`` and a rank-deficient design the
    minimum-norm weights are returned.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or y.shape != (X.shape[0],):
        raise ValueError(f"inconsistent shapes {X.shape} and {y.shape}")
    if ridge < 0:
        raise ValueError(f"ridge must be non-negative, got {ridge}")
    x_mean = X.mean(axis=0)
    y_mean = y.mean()
    Xc = X - x_mean
    yc = y - y_mean
    if ridge > 0:
        d = X.shape[1]
        gram = Xc.T @ Xc + ridge * np.eye(d)
        w = solve(gram, Xc.T @ yc, assume_a="pos")
    else:
        w, *_ = np.linalg.lstsq(Xc, yc, rcond=None)
    bias = y_mean - float(x_mean @ w)
    return LinearMean(w, bias)


def _factor_with_jitter(A: np.ndarray) -> tuple[np.ndarray, float]:
    n = A.shape[0]
    for jitter in JITTER_LADDER:
        try:
            L = cholesky(A + jitter * np.eye(n), lower=True)
            return L, jitter
        except LinAlgError:
            continue
    raise NumericalError(
        f"covariance matrix is not positive definite even with jitter "
        f"{JITTER_LADDER[-1]:.0e}"
    )


class GaussianProcess:
    """GP regressor; fit once, then predict concurrently.

    Parameters
    ----------
    kernel : Kernel
        Covariance function.
    prior : object with ``predict(X) -> vector``, optional
        Prior mean provider; defaults to zero.
    sigma_n2 : float
        Observation noise variance added to the Gram diagonal.
    """

    def __init__(self, kernel: Kernel, prior=None, sigma_n2: float = DEFAULT_SIGMA_N2):
        if sigma_n2 < 0:
            raise ValueError(f"sigma_n2 must be non-negative, got {sigma_n2}")
        self.kernel = kernel
        self.prior = prior if prior is not None else ZeroMean()
        self.sigma_n2 = float(sigma_n2)
        self.X_train: np.ndarray | None = None
        self.residuals: np.ndarray | None = None
        self.dual: np.ndarray | None = None
        self.chol: np.ndarray | None = None
        self.jitter_used: float | None = None

    def fit(self, X, y) -> "GaussianProcess":
        X = np.atleast_2d(np.asarray(X, dtype=float))
        y = np.asarray(y, dtype=float)
        if y.shape != (X.shape[0],):
            raise ValueError(f"inconsistent shapes {X.shape} and {y.shape}")
        K = self.kernel.gram(X)
        A = K + self.sigma_n2 * np.eye(X.shape[0])
        L, jitter = _factor_with_jitter(A)
        residuals = y - np.asarray(self.prior.predict(X), dtype=float)
        self.X_train = X
        self.residuals = residuals
        self.chol = L
        self.jitter_used = jitter
        self.dual = cho_solve((L, True), residuals)
        return self

    def _check_fitted(self):
        if self.X_train is None:
            raise RuntimeError("predict called before fit")

    def predict(self, X_star, return_var: bool = False):
        """Posterior mean (and optionally variance) at the given points."""
        self._check_fitted()
        X_star = np.atleast_2d(np.asarray(X_star, dtype=float))
        if X_star.shape[1] != self.X_train.shape[1]:
            raise ValueError(
                f"expected dimension {self.X_train.shape[1]}, got {X_star.shape[1]}"
            )
        K_star = self.kernel.gram(X_star, self.X_train)
        mean = np.asarray(self.prior.predict(X_star), dtype=float) + K_star @ self.dual
        if not return_var:
            return mean
        self._ensure_chol()
        v = solve_triangular(self.chol, K_star.T, lower=True)
        k_xx = np.array([self.kernel(x, x) for x in X_star])
        var = np.maximum(k_xx - np.einsum("ij,ij->j", v, v), 0.0)
        return mean, var

    def _ensure_chol(self):
        # Deserialized models drop the factor; rebuild it on demand.
        if self.chol is None:
            K = self.kernel.gram(self.X_train)
            A = K + self.sigma_n2 * np.eye(self.X_train.shape[0])
            self.chol, self.jitter_used = _factor_with_jitter(A)

    def to_dict(self) -> dict:
        self._check_fitted()
        return {
            "kernel": self.kernel.to_dict(),
            "prior": self.prior.to_dict(),
            "sigma_n2": self.sigma_n2,
            "jitter_used": self.jitter_used,
            "x_train": [[float(v) for v in row] for row in self.X_train],
            "residuals": [float(v) for v in self.residuals],
            "dual": [float(v) for v in self.dual],
        }

    @classmethod
    def from_dict(cls, obj: dict, prior=None) -> "GaussianProcess":
        """Rebuild a fitted GP; ``prior`` overrides the serialized descriptor.

        Only ``linear`` and ``zero`` priors self-deserialize; external priors
        (e.g. a base-learner average) must be passed in by the caller.
        """
        if prior is None:
            kind = obj["prior"]["kind"]
            if kind == "linear":
                prior = LinearMean(obj["prior"]["weights"], obj["prior"]["bias"])
            elif kind == "zero":
                prior = ZeroMean()
            else:
                raise ValueError(f"prior kind {kind!r} requires an explicit provider")
        gp = cls(kernel_from_dict(obj["kernel"]), prior, obj["sigma_n2"])
        gp.X_train = np.asarray(obj["x_train"], dtype=float)
        gp.residuals = np.asarray(obj["residuals"], dtype=float)
        gp.dual = np.asarray(obj["dual"], dtype=float)
        gp.jitter_used = obj.get("jitter_used")
        gp.chol = None
        return gp
