"""KNN and epsilon-insensitive SVR base regressors.

Both reuse the same kernel objects as the GP (anything exposing
``gram(X, Y)`` works for the SVR).  The SVR dual is solved by SMO-style
pairwise coordinate steps on the 2n box-constrained variables
``(alpha, alpha*)`` with maximal-violating-pair selection, the textbook
first-order KKT criterion.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

from .kernels import kernel_from_dict

KNN_METRICS = ("euclidean", "hamming")


class KNNRegressor:
    """Unweighted k-nearest-neighbor regression.

    Distance ties are broken by lower training index.  ``hamming`` is the
    fraction of differing coordinates.
    """

    def __init__(self, k: int = 5, metric: str = "euclidean"):
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        if metric not in KNN_METRICS:
            raise ValueError(f"metric must be one of {KNN_METRICS}, got {metric!r}")
        self.k = int(k)
        self.metric = metric
        self.X_train: np.ndarray | None = None
        self.y_train: np.ndarray | None = None

    def fit(self, X, y) -> "KNNRegressor":
        X = np.atleast_2d(np.asarray(X, dtype=float))
        y = np.asarray(y, dtype=float)
        if y.shape != (X.shape[0],):
            raise ValueError(f"inconsistent shapes {X.shape} and {y.shape}")
        if self.k > X.shape[0]:
            raise ValueError(f"k={self.k} exceeds n={X.shape[0]} training points")
        self.X_train = X
        self.y_train = y
        return self

    def predict(self, X_star) -> np.ndarray:
        if self.X_train is None:
            raise RuntimeError("predict called before fit")
        X_star = np.atleast_2d(np.asarray(X_star, dtype=float))
        dists = cdist(X_star, self.X_train, self.metric)
        # Stable argsort keeps equal distances in training-index order.
        nearest = np.argsort(dists, axis=1, kind="stable")[:, : self.k]
        return self.y_train[nearest].mean(axis=1)

    def to_dict(self) -> dict:
        return {
            "kind": "knn",
            "k": self.k,
            "metric": self.metric,
            "x_train": [[float(v) for v in row] for row in self.X_train],
            "y_train": [float(v) for v in self.y_train],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "KNNRegressor":
        model = cls(k=obj["k"], metric=obj["metric"])
        model.X_train = np.asarray(obj["x_train"], dtype=float)
        model.y_train = np.asarray(obj["y_train"], dtype=float)
        return model


class SupportVectorRegressor:
    """Epsilon-insensitive SVR trained by SMO.

    The dual over ``z = (alpha, alpha*) in [0, C]^{2n}`` with
    ``sum(alpha - alpha*) = 0`` is minimized one maximally KKT-violating
    pair at a time; training stops when the violation drops below ``tol``
    or after ``max_iter`` pair updates (then ``converged`` is False and
    the caller decides).

    Attributes after fit: ``dual_coef`` (= alpha - alpha*), ``bias``,
    ``alpha``, ``alpha_star``, ``converged``.
    """

    def __init__(
        self,
        kernel,
        C: float = 1.0,
        epsilon: float = 0.01,
        tol: float = 1e-3,
        max_iter: int = 1000,
    ):
        if C <= 0:
            raise ValueError(f"C must be positive, got {C}")
        if epsilon < 0:
            raise ValueError(f"epsilon must be non-negative, got {epsilon}")
        if tol <= 0 or max_iter < 1:
            raise ValueError("tol must be positive and max_iter >= 1")
        self.kernel = kernel
        self.C = float(C)
        self.epsilon = float(epsilon)
        self.tol = float(tol)
        self.max_iter = int(max_iter)
        self.X_train: np.ndarray | None = None
        self.y_train: np.ndarray | None = None
        self.dual_coef: np.ndarray | None = None
        self.bias: float | None = None
        self.alpha: np.ndarray | None = None
        self.alpha_star: np.ndarray | None = None
        self.converged: bool = False

    def fit(self, X, y) -> "SupportVectorRegressor":
        X = np.atleast_2d(np.asarray(X, dtype=float))
        y = np.asarray(y, dtype=float)
        n = X.shape[0]
        if y.shape != (n,):
            raise ValueError(f"inconsistent shapes {X.shape} and {y.shape}")
        if n < 2:
            raise ValueError("SVR needs at least 2 training points")

        K = self.kernel.gram(X)
        Kbig = np.vstack([K, K])  # row t of the doubled system -> K[t % n]
        p = np.concatenate([np.ones(n), -np.ones(n)])
        z = np.zeros(2 * n)
        # gradient of 1/2 z'Qz + c'z at z = 0
        g = np.concatenate([self.epsilon - y, self.epsilon + y])
        diag = np.diag(K)

        C = self.C
        converged = False
        for _ in range(self.max_iter):
            up = np.where(p > 0, z < C, z > 0)
            low = np.where(p > 0, z > 0, z < C)
            score = -p * g
            i = int(np.argmax(np.where(up, score, -np.inf)))
            j = int(np.argmin(np.where(low, score, np.inf)))
            violation = score[i] - score[j]
            if violation < self.tol:
                converged = True
                break

            eta = diag[i % n] + diag[j % n] - 2.0 * K[i % n, j % n]
            step = violation / max(eta, 1e-12)
            # z_i moves by +p_i*step, z_j by -p_j*step; stay inside the box,
            # snapping exactly onto a bound when it binds.
            cap_i = (C - z[i]) if p[i] > 0 else z[i]
            cap_j = z[j] if p[j] > 0 else (C - z[j])
            hit_i = hit_j = False
            if step >= min(cap_i, cap_j):
                step = min(cap_i, cap_j)
                hit_i = step == cap_i
                hit_j = step == cap_j
            z[i] += p[i] * step
            z[j] -= p[j] * step
            if hit_i:
                z[i] = C if p[i] > 0 else 0.0
            if hit_j:
                z[j] = 0.0 if p[j] > 0 else C
            z[i] = min(max(z[i], 0.0), C)
            z[j] = min(max(z[j], 0.0), C)
            g += step * p * (Kbig[:, i % n] - Kbig[:, j % n])

        self.converged = converged
        self.X_train = X
        self.y_train = y
        self.alpha = z[:n].copy()
        self.alpha_star = z[n:].copy()
        self.dual_coef = self.alpha - self.alpha_star

        free = (z > 1e-12 * C) & (z < C * (1 - 1e-12))
        if np.any(free):
            self.bias = float(np.mean(-p[free] * g[free]))
        else:
            up = np.where(p > 0, z < C, z > 0)
            low = np.where(p > 0, z > 0, z < C)
            score = -p * g
            hi = score[up].max() if np.any(up) else 0.0
            lo = score[low].min() if np.any(low) else 0.0
            self.bias = float((hi + lo) / 2.0)
        return self

    def predict(self, X_star) -> np.ndarray:
        if self.X_train is None:
            raise RuntimeError("predict called before fit")
        X_star = np.atleast_2d(np.asarray(X_star, dtype=float))
        return self.kernel.gram(X_star, self.X_train) @ self.dual_coef + self.bias

    def dual_objective(self) -> float:
        """Value of the minimized dual at the fitted point.

        1/2 b'Kb + eps * sum(alpha + alpha*) - y'b  with b = alpha - alpha*;
        recomputed from the stored training set (diagnostic use, not
        available on deserialized models).
        """
        if self.y_train is None:
            raise RuntimeError("dual_objective needs the targets seen by fit")
        K = self.kernel.gram(self.X_train)
        b = self.dual_coef
        return float(
            0.5 * b @ K @ b
            + self.epsilon * (self.alpha + self.alpha_star).sum()
            - self.y_train @ b
        )

    def to_dict(self) -> dict:
        return {
            "kind": "svr",
            "kernel": self.kernel.to_dict(),
            "c": self.C,
            "epsilon": self.epsilon,
            "tol": self.tol,
            "max_iter": self.max_iter,
            "converged": self.converged,
            "bias": self.bias,
            "alpha": [float(v) for v in self.alpha],
            "alpha_star": [float(v) for v in self.alpha_star],
            "x_train": [[float(v) for v in row] for row in self.X_train],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "SupportVectorRegressor":
        model = cls(
            kernel_from_dict(obj["kernel"]),
            C=obj["c"],
            epsilon=obj["epsilon"],
            tol=obj["tol"],
            max_iter=obj["max_iter"],
        )
        model.converged = bool(obj["converged"])
        model.bias = float(obj["bias"])
        model.alpha = np.asarray(obj["alpha"], dtype=float)
        model.alpha_star = np.asarray(obj["alpha_star"], dtype=float)
        model.dual_coef = model.alpha - model.alpha_star
        model.X_train = np.asarray(obj["x_train"], dtype=float)
        return model
