"""Binary k-hot encodings of ordinal features.

Each ordinal column of cardinality ``c`` becomes a block of binary columns.
Value 0 encodes as all zeros; value ``v >= 1`` places ``k`` consecutive ones
starting at block position ``v - 1``.  Block widths:

* ``k == 1``: width ``c`` (the last block column is always zero),
* ``k >= 2``: width ``c + k - 2``.

Overlapping ones give nearby ordinal values nearby codes, so Hamming
distance grows with ordinal distance once ``k >= 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset import TaskDataset
from .errors import DataError


@dataclass(frozen=True)
class EncoderSpec:
    """Number of consecutive ones ``k`` plus per-column cardinalities."""

    k: int
    cardinalities: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        object.__setattr__(
            self, "cardinalities", tuple(int(c) for c in self.cardinalities)
        )
        if any(c < 2 for c in self.cardinalities):
            raise ValueError("every encoded column needs cardinality >= 2")

    @classmethod
    def for_dataset(cls, ds: TaskDataset, k: int) -> "EncoderSpec":
        return cls(k=k, cardinalities=tuple(int(c) for c in ds.cardinalities))

    def block_width(self, column: int) -> int:
        c = self.cardinalities[column]
        return c if self.k == 1 else c + self.k - 2

    @property
    def dim(self) -> int:
        return len(self.cardinalities)

    @property
    def encoded_dim(self) -> int:
        return sum(self.block_width(j) for j in range(self.dim))

    def offsets(self) -> np.ndarray:
        """Cumulative block starts; length ``dim + 1``, last entry is the total width."""
        widths = [self.block_width(j) for j in range(self.dim)]
        return np.concatenate([[0], np.cumsum(widths)]).astype(np.int64)

    def to_dict(self) -> dict:
        return {"k": self.k, "cardinalities": list(self.cardinalities)}

    @classmethod
    def from_dict(cls, obj: dict) -> "EncoderSpec":
        return cls(k=int(obj["k"]), cardinalities=tuple(obj["cardinalities"]))


@dataclass(frozen=True)
class EncodedMatrix:
    """Binary design matrix plus the layout needed to invert it."""

    data: np.ndarray
    column_offsets: np.ndarray
    spec: EncoderSpec


def _as_features(x) -> np.ndarray:
    if isinstance(x, TaskDataset):
        return x.features
    return np.asarray(x, dtype=np.int64)


def encode(x, spec: EncoderSpec) -> EncodedMatrix:
    """Encode ordinal features (a TaskDataset or an ``(n, d)`` int array)."""
    feats = _as_features(x)
    if feats.ndim != 2 or feats.shape[1] != spec.dim:
        raise DataError(
            f"expected (n, {spec.dim}) features, got shape {feats.shape}"
        )
    offsets = spec.offsets()
    n = feats.shape[0]
    data = np.zeros((n, int(offsets[-1])))
    for j in range(spec.dim):
        col = feats[:, j]
        c = spec.cardinalities[j]
        if np.any(col < 0) or np.any(col >= c):
            bad = int(np.nonzero((col < 0) | (col >= c))[0][0])
            raise DataError(
                f"row {bad}, column {j}: value {int(col[bad])} outside 0..{c - 1}"
            )
        mask = col >= 1
        start = offsets[j] + col - 1
        rows = np.nonzero(mask)[0]
        for t in range(spec.k):
            data[rows, start[mask] + t] = 1.0
    data.setflags(write=False)
    offsets.setflags(write=False)
    return EncodedMatrix(data=data, column_offsets=offsets, spec=spec)


def decode(m: EncodedMatrix) -> np.ndarray:
    """Recover ordinal features; exact inverse of :func:`encode` on valid rows."""
    data = np.asarray(m.data)
    spec = m.spec
    offsets = np.asarray(m.column_offsets)
    if data.ndim != 2 or data.shape[1] != int(offsets[-1]):
        raise DataError(f"matrix width {data.shape} does not match the encoder layout")
    if not np.isin(data, (0.0, 1.0)).all():
        raise DataError("encoded matrix must be binary")
    n = data.shape[0]
    out = np.zeros((n, spec.dim), dtype=np.int64)
    for j in range(spec.dim):
        block = data[:, offsets[j] : offsets[j + 1]]
        counts = block.sum(axis=1).astype(np.int64)
        active = counts > 0
        if np.any(counts[active] != spec.k):
            bad = int(np.nonzero(active & (counts != spec.k))[0][0])
            raise DataError(
                f"row {bad}, column {j}: expected {spec.k} ones, found {int(counts[bad])}"
            )
        first = block.argmax(axis=1)
        # Consecutive-ones check: the k positions after `first` must all be 1.
        rows = np.nonzero(active)[0]
        for t in range(spec.k):
            ok = block[rows, first[rows] + t] == 1.0
            if not np.all(ok):
                bad = int(rows[np.nonzero(~ok)[0][0]])
                raise DataError(f"row {bad}, column {j}: ones are not consecutive")
        values = first + 1
        c = spec.cardinalities[j]
        if np.any(values[active] > c - 1):
            bad = int(np.nonzero(active & (values > c - 1))[0][0])
            raise DataError(
                f"row {bad}, column {j}: decoded value {int(values[bad])} "
                f"outside 0..{c - 1}"
            )
        out[rows, j] = values[rows]
    return out


def expand_column_weights(spec: EncoderSpec, weights: Sequence[float]) -> np.ndarray:
    """Broadcast one weight per ordinal column across its encoded block."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (spec.dim,):
        raise ValueError(f"expected {spec.dim} column weights, got shape {w.shape}")
    return np.repeat(w, [spec.block_width(j) for j in range(spec.dim)])
