"""Task datasets: ordinal feature vectors with rank or score labels.

A task is a table of architectures, each described by a vector of ordinal
category codes (column j takes values ``0 .. cardinalities[j] - 1``) plus an
optional label.  Rank labels are ascending: rank 1 is the best architecture.
Ties are permitted and share the minimum rank of their group.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DataError

LABEL_KINDS = ("rank", "score")


@dataclass(frozen=True)
class ArchRecord:
    """One architecture: ordinal feature codes and an optional label."""

    features: tuple[int, ...]
    label: float | None = None


@dataclass(frozen=True)
class SplitPlan:
    """Disjoint train/validation index lists produced by :func:`split`."""

    train_indices: np.ndarray
    validation_indices: np.ndarray
    seed: int


class TaskDataset:
    """Immutable table of ordinal feature vectors plus labels.

    Parameters
    ----------
    features : array-like of shape (n, d)
        Non-negative integer category codes.
    labels : array-like of shape (n,), optional
        Rank or score per row; NaN (or None entries) marks a missing label.
    cardinalities : sequence of int, optional
        Declared per-column category counts.  Defaults to the observed
        ``max + 1``; declared values may be larger but never smaller.
    label_kind : {"rank", "score"}
        Interpretation of the labels.  Rank labels must be integers in
        ``1 .. n``.
    task_id : int
        Bookkeeping identifier, e.g. the preset index the data belongs to.
    """

    def __init__(
        self,
        features,
        labels=None,
        cardinalities: Sequence[int] | None = None,
        label_kind: str = "rank",
        task_id: int = 0,
    ):
        feats = np.asarray(features)
        if feats.ndim != 2 or feats.size == 0:
            raise DataError("features must be a non-empty 2-D array")
        if not np.issubdtype(feats.dtype, np.integer):
            if not np.all(feats == np.floor(feats)):
                raise DataError("feature values must be integers")
            feats = feats.astype(np.int64)
        if np.any(feats < 0):
            raise DataError("feature values must be non-negative")
        self.features = feats.astype(np.int64, copy=True)
        self.features.setflags(write=False)

        n, d = self.features.shape
        observed = self.features.max(axis=0) + 1
        if cardinalities is None:
            cards = observed
        else:
            cards = np.asarray(cardinalities, dtype=np.int64)
            if cards.shape != (d,):
                raise DataError(
                    f"declared {cards.size} cardinalities for {d} feature columns"
                )
            bad = np.nonzero(cards < observed)[0]
            if bad.size:
                j = int(bad[0])
                raise DataError(
                    f"column {j} has value {int(observed[j]) - 1} outside the "
                    f"declared cardinality {int(cards[j])}"
                )
        self.cardinalities = cards.astype(np.int64, copy=True)
        self.cardinalities.setflags(write=False)

        if label_kind not in LABEL_KINDS:
            raise DataError(f"label_kind must be one of {LABEL_KINDS}, got {label_kind!r}")
        self.label_kind = label_kind

        if labels is None:
            labs = np.full(n, np.nan)
        else:
            labs = np.array(
                [np.nan if v is None else float(v) for v in labels], dtype=float
            )
            if labs.shape != (n,):
                raise DataError(f"{labs.size} labels for {n} records")
        if label_kind == "rank":
            present = labs[~np.isnan(labs)]
            if present.size and (
                np.any(present != np.floor(present))
                or np.any(present < 1)
                or np.any(present > n)
            ):
                raise DataError(f"rank labels must be integers in 1..{n}")
        self.labels = labs
        self.labels.setflags(write=False)
        self.task_id = int(task_id)

    @classmethod
    def from_records(
        cls,
        records: Iterable[ArchRecord],
        cardinalities: Sequence[int] | None = None,
        label_kind: str = "rank",
        task_id: int = 0,
    ) -> "TaskDataset":
        records = list(records)
        if not records:
            raise DataError("empty dataset")
        dims = {len(r.features) for r in records}
        if len(dims) != 1:
            raise DataError(f"records have mixed feature dimensions {sorted(dims)}")
        feats = np.array([r.features for r in records], dtype=np.int64)
        labels = [r.label for r in records]
        return cls(feats, labels, cardinalities, label_kind, task_id)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def dim(self) -> int:
        return self.features.shape[1]

    @property
    def has_all_labels(self) -> bool:
        return not np.any(np.isnan(self.labels))

    @property
    def records(self) -> list[ArchRecord]:
        return [
            ArchRecord(tuple(int(v) for v in f), None if math.isnan(y) else y)
            for f, y in zip(self.features, self.labels)
        ]

    def required_labels(self) -> np.ndarray:
        """Labels with every entry present, or :class:`DataError`."""
        if not self.has_all_labels:
            missing = int(np.isnan(self.labels).sum())
            raise DataError(f"{missing} records are unlabeled")
        return self.labels

    def __eq__(self, other) -> bool:
        if not isinstance(other, TaskDataset):
            return NotImplemented
        return (
            self.task_id == other.task_id
            and self.label_kind == other.label_kind
            and np.array_equal(self.cardinalities, other.cardinalities)
            and np.array_equal(self.features, other.features)
            and np.array_equal(self.labels, other.labels, equal_nan=True)
        )

    def __repr__(self) -> str:
        return (
            f"TaskDataset(n={self.n}, dim={self.dim}, "
            f"label_kind={self.label_kind!r}, task_id={self.task_id})"
        )


def split(ds: TaskDataset, fraction: float, seed: int) -> SplitPlan:
    """Deterministic disjoint train/validation split.

    ``round(fraction * n)`` rows go to training, the rest to validation;
    both sides must be non-empty.
    """
    if ds.n < 2:
        raise DataError("need at least 2 records to split")
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must be in (0, 1), got {fraction}")
    n_train = int(round(fraction * ds.n))
    if n_train == 0 or n_train == ds.n:
        raise DataError(
            f"fraction {fraction} leaves an empty side for n={ds.n}"
        )
    perm = np.random.default_rng(seed).permutation(ds.n)
    train = np.sort(perm[:n_train])
    val = np.sort(perm[n_train:])
    train.setflags(write=False)
    val.setflags(write=False)
    return SplitPlan(train_indices=train, validation_indices=val, seed=seed)


def load_dataset(
    path,
    cardinalities: Sequence[int] | None = None,
    label_kind: str | None = None,
    task_id: int = 0,
) -> TaskDataset:
    """Read a dataset from a ``.csv`` or ``.json`` file.

    The optional schema arguments override whatever the file declares;
    CSV files declare nothing, so they default to ``label_kind="rank"``
    and observed cardinalities.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"dataset file not found: {path}")
    if path.suffix.lower() == ".json":
        return _load_json(path, cardinalities, label_kind, task_id)
    return _load_csv(path, cardinalities, label_kind or "rank", task_id)


def save_dataset(ds: TaskDataset, path) -> None:
    """Write a dataset as ``.csv`` or ``.json`` (chosen by extension)."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        obj = {
            "cardinalities": [int(c) for c in ds.cardinalities],
            "label_kind": ds.label_kind,
            "task_id": ds.task_id,
            "records": [
                {
                    "features": [int(v) for v in f],
                    "label": None if math.isnan(y) else y,
                }
                for f, y in zip(ds.features, ds.labels)
            ],
        }
        path.write_text(
            json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n",
            encoding="utf-8",
        )
        return
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"f{j}" for j in range(ds.dim)] + ["label"])
        for f, y in zip(ds.features, ds.labels):
            label = "" if math.isnan(y) else _format_label(y)
            writer.writerow([int(v) for v in f] + [label])


def _format_label(y: float) -> str:
    return str(int(y)) if float(y).is_integer() else repr(float(y))


def _load_csv(path, cardinalities, label_kind, task_id) -> TaskDataset:
    with path.open("r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DataError(f"{path}: empty file")
    header = rows[0]
    if not header or header[-1] != "label":
        raise DataError(f"{path}: expected header 'f0,...,label'")
    d = len(header) - 1
    expected = [f"f{j}" for j in range(d)]
    if header[:-1] != expected:
        raise DataError(f"{path}: feature columns must be named f0..f{d - 1}")
    if len(rows) == 1:
        raise DataError(f"{path}: no data rows")
    feats = []
    labels = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != d + 1:
            raise DataError(f"{path}:{lineno}: expected {d + 1} cells, got {len(row)}")
        try:
            feats.append([int(cell) for cell in row[:d]])
        except ValueError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from None
        cell = row[d].strip()
        if cell == "":
            labels.append(None)
        else:
            try:
                labels.append(float(cell))
            except ValueError:
                raise DataError(f"{path}:{lineno}: bad label {cell!r}") from None
    return TaskDataset(np.array(feats), labels, cardinalities, label_kind, task_id)


def _load_json(path, cardinalities, label_kind, task_id) -> TaskDataset:
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: {exc}") from None
    try:
        records = obj["records"]
        feats = [r["features"] for r in records]
        labels = [r.get("label") for r in records]
    except (KeyError, TypeError) as exc:
        raise DataError(f"{path}: malformed dataset object ({exc})") from None
    if not records:
        raise DataError(f"{path}: empty dataset")
    widths = {len(f) for f in feats}
    if len(widths) != 1:
        raise DataError(f"{path}: records have mixed feature dimensions")
    return TaskDataset(
        np.array(feats),
        labels,
        cardinalities if cardinalities is not None else obj.get("cardinalities"),
        label_kind or obj.get("label_kind", "rank"),
        task_id if task_id else obj.get("task_id", 0),
    )
