"""Ranking quality metrics: tie-adjusted Kendall rank correlation (tau-b).

tau-b = (C - D) / sqrt((T - Tx) * (T - Ty)) where C/D count strictly
concordant/discordant pairs, T = n(n-1)/2, and Tx/Ty count pairs tied in
x resp. y (pairs tied in both count toward each).  The implementation is
the direct O(n^2) pair count, vectorized; datasets here are small enough
that nothing faster is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TauResult:
    """Correlation plus the pair counts it was computed from."""

    tau: float
    concordant: int
    discordant: int
    ties_x: int
    ties_y: int
    ties_xy: int

    @property
    def total_pairs(self) -> int:
        # C + D + ties (inclusion-exclusion) partitions all pairs.
        return (
            self.concordant
            + self.discordant
            + self.ties_x
            + self.ties_y
            - self.ties_xy
        )


def kendall_tau(x, y) -> TauResult:
    """Kendall tau-b between two equal-length vectors.

    Raises ``ValueError`` when either vector is constant (the tie
    adjustment makes tau undefined).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError(f"need two equal-length vectors, got {x.shape} and {y.shape}")
    n = x.size
    if n < 2:
        raise ValueError("need at least 2 observations")
    iu, ju = np.triu_indices(n, k=1)
    dx = np.sign(x[iu] - x[ju])
    dy = np.sign(y[iu] - y[ju])
    prod = dx * dy
    concordant = int((prod > 0).sum())
    discordant = int((prod < 0).sum())
    ties_x = int((dx == 0).sum())
    ties_y = int((dy == 0).sum())
    ties_xy = int(((dx == 0) & (dy == 0)).sum())
    total = n * (n - 1) // 2
    denom_x = total - ties_x
    denom_y = total - ties_y
    if denom_x == 0 or denom_y == 0:
        raise ValueError("tau-b is undefined for an all-tied vector")
    tau = (concordant - discordant) / np.sqrt(float(denom_x) * float(denom_y))
    return TauResult(
        tau=float(tau),
        concordant=concordant,
        discordant=discordant,
        ties_x=ties_x,
        ties_y=ties_y,
        ties_xy=ties_xy,
    )
