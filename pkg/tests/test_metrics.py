import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from archrank.metrics import TauResult, kendall_tau


def tau_by_pair_enumeration(x, y):
    """O(n^2) oracle: plain Python loops, no vectorization."""
    x = [float(v) for v in x]
    y = [float(v) for v in y]
    n = len(x)
    concordant = discordant = ties_x = ties_y = ties_xy = 0
    for i in range(n - 1):
        for j in range(i + 1, n):
            dx = (x[i] > x[j]) - (x[i] < x[j])
            dy = (y[i] > y[j]) - (y[i] < y[j])
            if dx == 0 and dy == 0:
                ties_x += 1
                ties_y += 1
                ties_xy += 1
            elif dx == 0:
                ties_x += 1
            elif dy == 0:
                ties_y += 1
            elif dx == dy:
                concordant += 1
            else:
                discordant += 1
    total = n * (n - 1) // 2
    tau = (concordant - discordant) / math.sqrt(
        float(total - ties_x) * float(total - ties_y)
    )
    return TauResult(tau, concordant, discordant, ties_x, ties_y, ties_xy)


class TestKnownValues:
    def test_identical_sequences(self):
        assert kendall_tau([1, 2, 3, 4], [1, 2, 3, 4]).tau == 1.0

    def test_reversed(self):
        assert kendall_tau([1, 2, 3, 4], [4, 3, 2, 1]).tau == -1.0

    def test_eight_concordant_two_discordant(self):
        result = kendall_tau([1, 2, 3, 4, 5], [1, 3, 2, 5, 4])
        assert result.concordant == 8
        assert result.discordant == 2
        assert result.tau == pytest.approx(0.6, abs=0)

    def test_tie_counts(self):
        result = kendall_tau([1, 1, 2], [3, 3, 5])
        assert result.ties_x == 1 and result.ties_y == 1 and result.ties_xy == 1
        assert result.tau == 1.0

    def test_total_pairs_accounting(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            n = int(rng.integers(2, 30))
            x = rng.integers(0, 5, n)
            y = rng.integers(0, 5, n)
            if np.all(x == x[0]) or np.all(y == y[0]):
                continue
            result = kendall_tau(x, y)
            assert result.total_pairs == n * (n - 1) // 2


class TestProperties:
    def test_antisymmetry(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            n = int(rng.integers(2, 30))
            x = rng.normal(size=n)
            y = rng.normal(size=n)
            assert kendall_tau(x, -y).tau == pytest.approx(-kendall_tau(x, y).tau)

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 10_000), n=st.integers(3, 40))
    def test_invariance_under_increasing_transforms(self, seed, n):
        rng = np.random.default_rng(seed)
        x = rng.integers(0, 6, n).astype(float)
        y = rng.integers(0, 6, n).astype(float)
        if np.all(x == x[0]) or np.all(y == y[0]):
            return
        base = kendall_tau(x, y)
        for fx in (lambda v: 3 * v + 1, np.exp, lambda v: v**3):
            transformed = kendall_tau(fx(x), y)
            assert transformed.tau == base.tau
            assert transformed.concordant == base.concordant

    def test_matches_oracle_on_tied_vectors(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            n = int(rng.integers(2, 50))
            x = rng.integers(0, 8, n).astype(float)
            y = rng.integers(0, 8, n).astype(float)
            if np.all(x == x[0]) or np.all(y == y[0]):
                continue
            fast = kendall_tau(x, y)
            slow = tau_by_pair_enumeration(list(x), list(y))
            assert fast == slow


class TestErrors:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            kendall_tau([1, 2], [1, 2, 3])

    def test_too_short(self):
        with pytest.raises(ValueError):
            kendall_tau([1], [1])

    def test_all_tied_vector(self):
        with pytest.raises(ValueError, match="all-tied"):
            kendall_tau([2, 2, 2], [1, 2, 3])
        with pytest.raises(ValueError, match="all-tied"):
            kendall_tau([1, 2, 3], [5, 5, 5])
