import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from archrank.dataset import TaskDataset
from archrank.encoding import (
    EncodedMatrix,
    EncoderSpec,
    decode,
    encode,
    expand_column_weights,
)
from archrank.errors import DataError

# Golden codes for a single column with 4 categories.
ONE_HOT_GOLDEN = {
    0: [0, 0, 0, 0],
    1: [1, 0, 0, 0],
    2: [0, 1, 0, 0],
    3: [0, 0, 1, 0],
}
TWO_HOT_GOLDEN = {
    0: [0, 0, 0, 0],
    1: [1, 1, 0, 0],
    2: [0, 1, 1, 0],
    3: [0, 0, 1, 1],
}


def single_column_codes(k, cardinality=4):
    spec = EncoderSpec(k=k, cardinalities=(cardinality,))
    values = np.arange(cardinality)[:, None]
    return encode(values, spec).data


class TestGoldenCodes:
    def test_one_hot_rows(self):
        data = single_column_codes(k=1)
        for value, expected in ONE_HOT_GOLDEN.items():
            assert data[value].tolist() == expected

    def test_two_hot_rows(self):
        data = single_column_codes(k=2)
        for value, expected in TWO_HOT_GOLDEN.items():
            assert data[value].tolist() == expected

    def test_nine_hot_width_and_rows(self):
        spec = EncoderSpec(k=9, cardinalities=(4,))
        assert spec.block_width(0) == 11
        data = encode(np.array([[1], [3]]), spec).data
        assert data[0].tolist() == [1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0]
        assert data[1].tolist() == [0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1]

    def test_nine_hot_all_values_brute_force(self):
        # Enumerate every value: k consecutive ones starting at v-1, inside
        # the block, for all v in 0..c-1.
        for c in (2, 3, 4, 7):
            spec = EncoderSpec(k=9, cardinalities=(c,))
            width = spec.block_width(0)
            assert width == (c - 1) + (9 - 1)
            data = encode(np.arange(c)[:, None], spec).data
            assert data[0].sum() == 0
            for v in range(1, c):
                row = data[v]
                ones = np.nonzero(row)[0]
                assert len(ones) == 9
                assert ones.tolist() == list(range(v - 1, v + 8))


class TestWidthRule:
    def test_one_hot_width_is_cardinality(self):
        spec = EncoderSpec(k=1, cardinalities=(4, 6))
        assert [spec.block_width(0), spec.block_width(1)] == [4, 6]

    def test_k_ge_2_width(self):
        for k in (2, 3, 9):
            spec = EncoderSpec(k=k, cardinalities=(5,))
            assert spec.block_width(0) == 5 + k - 2

    def test_offsets(self):
        spec = EncoderSpec(k=2, cardinalities=(3, 4, 2))
        assert spec.offsets().tolist() == [0, 3, 7, 9]
        assert spec.encoded_dim == 9


class TestInverse:
    @settings(max_examples=60, deadline=None)
    @given(
        k=st.sampled_from([1, 2, 3, 9]),
        seed=st.integers(0, 10_000),
        n=st.integers(1, 12),
        dim=st.integers(1, 5),
    )
    def test_decode_encode_identity(self, k, seed, n, dim):
        rng = np.random.default_rng(seed)
        cards = tuple(int(c) for c in rng.integers(2, 8, size=dim))
        feats = rng.integers(0, cards, size=(n, dim))
        spec = EncoderSpec(k=k, cardinalities=cards)
        assert np.array_equal(decode(encode(feats, spec)), feats)

    def test_all_zero_row(self):
        spec = EncoderSpec(k=2, cardinalities=(4, 3))
        m = encode(np.array([[0, 0]]), spec)
        assert m.data.sum() == 0
        assert decode(m).tolist() == [[0, 0]]

    def test_accepts_dataset(self):
        ds = TaskDataset([[0, 1], [2, 0]], [1, 2], cardinalities=[3, 2])
        m = encode(ds, EncoderSpec.for_dataset(ds, 2))
        assert np.array_equal(decode(m), ds.features)


class TestStructuralErrors:
    def test_non_consecutive_ones(self):
        spec = EncoderSpec(k=2, cardinalities=(4,))
        bad = EncodedMatrix(np.array([[1.0, 0.0, 1.0, 0.0]]), spec.offsets(), spec)
        with pytest.raises(DataError, match="consecutive"):
            decode(bad)

    def test_wrong_count(self):
        spec = EncoderSpec(k=2, cardinalities=(4,))
        bad = EncodedMatrix(np.array([[1.0, 1.0, 1.0, 0.0]]), spec.offsets(), spec)
        with pytest.raises(DataError, match="ones"):
            decode(bad)

    def test_one_hot_in_dead_column(self):
        # Width-c one-hot leaves the last block column permanently zero.
        spec = EncoderSpec(k=1, cardinalities=(4,))
        bad = EncodedMatrix(np.array([[0.0, 0.0, 0.0, 1.0]]), spec.offsets(), spec)
        with pytest.raises(DataError, match="outside"):
            decode(bad)

    def test_non_binary(self):
        spec = EncoderSpec(k=1, cardinalities=(4,))
        bad = EncodedMatrix(np.array([[0.5, 0.0, 0.0, 0.0]]), spec.offsets(), spec)
        with pytest.raises(DataError, match="binary"):
            decode(bad)

    def test_value_out_of_range(self):
        spec = EncoderSpec(k=2, cardinalities=(3,))
        with pytest.raises(DataError, match="outside"):
            encode(np.array([[3]]), spec)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            EncoderSpec(k=0, cardinalities=(3,))
        with pytest.raises(ValueError):
            EncoderSpec(k=2, cardinalities=(1,))


class TestSimilarityGradation:
    @pytest.mark.parametrize("k", [2, 3, 9])
    def test_hamming_distance_grows_with_ordinal_distance(self, k):
        for c in (4, 5, 8):
            data = single_column_codes(k=k, cardinality=c)
            for v in range(1, c - 2):
                near = np.abs(data[v] - data[v + 1]).sum()
                far = np.abs(data[v] - data[v + 2]).sum()
                assert near < far

    def test_one_hot_popcount(self):
        data = single_column_codes(k=1, cardinality=6)
        assert data[0].sum() == 0
        assert all(data[v].sum() == 1 for v in range(1, 6))


class TestColumnWeights:
    def test_expansion_layout(self):
        spec = EncoderSpec(k=2, cardinalities=(3, 4))
        expanded = expand_column_weights(spec, [0.5, 2.0])
        assert expanded.tolist() == [0.5, 0.5, 0.5, 2.0, 2.0, 2.0, 2.0]

    def test_wrong_length(self):
        spec = EncoderSpec(k=2, cardinalities=(3, 4))
        with pytest.raises(ValueError):
            expand_column_weights(spec, [1.0])

    def test_serialization_roundtrip(self):
        spec = EncoderSpec(k=9, cardinalities=(3, 5))
        assert EncoderSpec.from_dict(spec.to_dict()) == spec
