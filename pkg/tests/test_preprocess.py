import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from compindex.errors import DegenerateColumnError, MappingError, ShapeError, ValidationError
from compindex.preprocess import (
    COST,
    IndicatorSpec,
    JudgmentMatrix,
    drop_constant_columns,
    minmax_normalize,
    quantize_qualitative,
    zscore_standardize,
)

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


def column(values, direction="benefit"):
    return JudgmentMatrix.from_array(np.array(values, dtype=float)[:, None], directions=[direction])


class TestMinMax:
    def test_benefit(self):
        np.testing.assert_array_equal(minmax_normalize(column([2, 4, 6])).values[:, 0], [0, 0.5, 1])

    def test_cost(self):
        np.testing.assert_array_equal(
            minmax_normalize(column([2, 4, 6], COST)).values[:, 0], [1, 0.5, 0]
        )

    def test_constant(self):
        np.testing.assert_array_equal(minmax_normalize(column([5, 5, 5])).values[:, 0], [0.5] * 3)

    def test_labels_carried(self):
        x = JudgmentMatrix.from_array([[1, 2], [3, 4]], objects=["a", "b"], indicators=["p", "q"])
        r = minmax_normalize(x)
        assert r.objects == ("a", "b")
        assert r.names == ["p", "q"]

    @given(arrays(float, st.tuples(st.integers(2, 10), st.integers(1, 6)), elements=finite))
    def test_range_and_endpoints(self, vals):
        r = minmax_normalize(JudgmentMatrix.from_array(vals)).values
        assert np.all((r >= 0) & (r <= 1))
        for j in range(vals.shape[1]):
            if np.ptp(vals[:, j]) > 0:
                assert r[:, j].min() == 0.0 and r[:, j].max() == 1.0

    @given(
        arrays(float, st.integers(2, 12), elements=st.floats(-100, 100)),
        st.floats(0.5, 10),
        st.floats(-10, 10),
    )
    def test_affine_invariance(self, col, a, b):
        if np.ptp(col) < 1.0:
            return
        base = minmax_normalize(column(col)).values
        moved = minmax_normalize(column(a * col + b)).values
        np.testing.assert_allclose(moved, base, rtol=0, atol=1e-12)

    @given(arrays(float, st.integers(3, 12), elements=st.floats(0, 1)))
    def test_idempotent_on_unit_columns(self, col):
        col = col.copy()
        col[0], col[1] = 0.0, 1.0
        np.testing.assert_array_equal(minmax_normalize(column(col)).values[:, 0], col)

    @given(arrays(float, st.integers(2, 12), elements=finite))
    def test_direction_duality(self, col):
        benefit = minmax_normalize(column(col)).values[:, 0]
        cost = minmax_normalize(column(col, COST)).values[:, 0]
        if np.ptp(col) > 0:
            np.testing.assert_array_equal(cost, 1.0 - benefit)


class TestZScore:
    def test_one_two_three(self):
        np.testing.assert_allclose(zscore_standardize(column([1, 2, 3])).values[:, 0], [-1, 0, 1])

    def test_two_points(self):
        z = zscore_standardize(column([0, 10]))
        np.testing.assert_allclose(z.values[:, 0], [-0.70711, 0.70711], atol=1e-5)
        assert z.stds[0] == pytest.approx(7.07107, abs=1e-5)

    def test_constant_errors_with_name(self):
        x = JudgmentMatrix.from_array([[1, 5], [2, 5], [3, 5]], indicators=["ok", "flat"])
        with pytest.raises(DegenerateColumnError, match="flat"):
            zscore_standardize(x)

    @given(arrays(float, st.tuples(st.integers(3, 30), st.integers(1, 5)), elements=st.floats(-1e3, 1e3)))
    def test_moments(self, vals):
        if np.any(np.ptp(vals, axis=0) < 1e-3):
            return
        z = zscore_standardize(JudgmentMatrix.from_array(vals)).values
        np.testing.assert_allclose(z.mean(axis=0), 0, atol=1e-12)
        np.testing.assert_allclose(z.std(axis=0, ddof=1), 1, atol=1e-12)


class TestQuantize:
    mapping = {"good": 1, "poor": 0}

    def test_good(self):
        np.testing.assert_array_equal(quantize_qualitative(["good"], self.mapping), [1])

    def test_poor(self):
        np.testing.assert_array_equal(quantize_qualitative(["poor"], self.mapping), [0])

    def test_unmapped(self):
        with pytest.raises(MappingError, match="fair"):
            quantize_qualitative(["fair"], self.mapping)


class TestJudgmentMatrix:
    def test_needs_two_objects(self):
        with pytest.raises(ShapeError):
            JudgmentMatrix.from_array([[1.0, 2.0]])

    def test_rejects_nan(self):
        with pytest.raises(ValidationError):
            JudgmentMatrix.from_array([[1.0], [np.nan]])

    def test_duplicate_names(self):
        with pytest.raises(ValidationError, match="duplicate"):
            JudgmentMatrix.from_array([[1, 2], [3, 4]], indicators=["a", "a"])

    def test_bad_direction(self):
        with pytest.raises(ValidationError, match="direction"):
            IndicatorSpec("x", direction="up")

    def test_values_read_only(self):
        x = JudgmentMatrix.from_array([[1, 2], [3, 4]])
        with pytest.raises(ValueError):
            x.values[0, 0] = 9


def test_drop_constant_columns():
    x = JudgmentMatrix.from_array([[1, 5, 2], [2, 5, 3]], indicators=["a", "flat", "b"])
    reduced, dropped = drop_constant_columns(x)
    assert dropped == ["flat"]
    assert reduced.names == ["a", "b"]
