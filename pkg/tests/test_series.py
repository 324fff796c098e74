import numpy as np
import pytest
from hypothesis import given, strategies as st

from gnsspred.errors import (
    DuplicateEpoch,
    EmptySeries,
    NonFiniteValue,
    NonPositiveSigma,
    WindowOutOfRange,
)
from gnsspred.series import (
    PipelineConfig,
    Sample,
    TimeSeries,
    observation_weight,
    slice_window,
    validate_series,
)

from conftest import make_series


class TestValidateSeries:
    def test_sorted_series_is_returned_unchanged(self):
        series = make_series([1.0, 2.0, 3.0])
        assert validate_series(series) is series

    def test_unsorted_series_is_sorted(self):
        samples = (Sample(t=2.0, value=1.0), Sample(t=0.0, value=2.0), Sample(t=1.0, value=3.0))
        series = TimeSeries("S", "E", samples, 1.0)
        out = validate_series(series)
        assert [s.t for s in out.samples] == [0.0, 1.0, 2.0]

    def test_duplicate_epoch_rejected(self):
        samples = (Sample(t=0.0, value=1.0), Sample(t=0.0, value=2.0))
        with pytest.raises(DuplicateEpoch):
            validate_series(TimeSeries("S", "E", samples, 1.0))

    def test_nan_value_rejected(self):
        with pytest.raises(NonFiniteValue):
            Sample(t=0.0, value=float("nan"))

    def test_empty_series_rejected(self):
        with pytest.raises(EmptySeries):
            validate_series(TimeSeries("S", "E", (), 1.0))


class TestObservationWeight:
    def test_unit_sigma(self):
        assert observation_weight(1.0) == 1.0

    def test_centimeter_sigma(self):
        assert observation_weight(0.01) == pytest.approx(10000.0)

    def test_zero_sigma_rejected(self):
        with pytest.raises(NonPositiveSigma):
            observation_weight(0.0)

    @given(st.floats(min_value=1e-6, max_value=1e3), st.floats(min_value=1e-6, max_value=1e3))
    def test_strictly_decreasing(self, a, b):
        if a < b:
            assert observation_weight(a) > observation_weight(b)


class TestSliceWindow:
    def test_full_series(self):
        series = make_series(np.arange(10.0))
        window = slice_window(series, 9, 10)
        assert len(window) == 10
        assert np.array_equal(window.values, np.arange(10.0))

    def test_out_of_range(self):
        series = make_series(np.arange(10.0))
        with pytest.raises(WindowOutOfRange):
            slice_window(series, 4, 6)

    def test_missing_sigma_gives_unit_weights(self):
        series = make_series([1.0, 2.0, 3.0])
        window = slice_window(series, 2, 3)
        assert np.array_equal(window.weights, np.ones(3))

    def test_sigma_weights(self):
        series = make_series([1.0, 2.0], sigmas=[0.1, 0.01])
        window = slice_window(series, 1, 2)
        assert window.weights == pytest.approx([100.0, 10000.0])

    def test_subwindow_matches_source(self):
        series = make_series(np.arange(20.0), sigmas=[0.1] * 20)
        outer = slice_window(series, 15, 10)
        inner = slice_window(series, 12, 4)
        assert np.array_equal(inner.values, outer.values[3:7])
        assert np.array_equal(inner.times, outer.times[3:7])


class TestPipelineConfig:
    def test_defaults_valid(self):
        PipelineConfig()

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 3},
            {"f0": 0.0},
            {"mse_threshold": 0.0},
            {"m_min": 0},
            {"n": 8, "m_max": 4},  # 2m not overdetermined
            {"window_policy": "bogus"},
        ],
    )
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(ValueError):
            PipelineConfig(**kwargs)
