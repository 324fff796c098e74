import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gnsspred.detrend import detrend, remove_endpoint_trend, remove_mean, restore
from gnsspred.errors import DegenerateWindow, EmptyWindow
from gnsspred.series import Window


def window_of(values, times=None):
    values = np.asarray(values, dtype=float)
    if times is None:
        times = np.arange(len(values), dtype=float)
    return Window(times=np.asarray(times, float), values=values, weights=np.ones(len(values)))


class TestRemoveMean:
    def test_constant(self):
        centered, mean = remove_mean(window_of([2.0, 2.0, 2.0]))
        assert mean == 2.0
        assert np.array_equal(centered.values, np.zeros(3))

    def test_hand_values(self):
        centered, mean = remove_mean(window_of([1.0, 3.0, 7.0]))
        assert mean == pytest.approx(11.0 / 3.0)
        assert centered.values == pytest.approx([-8.0 / 3.0, -2.0 / 3.0, 10.0 / 3.0])
        assert abs(np.mean(centered.values)) < 1e-12

    def test_empty(self):
        with pytest.raises(EmptyWindow):
            remove_mean(Window(times=np.array([]), values=np.array([]), weights=np.array([])))


class TestRemoveEndpointTrend:
    def test_hand_values(self):
        centered = window_of([-8.0 / 3.0, -2.0 / 3.0, 10.0 / 3.0], times=[0.0, 1.0, 2.0])
        dw = remove_endpoint_trend(centered)
        assert dw.trend_b == pytest.approx(3.0)
        assert dw.trend_a == pytest.approx(-8.0 / 3.0)
        assert dw.residuals == pytest.approx([0.0, -1.0, 0.0])

    def test_linear_values_annihilated(self):
        t = np.arange(8.0)
        dw = remove_endpoint_trend(window_of(0.5 - 0.25 * t, times=t))
        assert np.max(np.abs(dw.residuals)) < 1e-12

    def test_two_points(self):
        dw = remove_endpoint_trend(window_of([1.0, 5.0], times=[0.0, 2.0]))
        assert dw.residuals == pytest.approx([0.0, 0.0])

    def test_endpoint_residuals_zero(self):
        rng = np.random.default_rng(5)
        dw = remove_endpoint_trend(window_of(rng.standard_normal(33)))
        assert abs(dw.residuals[0]) < 1e-12
        assert abs(dw.residuals[-1]) < 1e-12

    def test_coincident_endpoints_rejected(self):
        with pytest.raises(DegenerateWindow):
            remove_endpoint_trend(window_of([1.0, 2.0], times=[3.0, 3.0]))


class TestRestore:
    def test_constant_round_trip(self):
        window = window_of([4.2] * 5)
        dw = detrend(window)
        assert restore(0.0, 10.0, dw) == pytest.approx(4.2)

    def test_hand_values(self):
        window = window_of([1.0, 3.0, 7.0])
        dw = detrend(window)
        # core 0 at t = 3: M + a + b t = 11/3 - 8/3 + 9 = 10
        assert restore(0.0, 3.0, dw) == pytest.approx(10.0)

    def test_round_trip_on_window_epochs(self):
        rng = np.random.default_rng(7)
        values = rng.standard_normal(40)
        window = window_of(values)
        dw = detrend(window)
        restored = restore(dw.residuals, dw.times, dw)
        assert np.max(np.abs(restored - values)) < 1e-10


@settings(max_examples=50)
@given(
    shift=st.floats(min_value=-1e3, max_value=1e3),
    slope=st.floats(min_value=-10.0, max_value=10.0),
)
def test_line_absorbed_by_detrend(shift, slope):
    rng = np.random.default_rng(11)
    t = np.arange(20.0)
    values = rng.standard_normal(20)
    base = detrend(window_of(values, times=t))
    shifted = detrend(window_of(values + shift + slope * t, times=t))
    assert np.max(np.abs(shifted.residuals - base.residuals)) < 1e-10
    assert shifted.mean - base.mean == pytest.approx(shift + slope * np.mean(t), abs=1e-9)
