import numpy as np
import pytest

from gnsspred.errors import NonCausalEpoch, WindowOutOfRange
from gnsspred.harmonic import frequency_grid
from gnsspred.predictor import predict_horizon, predict_one, train, training_mse
from gnsspred.series import PipelineConfig, Window

from conftest import make_series, model_space_values, periodic_coeffs


F0 = 0.31  # avoids aliasing the fundamental at integer epochs


def model_window(n=64, m=3, seed=0, mean=0.2, trend_a=0.05, trend_b=-0.01):
    """A window generated exactly from the pipeline's own model."""
    times = np.arange(float(n))
    grid = frequency_grid(F0, n, m)
    beta = periodic_coeffs(grid, seed, times[-1])
    values = model_space_values(times, grid, beta, mean=mean, trend_a=trend_a, trend_b=trend_b)
    window = Window(times=times, values=values, weights=np.ones(n))
    return window, grid, beta


class TestTrain:
    def test_model_space_recovery(self):
        window, grid, beta = model_window()
        config = PipelineConfig(n=64, f0=F0, m_fixed=3)
        model = train(window, config)
        recovered = model.low.stacked() + model.high.stacked()
        assert recovered == pytest.approx(beta, abs=1e-8)
        assert model.training_mse < 1e-16

    def test_m_search_stops_at_threshold(self):
        window, _, _ = model_window(m=2)
        config = PipelineConfig(n=64, f0=F0, m_min=1, m_max=10, mse_threshold=1e-12)
        model = train(window, config)
        assert model.m_used == 2
        assert model.training_mse < 1e-12

    def test_m_search_picks_best_when_threshold_unreachable(self):
        rng = np.random.default_rng(9)
        window = Window(times=np.arange(32.0), values=rng.standard_normal(32), weights=np.ones(32))
        config = PipelineConfig(n=32, f0=1.0, m_min=1, m_max=5, mse_threshold=1e-30)
        model = train(window, config)
        assert 1 <= model.m_used <= 5
        mses = []
        for m in range(1, 6):
            mses.append(train(window, PipelineConfig(n=32, f0=1.0, m_fixed=m)).training_mse)
        assert model.training_mse == pytest.approx(min(mses))

    def test_training_mse_matches_helper(self):
        window, _, _ = model_window(seed=3)
        model = train(window, PipelineConfig(n=64, f0=F0, m_fixed=3))
        assert training_mse(model, window) == pytest.approx(model.training_mse, abs=1e-12)

    def test_weighted_mse_uses_normalized_weights(self):
        rng = np.random.default_rng(10)
        times = np.arange(24.0)
        values = rng.standard_normal(24)
        w1 = np.ones(24)
        w2 = 7.0 * np.ones(24)
        config = PipelineConfig(n=24, f0=1.0, m_fixed=1)
        m1 = train(Window(times=times, values=values, weights=w1), config)
        m2 = train(Window(times=times, values=values, weights=w2), config)
        assert m2.training_mse == pytest.approx(m1.training_mse)


class TestPredictOne:
    def test_model_space_extrapolation(self):
        window, grid, beta = model_window(seed=5)
        config = PipelineConfig(n=64, f0=F0, m_fixed=3)
        model = train(window, config)
        t_next = window.times[-1] + 1.0
        expected = model_space_values(
            np.append(window.times, t_next), grid, beta, mean=0.2, trend_a=0.05, trend_b=-0.01
        )[-1]
        assert predict_one(model, t_next) == pytest.approx(expected, abs=1e-8)

    def test_non_causal_epoch_rejected(self):
        window, _, _ = model_window()
        model = train(window, PipelineConfig(n=64, f0=F0, m_fixed=3))
        with pytest.raises(NonCausalEpoch):
            predict_one(model, window.times[-1])


class TestPredictHorizon:
    def test_multi_step_model_space(self):
        n, q = 64, 10
        times = np.arange(float(n + q))
        grid = frequency_grid(F0, n, 3)
        beta = periodic_coeffs(grid, 7, times[n - 1])
        truth = model_space_values(times, grid, beta, mean=0.1, trend_a=0.02, trend_b=0.003)
        series = make_series(truth[:n])
        config = PipelineConfig(
            n=n, f0=F0, m_fixed=3, window_policy="growing", refit_per_step=False
        )
        preds = predict_horizon(series, config, q)
        assert len(preds) == q
        pred_values = np.array([p.value for p in preds])
        assert pred_values == pytest.approx(truth[n:], abs=1e-6)

    def test_prediction_epochs_follow_sampling_interval(self):
        series = make_series(np.sin(0.3 * np.arange(40.0)), dt=2.0)
        config = PipelineConfig(n=32, f0=1.0, m_fixed=2)
        preds = predict_horizon(series, config, 3)
        assert [p.t for p in preds] == [80.0, 82.0, 84.0]

    def test_sliding_and_growing_differ(self):
        rng = np.random.default_rng(11)
        series = make_series(np.cumsum(rng.standard_normal(48)) * 0.01)
        base = dict(n=32, f0=1.0, m_fixed=2)
        slide = predict_horizon(series, PipelineConfig(window_policy="sliding", **base), 8)
        grow = predict_horizon(series, PipelineConfig(window_policy="growing", **base), 8)
        assert [p.value for p in slide] != [p.value for p in grow]

    def test_series_shorter_than_window_rejected(self):
        series = make_series(np.zeros(10))
        with pytest.raises(WindowOutOfRange):
            predict_horizon(series, PipelineConfig(n=16, f0=1.0, m_fixed=1), 1)

    def test_q_must_be_positive(self):
        series = make_series(np.zeros(20))
        with pytest.raises(ValueError):
            predict_horizon(series, PipelineConfig(n=16, f0=1.0, m_fixed=1), 0)
