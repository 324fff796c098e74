"""Training loop with frequency-count search and auto-regressive prediction.

Training composes mean removal, endpoint detrending, the wavelet band
split, and a weighted harmonic fit per band. The number of frequencies m
is increased from m_min until the training MSE drops below the
configured threshold; if it never does, the m with minimal MSE wins
(ties toward smaller m).

Multi-step prediction feeds each predicted value back as a
pseudo-observation of weight 1 and, by default, refits on every step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .detrend import DetrendedWindow, detrend
from .errors import NonCausalEpoch, WindowOutOfRange
from .harmonic import BandCoefficients, FrequencyGrid, design_matrix, evaluate_band, frequency_grid, weighted_fit
from .series import PipelineConfig, Sample, TimeSeries, Window
from .wavelets import decompose


@dataclass(frozen=True)
class TrainedModel:
    """Everything needed to evaluate the prediction formula at a new epoch."""

    mean: float
    trend_a: float
    trend_b: float
    grid: FrequencyGrid
    low: BandCoefficients
    high: BandCoefficients
    training_mse: float
    m_used: int
    t_origin: float
    t_last: float

    def evaluate(self, t_rel):
        """Model value at window-relative time(s) t_rel."""
        core = evaluate_band(self.low, self.grid, t_rel) + evaluate_band(self.high, self.grid, t_rel)
        return core + self.trend_a + self.trend_b * t_rel + self.mean


def _normalized_weights(weights: np.ndarray) -> np.ndarray:
    return weights / np.mean(weights)


def _fit_for_m(dw: DetrendedWindow, bands, config: PipelineConfig, m: int):
    grid = frequency_grid(config.f0, len(dw.times), m)
    x = design_matrix(dw.times, grid)
    low = weighted_fit(dw.times, bands.low, dw.weights, grid)
    high = weighted_fit(dw.times, bands.high, dw.weights, grid)
    core = x @ low.stacked() + x @ high.stacked()
    residual = dw.residuals - core
    mse = float(np.mean(_normalized_weights(dw.weights) * residual**2))
    return grid, low, high, mse


def train(window: Window, config: PipelineConfig) -> TrainedModel:
    """Fit the pipeline to one training window.

    The window may be longer than config.n under the growing policy; the
    frequency grid follows the actual window length.
    """
    n = len(window)
    dw = detrend(window)
    bands = decompose(dw.residuals, config.wavelet)

    if config.m_fixed is not None:
        candidates = [config.m_fixed]
    else:
        m_cap = min(config.m_max, (n - 1) // 2)
        candidates = list(range(config.m_min, max(config.m_min, m_cap) + 1))

    best = None
    for m in candidates:
        grid, low, high, mse = _fit_for_m(dw, bands, config, m)
        if best is None or mse < best[3]:
            best = (grid, low, high, mse)
        if mse < config.mse_threshold:
            break

    grid, low, high, mse = best
    return TrainedModel(
        mean=dw.mean,
        trend_a=dw.trend_a,
        trend_b=dw.trend_b,
        grid=grid,
        low=low,
        high=high,
        training_mse=mse,
        m_used=grid.m,
        t_origin=float(window.times[0]),
        t_last=float(window.times[-1]),
    )


def predict_one(model: TrainedModel, t_next: float) -> float:
    """Predict the series value at an epoch after the training window."""
    if t_next <= model.t_last:
        raise NonCausalEpoch(f"t_next={t_next} is not after the window end {model.t_last}")
    return float(model.evaluate(t_next - model.t_origin))


def training_mse(model: TrainedModel, window: Window) -> float:
    """Weighted mean squared reconstruction error over a training window."""
    rec = model.evaluate(window.times - window.times[0])
    err = window.values - rec
    return float(np.mean(_normalized_weights(window.weights) * err**2))


def predict_horizon(series: TimeSeries, config: PipelineConfig, q: int):
    """Predict q future samples auto-regressively.

    Each prediction is appended as a pseudo-observation of weight 1; the
    window then slides (drops the oldest sample) or grows per
    config.window_policy. Returns a list of q predicted Samples.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if len(series.samples) < config.n:
        raise WindowOutOfRange(f"series of {len(series.samples)} shorter than window n={config.n}")

    times = [s.t for s in series.samples]
    values = [s.value for s in series.samples]
    weights = [1.0 if s.sigma is None else 1.0 / (s.sigma * s.sigma) for s in series.samples]
    start = len(times) - config.n

    model = None
    predictions = []
    for _ in range(q):
        if model is None or config.refit_per_step:
            window = Window(
                times=np.array(times[start:]),
                values=np.array(values[start:]),
                weights=np.array(weights[start:]),
            )
            model = train(window, config)
        t_next = times[-1] + series.sampling_interval
        y_next = predict_one(model, t_next)
        predictions.append(Sample(t=t_next, value=y_next))
        times.append(t_next)
        values.append(y_next)
        weights.append(1.0)
        if config.window_policy == "sliding":
            start += 1
    return predictions
