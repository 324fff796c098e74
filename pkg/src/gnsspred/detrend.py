"""Mean removal and endpoint-line detrending of a training window.

Times are shifted to window-relative seconds (first epoch at 0) before
the trend line is computed; this keeps the t-modulated harmonic basis
well conditioned and pins the residual to zero at both window endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateWindow, EmptyWindow
from .series import Window


@dataclass(frozen=True)
class DetrendedWindow:
    """Window residuals after mean and endpoint-line removal.

    times are window-relative seconds; the residual is zero at the first
    and last epoch by construction.
    """

    times: np.ndarray
    residuals: np.ndarray
    weights: np.ndarray
    mean: float
    trend_a: float
    trend_b: float


def remove_mean(window: Window):
    """Subtract the arithmetic mean of the window values.

    Returns the centered window and the removed mean.
    """
    if len(window) == 0:
        raise EmptyWindow("cannot remove the mean of an empty window")
    mean = float(np.mean(window.values))
    centered = Window(times=window.times, values=window.values - mean, weights=window.weights)
    return centered, mean


def remove_endpoint_trend(centered: Window, mean: float = 0.0) -> DetrendedWindow:
    """Remove the line through the first and last window points.

    The endpoint line is used instead of a least-squares line so that a
    single anomalous interior observation cannot tilt the trend.
    """
    if len(centered) < 2:
        raise DegenerateWindow("need at least 2 samples to define the endpoint line")
    t = centered.times - centered.times[0]
    y = centered.values
    if t[-1] == t[0]:
        raise DegenerateWindow("first and last epochs coincide")
    b = (y[0] - y[-1]) / (t[0] - t[-1])
    a = -b * t[-1] + y[-1]
    residuals = y - a - b * t
    return DetrendedWindow(
        times=t, residuals=residuals, weights=centered.weights, mean=mean, trend_a=float(a), trend_b=float(b)
    )


def detrend(window: Window) -> DetrendedWindow:
    """Mean removal followed by endpoint-line detrending."""
    centered, mean = remove_mean(window)
    return remove_endpoint_trend(centered, mean=mean)


def restore(prediction_core, t, detrended: DetrendedWindow):
    """Invert the detrending: core + a + b*t + mean.

    t is window-relative (same origin as detrended.times).
    """
    return prediction_core + detrended.trend_a + detrended.trend_b * t + detrended.mean
