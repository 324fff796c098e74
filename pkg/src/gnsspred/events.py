"""Event onset detection from displacement series.

The departure point is the first epoch whose first difference exceeds a
step threshold. The pipeline is trained on a window containing that
departure, predicts forward, and reports the first predicted epoch whose
deviation from the pre-departure baseline exceeds the event threshold,
together with the amplitude of the first ground motion.
"""

from __future__ import annotations

from dataclasses import dataclass, replace as dc_replace
from typing import Optional

import numpy as np

from .errors import NoDeparture, NoEventInHorizon, SeriesTooShort
from .predictor import predict_horizon
from .series import PipelineConfig, TimeSeries


@dataclass(frozen=True)
class EventReport:
    departure_index: int
    predicted_event_time: float
    predicted_first_motion: float
    lead_time: Optional[float]
    training_fraction: float


def find_departure(series: TimeSeries, step_threshold: float) -> int:
    """Index of the first unusual movement (first difference > threshold)."""
    if step_threshold <= 0:
        raise ValueError("step_threshold must be > 0")
    if len(series.samples) < 2:
        raise SeriesTooShort("need at least 2 samples to difference")
    steps = np.abs(np.diff(series.values()))
    hits = np.nonzero(steps > step_threshold)[0]
    if len(hits) == 0:
        raise NoDeparture(
            f"no first difference exceeds {step_threshold} in {series.station_id}/{series.component}"
        )
    return int(hits[0]) + 1


def lead_time(predicted_event_time: float, reference_event_time: float) -> float:
    """Warning margin: reference minus predicted; positive means early."""
    return reference_event_time - predicted_event_time


def _first_motion(deviations: np.ndarray) -> float:
    """Amplitude of the first local extremum of the predicted deviation.

    Falls back to the largest deviation when the horizon ends before the
    predicted motion turns around.
    """
    d = deviations
    if len(d) >= 3:
        diffs = np.diff(d)
        turns = np.nonzero(diffs[:-1] * diffs[1:] < 0)[0]
        if len(turns) > 0:
            return abs(float(d[turns[0] + 1]))
    return float(np.max(np.abs(d)))


def predict_event(
    series: TimeSeries,
    config: PipelineConfig,
    step_threshold: float,
    event_threshold: float,
    horizon: int,
    window_end_offset: int = 0,
    baseline_samples: int = 300,
    reference_event_time: Optional[float] = None,
) -> EventReport:
    """Detect the departure, train up to it, and predict the event forward.

    The training window ends window_end_offset samples after the
    departure index, so the window contains the first unusual movement.
    The baseline is the mean of the last baseline_samples pre-departure
    values.
    """
    departure = find_departure(series, step_threshold)
    end_index = departure + window_end_offset
    if end_index + 1 < config.n or end_index >= len(series.samples):
        raise SeriesTooShort(
            f"training window of n={config.n} ending at {end_index} does not fit the series"
        )

    values = series.values()
    baseline_lo = max(0, departure - baseline_samples)
    baseline = float(np.mean(values[baseline_lo:departure]))

    training = dc_replace(series, samples=series.samples[: end_index + 1])
    predictions = predict_horizon(training, config, horizon)
    pred_times = np.array([p.t for p in predictions])
    pred_values = np.array([p.value for p in predictions])

    deviations = pred_values - baseline
    exceed = np.nonzero(np.abs(deviations) > event_threshold)[0]
    if len(exceed) == 0:
        raise NoEventInHorizon(
            f"no predicted deviation exceeds {event_threshold} within {horizon} steps"
        )
    onset = int(exceed[0])
    event_time = float(pred_times[onset])
    first_motion = _first_motion(deviations[onset:])

    return EventReport(
        departure_index=departure,
        predicted_event_time=event_time,
        predicted_first_motion=first_motion,
        lead_time=None if reference_event_time is None else lead_time(event_time, reference_event_time),
        training_fraction=config.n / len(series.samples),
    )
