"""Outlier detection by forward/backward prediction, and the injection benchmark.

An epoch is flagged only when the observation disagrees with BOTH the
forward prediction (trained on the window before it) and the backward
prediction (trained on the time-reversed window after it); the AND rule
suppresses false positives from one-sided prediction drift. Flagged
values are replaced by the average of the two predictions and the scan
is repeated until it converges or max_iterations is hit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace as dc_replace

import numpy as np

from .errors import SeriesTooShort, TooManyInjections
from .predictor import predict_one, train
from .series import PipelineConfig, Sample, TimeSeries, Window


@dataclass(frozen=True)
class OutlierFlag:
    index: int
    epoch: float
    observed: float
    forward_pred: float
    backward_pred: float
    magnitude_estimate: float


@dataclass(frozen=True)
class InjectionRecord:
    """Ground truth of one simulated corruption."""

    series_id: str
    indices: tuple
    magnitudes: tuple


@dataclass(frozen=True)
class DetectionScore:
    injected_count: int
    detected_count: int
    success_rate: float
    false_positive_count: int


def _predict_at(times, values, weights, lo, hi, t_target, config, reverse):
    """Train on samples [lo, hi] and predict the value at t_target.

    With reverse=True the sample order is flipped and times negated, so
    the standard pipeline predicts backward in time.
    """
    t = times[lo : hi + 1]
    y = values[lo : hi + 1]
    w = weights[lo : hi + 1]
    if reverse:
        t, y, w = -t[::-1], y[::-1], w[::-1]
        t_target = -t_target
    model = train(Window(times=t, values=y, weights=w), config)
    return predict_one(model, t_target)


def detect_outliers(series: TimeSeries, config: PipelineConfig, threshold: float, max_iterations: int = 10):
    """Flag and replace outliers; returns (flags, cleaned series).

    Testable epochs are those with a full window on each side; edge
    epochs are left untouched.
    """
    length = len(series.samples)
    n = config.n
    if length < n + 1:
        raise SeriesTooShort(f"series of {length} too short for window n={n}")

    times = series.times()
    values = series.values()
    sigmas = series.sigmas()
    weights = np.array([1.0 if s is None else 1.0 / (s * s) for s in sigmas])

    testable = range(n, length - n)
    candidates = set(testable)
    flags = {}
    for _ in range(max_iterations):
        exceeding = []
        for i in sorted(candidates):
            if i in flags:
                continue
            fwd = _predict_at(times, values, weights, i - n, i - 1, times[i], config, reverse=False)
            if abs(values[i] - fwd) <= threshold:
                continue
            bwd = _predict_at(times, values, weights, i + 1, i + n, times[i], config, reverse=True)
            if abs(values[i] - bwd) <= threshold:
                continue
            replacement = 0.5 * (fwd + bwd)
            exceeding.append(
                OutlierFlag(
                    index=i,
                    epoch=float(times[i]),
                    observed=float(values[i]),
                    forward_pred=float(fwd),
                    backward_pred=float(bwd),
                    magnitude_estimate=abs(float(values[i]) - replacement),
                )
            )
        if not exceeding:
            break
        # Accept only cluster leaders: the largest deviation within +-n.
        # A large outlier corrupts the prediction windows of its
        # neighbors; those are re-examined after it has been replaced.
        accepted = [
            f
            for f in exceeding
            if all(
                f.magnitude_estimate >= other.magnitude_estimate
                for other in exceeding
                if f.index != other.index and abs(f.index - other.index) <= n
            )
        ]
        candidates = {f.index for f in exceeding}
        for flag in accepted:
            flags[flag.index] = flag
            values[flag.index] = 0.5 * (flag.forward_pred + flag.backward_pred)
            lo = max(n, flag.index - n)
            hi = min(length - n - 1, flag.index + n)
            candidates.update(range(lo, hi + 1))
        candidates -= set(flags)

    cleaned_samples = tuple(
        Sample(t=float(t), value=float(v), sigma=s) for t, v, s in zip(times, values, sigmas)
    )
    cleaned = dc_replace(series, samples=cleaned_samples)
    return sorted(flags.values(), key=lambda f: f.index), cleaned


def inject_outliers(
    series: TimeSeries,
    count: int,
    min_mag: float,
    max_mag: float,
    seed: int,
    margin: int = 0,
):
    """Additively corrupt `count` random epochs with signed magnitudes.

    Magnitudes are uniform in [min_mag, max_mag] with random sign;
    margin keeps injections away from the series edges so that every
    injection falls in the detectable range.
    """
    if count < 2:
        raise ValueError("count must be >= 2 (at least 2 errors per series)")
    if not 0 < min_mag < max_mag:
        raise ValueError("need 0 < min_mag < max_mag")
    length = len(series.samples)
    eligible = length - 2 * margin
    if count > eligible:
        raise TooManyInjections(f"cannot place {count} injections among {eligible} eligible epochs")

    rng = np.random.default_rng(seed)
    indices = np.sort(rng.choice(np.arange(margin, length - margin), size=count, replace=False))
    magnitudes = rng.uniform(min_mag, max_mag, size=count) * rng.choice([-1.0, 1.0], size=count)

    samples = list(series.samples)
    for idx, mag in zip(indices, magnitudes):
        s = samples[idx]
        samples[idx] = Sample(t=s.t, value=s.value + mag, sigma=s.sigma)
    corrupted = dc_replace(series, samples=tuple(samples))
    truth = InjectionRecord(
        series_id=f"{series.station_id}/{series.component}",
        indices=tuple(int(i) for i in indices),
        magnitudes=tuple(float(m) for m in magnitudes),
    )
    return corrupted, truth


def score_detection(truth: InjectionRecord, flags) -> DetectionScore:
    """Per-injection success rate with exact index matching."""
    flagged = {f.index for f in flags}
    injected = set(truth.indices)
    detected = len(injected & flagged)
    injected_count = len(injected)
    rate = 100.0 * detected / injected_count if injected_count else 0.0
    return DetectionScore(
        injected_count=injected_count,
        detected_count=detected,
        success_rate=rate,
        false_positive_count=len(flagged - injected),
    )
