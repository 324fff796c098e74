"""Core domain types: samples, series, pipeline configuration, windows.

All types are immutable after construction and every operation here is a
pure function, so they are safe to share across threads and processes.
Epochs are 64-bit floating seconds relative to a per-series origin chosen
at ingestion; windows are index based, so gaps in time are permitted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DuplicateEpoch,
    EmptySeries,
    NonFiniteValue,
    NonPositiveSigma,
    WindowOutOfRange,
)

COMPONENTS = ("X", "Y", "Z", "E", "N", "U")

#: fundamental frequency of daily position series, Hz
F0_DAILY = 1.0 / 86400.0


@dataclass(frozen=True)
class Sample:
    """One observation: epoch (s), value (m), optional standard deviation (m)."""

    t: float
    value: float
    sigma: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.t) and math.isfinite(self.value)):
            raise NonFiniteValue(f"non-finite sample at t={self.t!r}")
        if self.sigma is not None:
            if not math.isfinite(self.sigma) or self.sigma <= 0:
                raise NonPositiveSigma(f"sigma must be finite and > 0, got {self.sigma!r}")


@dataclass(frozen=True)
class TimeSeries:
    """Ordered samples for one coordinate component of one station."""

    station_id: str
    component: str
    samples: tuple
    sampling_interval: float

    def __post_init__(self):
        if self.component not in COMPONENTS:
            raise ValueError(f"unknown component {self.component!r}")
        if self.sampling_interval <= 0:
            raise ValueError("sampling_interval must be > 0")
        object.__setattr__(self, "samples", tuple(self.samples))

    def __len__(self):
        return len(self.samples)

    @property
    def f0(self) -> float:
        """Fundamental frequency, the reciprocal of the sampling interval."""
        return 1.0 / self.sampling_interval

    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    def values(self) -> np.ndarray:
        return np.array([s.value for s in self.samples])

    def sigmas(self) -> list:
        return [s.sigma for s in self.samples]


@dataclass(frozen=True)
class PipelineConfig:
    """Tuning knobs of the prediction pipeline.

    n is the training window length in samples, f0 the fundamental
    frequency in Hz, and the frequency count m is either fixed (m_fixed)
    or searched over [m_min, m_max] until the training MSE drops below
    mse_threshold.
    """

    n: int = 128
    f0: float = F0_DAILY
    m_fixed: Optional[int] = None
    m_min: int = 1
    m_max: int = 4
    mse_threshold: float = 1e-6
    wavelet: str = "haar"
    window_policy: str = "sliding"
    refit_per_step: bool = True

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("n must be >= 4")
        if self.f0 <= 0:
            raise ValueError("f0 must be > 0")
        if self.mse_threshold <= 0:
            raise ValueError("mse_threshold must be > 0")
        if self.m_min < 1:
            raise ValueError("m_min must be >= 1")
        p = least_power_of_two_above(self.n)
        for m in (self.m_max, self.m_fixed):
            if m is None:
                continue
            if m > (self.n - 1) // 2:
                raise ValueError(f"m={m} leaves 2m unknowns underdetermined for n={self.n}")
            if m > p + 1:
                raise ValueError(f"m={m} exceeds p+1={p + 1}, grid frequencies not positive")
        if self.m_fixed is None and self.m_max < self.m_min:
            raise ValueError("m_max must be >= m_min")
        if self.window_policy not in ("sliding", "growing"):
            raise ValueError(f"unknown window_policy {self.window_policy!r}")


@dataclass(frozen=True)
class Window:
    """Training data for one prediction step: n epochs, values, weights."""

    times: np.ndarray
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if not (len(times) == len(values) == len(weights)):
            raise ValueError("times, values, weights must have equal lengths")
        if np.any(weights <= 0):
            raise ValueError("weights must be > 0")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)
        for a in (times, values, weights):
            a.setflags(write=False)

    def __len__(self):
        return len(self.times)


def least_power_of_two_above(n: int) -> int:
    """Least power of 2 strictly greater than n (214 -> 256, 256 -> 512)."""
    p = 1
    while p <= n:
        p *= 2
    return p


def validate_series(raw: TimeSeries) -> TimeSeries:
    """Sort samples by epoch and reject duplicates and non-finite values.

    Sample construction already rejects non-finite entries, so here the
    checks left are emptiness and duplicate epochs.
    """
    if len(raw.samples) == 0:
        raise EmptySeries(f"series {raw.station_id}/{raw.component} has no samples")
    ordered = sorted(raw.samples, key=lambda s: s.t)
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.t == prev.t:
            raise DuplicateEpoch(f"duplicate epoch t={cur.t} in {raw.station_id}/{raw.component}")
    if tuple(ordered) == raw.samples:
        return raw
    return replace(raw, samples=tuple(ordered))


def observation_weight(sigma: float) -> float:
    """Precision weight of an observation: 1/sigma^2."""
    if sigma is None or not math.isfinite(sigma) or sigma <= 0:
        raise NonPositiveSigma(f"sigma must be finite and > 0, got {sigma!r}")
    return 1.0 / (sigma * sigma)


def slice_window(series: TimeSeries, end_index: int, n: int) -> Window:
    """The n samples ending at end_index, with 1/sigma^2 weights.

    Samples without a sigma get weight 1, degrading gracefully to
    ordinary least squares.
    """
    if end_index >= len(series.samples) or end_index - n + 1 < 0 or n < 1:
        raise WindowOutOfRange(
            f"window of {n} ending at {end_index} out of range for series of {len(series.samples)}"
        )
    chunk = series.samples[end_index - n + 1 : end_index + 1]
    times = np.array([s.t for s in chunk])
    values = np.array([s.value for s in chunk])
    weights = np.array([1.0 if s.sigma is None else observation_weight(s.sigma) for s in chunk])
    return Window(times=times, values=values, weights=weights)
