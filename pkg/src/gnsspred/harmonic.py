"""Frequency grid and precision-weighted fit of the t-modulated sinusoid model.

The model for one band is

    y(t) = sum_k  c_k * t * cos(2 pi f_k t) + s_k * t * sin(2 pi f_k t)

with frequencies descending from the fundamental f0 in steps of
df = f0 / (p + 2), where p is the least power of two strictly greater
than the window length n. The basis vanishes at t = 0, matching the
zero residual at the window's first epoch after endpoint detrending.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lstsq

from .errors import NonPositiveF0, TooManyFrequencies, UnderdeterminedSystem
from .series import least_power_of_two_above


@dataclass(frozen=True)
class FrequencyGrid:
    f0: float
    p: int
    df: float
    freqs: np.ndarray

    @property
    def m(self) -> int:
        return len(self.freqs)


@dataclass(frozen=True)
class BandCoefficients:
    """Cosine and sine weights of one band, aligned with a FrequencyGrid."""

    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    @property
    def m(self) -> int:
        return len(self.cos_coeffs)

    def stacked(self) -> np.ndarray:
        """Interleaved [c_1, s_1, ..., c_m, s_m], the design-matrix order."""
        out = np.empty(2 * self.m)
        out[0::2] = self.cos_coeffs
        out[1::2] = self.sin_coeffs
        return out


def frequency_grid(f0: float, n: int, m: int) -> FrequencyGrid:
    """Build the m-frequency grid for a window of n samples."""
    if f0 <= 0:
        raise NonPositiveF0(f"f0 must be > 0, got {f0!r}")
    if m < 1:
        raise TooManyFrequencies(f"m must be >= 1, got {m}")
    p = least_power_of_two_above(n)
    if m > p + 1:
        raise TooManyFrequencies(f"m={m} > p+1={p + 1} would produce non-positive frequencies")
    df = f0 / (p + 2)
    freqs = f0 - np.arange(m) * df
    return FrequencyGrid(f0=f0, p=p, df=df, freqs=freqs)


def design_row(t: float, grid: FrequencyGrid) -> np.ndarray:
    """One design-matrix row [t cos(2pi f_1 t), t sin(2pi f_1 t), ...]."""
    return design_matrix(np.array([t]), grid)[0]


def design_matrix(times, grid: FrequencyGrid) -> np.ndarray:
    t = np.asarray(times, dtype=float)
    phase = 2.0 * np.pi * np.outer(t, grid.freqs)
    out = np.empty((len(t), 2 * grid.m))
    out[:, 0::2] = t[:, None] * np.cos(phase)
    out[:, 1::2] = t[:, None] * np.sin(phase)
    return out


def weighted_fit(times, band_values, weights, grid: FrequencyGrid) -> BandCoefficients:
    """Weighted least-squares coefficients of one band.

    Rows are scaled by sqrt(weight) and solved through a pivoted QR
    factorization; a rank-deficient design yields the minimum-norm
    solution plus a warning instead of an error, so the m-search can
    probe large m safely.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(band_values, dtype=float)
    w = np.asarray(weights, dtype=float)
    n = len(t)
    if n <= 2 * grid.m:
        raise UnderdeterminedSystem(f"n={n} observations cannot determine 2m={2 * grid.m} unknowns")
    sw = np.sqrt(w)
    a = design_matrix(t, grid) * sw[:, None]
    b = y * sw
    coeffs, _, rank, _ = lstsq(a, b, cond=1e-10, lapack_driver="gelsy")
    if rank < 2 * grid.m:
        warnings.warn(
            f"rank-deficient design (rank {rank} < {2 * grid.m}); returning minimum-norm solution",
            stacklevel=2,
        )
    return BandCoefficients(cos_coeffs=coeffs[0::2].copy(), sin_coeffs=coeffs[1::2].copy())


def evaluate_band(coeffs: BandCoefficients, grid: FrequencyGrid, t):
    """Evaluate the band model at window-relative time(s) t."""
    scalar = np.isscalar(t)
    values = design_matrix(np.atleast_1d(np.asarray(t, dtype=float)), grid) @ coeffs.stacked()
    return float(values[0]) if scalar else values
