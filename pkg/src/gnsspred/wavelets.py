"""Single-level discrete wavelet split into low and high frequency bands.

The split is additive: reconstructing from approximation coefficients
alone gives the low band, from detail coefficients alone the high band,
and low + high reproduces the input exactly for every length >= 2,
odd lengths included.

Boundary handling is symmetric half-point extension (repeated reflection
when the signal is shorter than the filter); synthesis output is trimmed
back to the input length.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnknownWavelet

_SQRT2 = np.sqrt(2.0)

# Reconstruction low-pass filters (orthogonal families); the other three
# filters of each bank follow from the quadrature-mirror relations.
_REC_LO = {
    "haar": np.array([1.0, 1.0]) / _SQRT2,
    "db2": np.array(
        [0.48296291314469025, 0.8365163037378079, 0.22414386804185735, -0.12940952255092145]
    ),
    "db4": np.array(
        [
            0.23037781330885523,
            0.7148465705525415,
            0.6308807679295904,
            -0.02798376941698385,
            -0.18703481171888114,
            0.030841381835986965,
            0.032883011666982945,
            -0.010597401784997278,
        ]
    ),
}

WAVELETS = tuple(sorted(_REC_LO))


@dataclass(frozen=True)
class BandPair:
    """Low and high frequency components whose sum is the input."""

    low: np.ndarray
    high: np.ndarray


def _filter_bank(wavelet: str):
    try:
        rec_lo = _REC_LO[wavelet]
    except KeyError:
        raise UnknownWavelet(f"unknown wavelet {wavelet!r}; supported: {', '.join(WAVELETS)}")
    signs = np.where(np.arange(len(rec_lo)) % 2 == 0, 1.0, -1.0)
    rec_hi = rec_lo[::-1] * signs
    dec_lo = rec_lo[::-1]
    dec_hi = rec_hi[::-1]
    return dec_lo, dec_hi, rec_lo, rec_hi


def _symmetric_extend(x: np.ndarray, pad: int) -> np.ndarray:
    # half-point symmetry, repeated reflection for pad >= len(x)
    n = len(x)
    idx = np.arange(-pad, n + pad) % (2 * n)
    idx = np.where(idx >= n, 2 * n - 1 - idx, idx)
    return x[idx]


def _analyze(x: np.ndarray, dec_lo: np.ndarray, dec_hi: np.ndarray):
    ext = _symmetric_extend(x, len(dec_lo) - 1)
    approx = np.convolve(ext, dec_lo, mode="valid")[1::2]
    detail = np.convolve(ext, dec_hi, mode="valid")[1::2]
    return approx, detail


def _synthesize(coeffs: np.ndarray, rec: np.ndarray, n: int) -> np.ndarray:
    up = np.zeros(2 * len(coeffs))
    up[::2] = coeffs
    full = np.convolve(up, rec)
    start = len(rec) - 2
    return full[start : start + n]


def decompose(residuals, wavelet: str = "haar") -> BandPair:
    """Split a residual vector into additive low and high frequency bands."""
    x = np.asarray(residuals, dtype=float)
    if x.ndim != 1 or len(x) < 2:
        raise ValueError("decompose expects a 1-D vector of length >= 2")
    dec_lo, dec_hi, rec_lo, rec_hi = _filter_bank(wavelet)
    approx, detail = _analyze(x, dec_lo, dec_hi)
    low = _synthesize(approx, rec_lo, len(x))
    high = _synthesize(detail, rec_hi, len(x))
    return BandPair(low=low, high=high)
