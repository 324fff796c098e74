import numpy as np
import pytest

from gnsspred.harmonic import design_matrix, frequency_grid
from gnsspred.series import Sample, TimeSeries


def make_series(values, dt=1.0, sigmas=None, station="TEST", component="E"):
    values = np.asarray(values, dtype=float)
    if sigmas is None:
        sigmas = [None] * len(values)
    samples = tuple(
        Sample(t=float(i * dt), value=float(v), sigma=s) for i, (v, s) in enumerate(zip(values, sigmas))
    )
    return TimeSeries(station_id=station, component=component, samples=samples, sampling_interval=dt)


def model_space_values(times, grid, coeffs, mean=0.0, trend_a=0.0, trend_b=0.0):
    """Series values generated exactly from the pipeline's own model.

    The periodic part is projected to vanish at the window's last epoch,
    so the endpoint detrend leaves it untouched and a refit recovers the
    coefficients exactly.
    """
    tau = np.asarray(times, dtype=float) - times[0]
    x = design_matrix(tau, grid)
    return mean + trend_a + trend_b * tau + x @ coeffs


def periodic_coeffs(grid, seed, t_last):
    """Random coefficients adjusted so the periodic part is 0 at t_last."""
    rng = np.random.default_rng(seed)
    beta = rng.standard_normal(2 * grid.m)
    row = design_matrix(np.array([float(t_last)]), grid)[0]
    return beta - row * (row @ beta) / (row @ row)


@pytest.fixture
def small_grid():
    return frequency_grid(1.0, 50, 3)
