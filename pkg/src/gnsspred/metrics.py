"""Forecast error criteria: sMAPE, MASE, StD of errors, and MAE."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, InsufficientData, LengthMismatch, ZeroDenominator


@dataclass(frozen=True)
class EvaluationReport:
    """The four error criteria over one prediction horizon."""

    smape: float
    mase: float
    std: float
    mae: float
    q: int
    n: int


def _pair(actual, predicted):
    y = np.asarray(actual, dtype=float)
    yhat = np.asarray(predicted, dtype=float)
    if y.shape != yhat.shape or y.ndim != 1:
        raise LengthMismatch(f"actual and predicted shapes differ: {y.shape} vs {yhat.shape}")
    if len(y) == 0:
        raise EmptyInput("no predictions to evaluate")
    return y, yhat


def smape(actual, predicted) -> float:
    """Symmetric mean absolute percentage error, in [0, 200] percent.

    A term with both |y| and |yhat| zero contributes 0 (a perfect zero
    prediction of a zero value is not penalized).
    """
    y, yhat = _pair(actual, predicted)
    num = np.abs(y - yhat)
    den = np.abs(y) + np.abs(yhat)
    terms = np.divide(num, den, out=np.zeros_like(num), where=den != 0)
    return float(200.0 / len(y) * np.sum(terms))


def mase(actual, predicted, full_series, n: int, denominator: str = "full") -> float:
    """Mean absolute scaled error.

    The scaling denominator is the naive random-walk absolute-difference
    sum. denominator="full" takes it over the whole concatenated series
    of Q = n + q values; "training" restricts it to the first n values
    (the convention common in the forecasting literature).
    """
    y, yhat = _pair(actual, predicted)
    full = np.asarray(full_series, dtype=float)
    q = len(y)
    if len(full) != n + q:
        raise LengthMismatch(f"full series has {len(full)} values, expected n+q={n + q}")
    if denominator == "full":
        scale = np.sum(np.abs(np.diff(full)))
    elif denominator == "training":
        scale = np.sum(np.abs(np.diff(full[:n])))
    else:
        raise ValueError(f"unknown denominator {denominator!r}")
    if scale == 0:
        raise ZeroDenominator("naive random-walk denominator is zero (constant series)")
    return float((n - 1) / q * np.sum(np.abs(y - yhat)) / scale)


def std_err(actual, predicted) -> float:
    """Sample standard deviation of the errors about their mean."""
    y, yhat = _pair(actual, predicted)
    if len(y) < 2:
        raise InsufficientData("need at least 2 predictions for a standard deviation")
    return float(np.std(y - yhat, ddof=1))


def mae(actual, predicted) -> float:
    """Mean absolute error."""
    y, yhat = _pair(actual, predicted)
    return float(np.mean(np.abs(y - yhat)))


def evaluate(actual, predicted, full_series, n: int, denominator: str = "full") -> EvaluationReport:
    """All four criteria in one report."""
    y, yhat = _pair(actual, predicted)
    return EvaluationReport(
        smape=smape(y, yhat),
        mase=mase(y, yhat, full_series, n, denominator=denominator),
        std=std_err(y, yhat) if len(y) >= 2 else 0.0,
        mae=mae(y, yhat),
        q=len(y),
        n=n,
    )
