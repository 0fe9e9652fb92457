"""Forecast-error measures.

All functions take equal-length 1-D sequences of actual and predicted
values.  MAPE and MPE are returned as percentages (already multiplied by
100); MSD is the same quantity as MSE and the two are kept bit-identical.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, ZeroActual


@dataclass(frozen=True)
class ErrorTriple:
    """The three measures a tournament ranks on."""

    mape: float
    mad: float
    msd: float

    def rank_key(self) -> tuple[float, float, float]:
        return (self.mape, self.mad, self.msd)

    def as_dict(self) -> dict[str, float]:
        return {"mape": self.mape, "mad": self.mad, "msd": self.msd}


def _pairs(actual, predicted) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    if a.ndim != 1 or p.ndim != 1:
        raise ValueError("actual and predicted must be one-dimensional")
    if a.size != p.size:
        raise ValueError(f"length mismatch: {a.size} actual vs {p.size} predicted")
    if a.size == 0:
        raise EmptyInput("error measures need at least one pair")
    return a, p


def _nonzero_actual(a: np.ndarray) -> None:
    if np.any(a == 0.0):
        raise ZeroActual("percentage errors are undefined when an actual value is zero")


def mad(actual, predicted) -> float:
    """Mean absolute deviation: (1/n) sum |Y_t - F_t|."""
    a, p = _pairs(actual, predicted)
    return float(np.mean(np.abs(a - p)))


def mse(actual, predicted) -> float:
    """Mean squared error: (1/n) sum (Y_t - F_t)^2."""
    a, p = _pairs(actual, predicted)
    return float(np.mean((a - p) ** 2))


# Reported as "MSD" in tournament tables; identical to MSE by definition.
msd = mse


def rmse(actual, predicted) -> float:
    return float(np.sqrt(mse(actual, predicted)))


def mape(actual, predicted) -> float:
    """Mean absolute percentage error: (100/n) sum |Y_t - F_t| / |Y_t|."""
    a, p = _pairs(actual, predicted)
    _nonzero_actual(a)
    return float(100.0 * np.mean(np.abs(a - p) / np.abs(a)))


def mpe(actual, predicted) -> float:
    """Mean percentage error: (100/n) sum (Y_t - F_t) / Y_t.

    A large positive value means the forecasts run low (underestimation),
    a large negative value means they run high.
    """
    a, p = _pairs(actual, predicted)
    _nonzero_actual(a)
    return float(100.0 * np.mean((a - p) / a))


def approximation_percentage_errors(actual, predicted) -> np.ndarray:
    """Signed per-period errors 100 * (F_t - Y_t) / Y_t.

    Negative entries mean the forecast undershot the actual value.  Note
    the orientation is opposite to mpe; the mean of these values equals
    -mpe.
    """
    a, p = _pairs(actual, predicted)
    _nonzero_actual(a)
    return 100.0 * (p - a) / a


def error_triple(actual, predicted) -> ErrorTriple:
    return ErrorTriple(
        mape=mape(actual, predicted),
        mad=mad(actual, predicted),
        msd=msd(actual, predicted),
    )
