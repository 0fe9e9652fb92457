"""Trend plus seasonal-dummy multiple regression (approaches 9-10).

The design is an intercept, a linear trend index t = 1..n, and 0/1
indicators for seasons 2..period; season 1 is the baseline.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RankDeficient, TooFewObservations
from .result import ForecastResult, build_result
from .series import TimeSeries


@dataclass(frozen=True, eq=False)
class RegressionModel:
    intercept: float
    trend_coef: float
    dummy_coefs: np.ndarray  # seasons 2..period, in order
    period: int

    def predict(self, t, season) -> np.ndarray:
        """Value at trend index t (1-based) in 1-based season."""
        t = np.asarray(t, dtype=np.float64)
        season = np.asarray(season, dtype=np.int64)
        lookup = np.concatenate(([0.0], self.dummy_coefs))  # season j -> lookup[j-1]
        return self.intercept + self.trend_coef * t + lookup[season - 1]


def _seasons_for(n: int, period: int, anchor_season: int) -> np.ndarray:
    """1-based season of observations t = 1..n with the first in anchor_season."""
    return ((anchor_season - 1 + np.arange(n)) % period) + 1


def build_design_matrix(n: int, period: int, anchor_season: int) -> np.ndarray:
    """n x (period+1) matrix: ones, trend 1..n, dummies for seasons 2..period.

    The matrix is pure coding and is built for any n >= 1; the fitting
    entry points enforce that there are more rows than columns.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if period < 2:
        raise ValueError("period must be at least 2")
    if not 1 <= anchor_season <= period:
        raise ValueError(f"anchor_season must be 1..{period}")
    X = np.zeros((n, period + 1))
    X[:, 0] = 1.0
    X[:, 1] = np.arange(1, n + 1)
    seasons = _seasons_for(n, period, anchor_season)
    rows = np.nonzero(seasons >= 2)[0]
    X[rows, seasons[rows]] = 1.0
    return X


def fit_least_squares(X: np.ndarray, y) -> RegressionModel:
    """Least-squares coefficients for a design produced by build_design_matrix."""
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.size:
        raise ValueError("X must be 2-D with one row per observation")
    coef, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < X.shape[1]:
        raise RankDeficient(f"design matrix rank {rank} < {X.shape[1]} columns")
    return RegressionModel(
        intercept=float(coef[0]),
        trend_coef=float(coef[1]),
        dummy_coefs=coef[2:].copy(),
        period=X.shape[1] - 1,
    )


def forecast_regression(series: TimeSeries, period: int, horizon: int = 12) -> ForecastResult:
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    n = series.n
    if n < period + 2:
        raise TooFewObservations(f"need at least {period + 2} observations for period {period}")
    anchor_season = series.start.season(period) + 1
    X = build_design_matrix(n, period, anchor_season)
    model = fit_least_squares(X, series.values)
    fitted = model.predict(np.arange(1, n + 1), _seasons_for(n, period, anchor_season))
    future_t = np.arange(n + 1, n + horizon + 1)
    future_seasons = ((anchor_season - 1 + future_t - 1) % period) + 1
    forecasts = model.predict(future_t, future_seasons)
    return build_result(series, 0, fitted, forecasts)
