"""Classical decomposition forecasting: trend line x/+ seasonal indices.

Two index estimators are provided.  The "standard" route detrends the raw
series against a least-squares line and averages the detrended values per
season; the "cma" route forms ratios (or differences) of each observation
to a centered moving average of window = period.  The cyclical component
is ignored throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveValue, SeriesTooShort
from .result import ForecastResult, build_result
from .series import Month, TimeSeries, centered_moving_average

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"
STANDARD = "standard"
CMA = "cma"

_PERIODS = (4, 12)


def _check_model(model: str) -> str:
    if model not in (ADDITIVE, MULTIPLICATIVE):
        raise ValueError(f"model must be '{ADDITIVE}' or '{MULTIPLICATIVE}', got {model!r}")
    return model


def _check_period(period: int) -> int:
    if period not in _PERIODS:
        raise ValueError(f"period must be one of {_PERIODS}, got {period}")
    return period


@dataclass(frozen=True)
class TrendLine:
    """Straight-line trend; t counts months from the fit anchor."""

    intercept: float
    slope: float

    def at(self, t) -> np.ndarray:
        return self.intercept + self.slope * np.asarray(t, dtype=np.float64)


@dataclass(frozen=True, eq=False)
class SeasonalIndexSet:
    """Per-season factors (multiplicative, mean 1) or offsets (additive, mean 0).

    ``indices[j]`` applies to every month whose ``Month.index % period == j``,
    so the keying survives any anchor shift.
    """

    period: int
    model: str
    indices: np.ndarray

    def __post_init__(self) -> None:
        idx = np.asarray(self.indices, dtype=np.float64)
        if idx.shape != (self.period,):
            raise ValueError(f"need exactly {self.period} indices")
        target = float(self.period) if self.model == MULTIPLICATIVE else 0.0
        if abs(float(idx.sum()) - target) > 1e-9:
            raise ValueError("indices are not normalized")
        if self.model == MULTIPLICATIVE and np.any(idx <= 0.0):
            raise NonPositiveValue("multiplicative indices must be strictly positive")
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    def at(self, month: Month) -> float:
        return float(self.indices[month.season(self.period)])

    def for_series(self, series: TimeSeries) -> np.ndarray:
        return self.indices[series.season_positions(self.period)]


@dataclass(frozen=True, eq=False)
class DecompositionFit:
    """Trend, seasonal indices and the leftover irregular component."""

    indices: SeasonalIndexSet
    trend: TrendLine
    irregular: np.ndarray


def _fit_trend(values: np.ndarray) -> TrendLine:
    t = np.arange(values.size, dtype=np.float64)
    slope, intercept = np.polyfit(t, values, 1)
    return TrendLine(intercept=float(intercept), slope=float(slope))


def _normalize(raw: np.ndarray, period: int, model: str) -> np.ndarray:
    if model == MULTIPLICATIVE:
        total = raw.sum()
        if total <= 0.0:
            raise NonPositiveValue("season means must be positive to normalize")
        return raw * (period / total)
    return raw - raw.mean()


def _season_means(detrended: np.ndarray, positions: np.ndarray, period: int) -> np.ndarray:
    means = np.empty(period)
    for j in range(period):
        picked = detrended[positions == j]
        if picked.size == 0:
            raise SeriesTooShort(f"no observations aligned to season {j}")
        means[j] = picked.mean()
    return means


def seasonal_indices_standard(series: TimeSeries, period: int, model: str) -> SeasonalIndexSet:
    """Indices from mean detrended value per season against a least-squares line."""
    _check_period(period)
    _check_model(model)
    if series.n < 2 * period:
        raise SeriesTooShort(f"need at least {2 * period} observations for period {period}")
    trend = _fit_trend(series.values)
    base = trend.at(np.arange(series.n))
    if model == MULTIPLICATIVE:
        series.require_positive("multiplicative decomposition")
        if np.any(base <= 0.0):
            raise NonPositiveValue("trend line is not positive over the sample")
        detrended = series.values / base
    else:
        detrended = series.values - base
    raw = _season_means(detrended, series.season_positions(period), period)
    return SeasonalIndexSet(period, model, _normalize(raw, period, model))


def seasonal_indices_cma(series: TimeSeries, period: int, model: str) -> SeasonalIndexSet:
    """Ratio-to-moving-average (or difference-to-moving-average) indices."""
    _check_period(period)
    _check_model(model)
    if series.n < 2 * period:
        raise SeriesTooShort(f"need at least {2 * period} observations for period {period}")
    cma = centered_moving_average(series, period)
    aligned = series.values[period // 2 : period // 2 + cma.n]
    if model == MULTIPLICATIVE:
        series.require_positive("multiplicative decomposition")
        if np.any(cma.values <= 0.0):
            raise NonPositiveValue("moving average is not positive over the sample")
        detrended = aligned / cma.values
    else:
        detrended = aligned - cma.values
    raw = _season_means(detrended, cma.season_positions(period), period)
    return SeasonalIndexSet(period, model, _normalize(raw, period, model))


def _estimate_indices(
    series: TimeSeries, period: int, model: str, index_method: str
) -> SeasonalIndexSet:
    if index_method == STANDARD:
        return seasonal_indices_standard(series, period, model)
    if index_method == CMA:
        return seasonal_indices_cma(series, period, model)
    raise ValueError(f"index_method must be '{STANDARD}' or '{CMA}', got {index_method!r}")


def decompose(
    series: TimeSeries, period: int, model: str, index_method: str = STANDARD
) -> DecompositionFit:
    """Split the series into trend, season and irregular components.

    Recomposing the parts reproduces the input: T+S+I (additive) or
    T*S*I (multiplicative).
    """
    indices = _estimate_indices(series, period, model, index_method)
    seasonal = indices.for_series(series)
    if model == MULTIPLICATIVE:
        deseasonalized = series.values / seasonal
    else:
        deseasonalized = series.values - seasonal
    trend = _fit_trend(deseasonalized)
    base = trend.at(np.arange(series.n))
    if model == MULTIPLICATIVE:
        composed = base * seasonal
        if np.any(composed == 0.0):
            raise NonPositiveValue("degenerate trend: recomposition hits zero")
        irregular = series.values / composed
    else:
        irregular = series.values - base - seasonal
    return DecompositionFit(indices=indices, trend=trend, irregular=irregular)


def forecast_decomposition(
    series: TimeSeries,
    period: int,
    model: str,
    index_method: str = STANDARD,
    horizon: int = 12,
) -> ForecastResult:
    """Deseasonalize, refit the trend, project it, and re-apply the season."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    fit = decompose(series, period, model, index_method)
    n = series.n
    in_sample = fit.trend.at(np.arange(n))
    future = fit.trend.at(np.arange(n, n + horizon))
    in_season = fit.indices.for_series(series)
    future_positions = (series.start.index + np.arange(n, n + horizon)) % period
    future_season = fit.indices.indices[future_positions]
    if model == MULTIPLICATIVE:
        fitted = in_sample * in_season
        forecasts = future * future_season
    else:
        fitted = in_sample + in_season
        forecasts = future + future_season
    return build_result(series, 0, fitted, forecasts)
