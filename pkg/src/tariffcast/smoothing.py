"""Single, double and Holt-Winters exponential smoothing with grid search.

Initialization conventions (all data-driven and deterministic):
  single       F_1 = Y_1
  double       C_1 = Y_1; T_1 = Y_2 - Y_1 (additive) or Y_2 / Y_1 (multiplicative)
  Holt-Winters level = mean of the first season; trend = (second-season
               mean - first-season mean) / L; initial indices = first-season
               values over (or minus) the first-season mean, normalized.

Error triples are always measured on one-step in-sample predictions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadAlpha, BadParams, NonPositiveValue, SeriesTooShort
from .result import ForecastResult, build_result
from .series import TimeSeries

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"

# Shared search grid for every smoothing constant: 0.05, 0.10, ..., 0.95.
PARAM_GRID: tuple[float, ...] = tuple(round(0.05 * i, 2) for i in range(1, 20))


@dataclass(frozen=True)
class SmoothingParams:
    alpha: float
    beta: float | None = None
    gamma: float | None = None


def _check_variant(variant: str) -> str:
    if variant not in (ADDITIVE, MULTIPLICATIVE):
        raise ValueError(f"variant must be '{ADDITIVE}' or '{MULTIPLICATIVE}', got {variant!r}")
    return variant


def ses_forecast(series: TimeSeries, alpha: float, horizon: int = 12) -> ForecastResult:
    """Single exponential smoothing: F_{t+1} = alpha*Y_t + (1-alpha)*F_t.

    Output never depends on any seasonality setting; all horizon steps
    share the same flat forecast.
    """
    if not 0.0 < alpha <= 1.0:
        raise BadAlpha(f"alpha must be in (0, 1], got {alpha}")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if series.n < 2:
        raise SeriesTooShort("single smoothing needs at least 2 observations")
    y = series.values
    n = series.n
    f = np.empty(n)
    f[0] = y[0]
    for t in range(1, n):
        f[t] = alpha * y[t - 1] + (1.0 - alpha) * f[t - 1]
    last = alpha * y[n - 1] + (1.0 - alpha) * f[n - 1]
    return build_result(series, 1, f[1:], np.full(horizon, last))


def double_exponential_forecast(
    series: TimeSeries,
    alpha: float,
    beta: float,
    variant: str = ADDITIVE,
    horizon: int = 12,
) -> ForecastResult:
    """Double smoothing with an additive trend term or a multiplicative ratio.

    Additive:        C_t = a*Y_t + (1-a)(C_{t-1} + T_{t-1}),  F_{t+p} = C_t + p*T_t
    Multiplicative:  C_t = a*Y_t + (1-a)(C_{t-1} * T_{t-1}),  F_{t+p} = C_t * T_t^p
    with T_t = b*(C_t - C_{t-1}) + (1-b)*T_{t-1} (differences become ratios
    in the multiplicative variant).
    """
    _check_variant(variant)
    if not (0.0 < alpha < 1.0 and 0.0 < beta < 1.0):
        raise BadParams(f"alpha and beta must be in (0, 1), got {alpha}, {beta}")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if series.n < 3:
        raise SeriesTooShort("double smoothing needs at least 3 observations")
    y = series.values
    n = series.n
    mult = variant == MULTIPLICATIVE
    if mult:
        series.require_positive("multiplicative double smoothing")
    level = y[0]
    trend = y[1] / y[0] if mult else y[1] - y[0]
    fitted = np.empty(n - 1)
    for t in range(1, n):
        one_step = level * trend if mult else level + trend
        fitted[t - 1] = one_step
        new_level = alpha * y[t] + (1.0 - alpha) * one_step
        if mult:
            if new_level <= 0.0 or level <= 0.0:
                raise NonPositiveValue("multiplicative level left the positive domain")
            trend = beta * (new_level / level) + (1.0 - beta) * trend
        else:
            trend = beta * (new_level - level) + (1.0 - beta) * trend
        level = new_level
    p = np.arange(1, horizon + 1)
    forecasts = level * trend**p if mult else level + p * trend
    return build_result(series, 1, fitted, forecasts)


def holt_winters_forecast(
    series: TimeSeries,
    period: int,
    alpha: float,
    beta: float,
    gamma: float,
    model: str = MULTIPLICATIVE,
    horizon: int = 12,
) -> ForecastResult:
    """Triple smoothing: level + trend + a ring of L seasonal indices.

    Multiplicative: S_t = a*Y_t/I_{t-L} + (1-a)(S_{t-1} + b_{t-1});
                    I_t = g*Y_t/S_t + (1-g)*I_{t-L};
                    F_{t+m} = (S_t + m*b_t) * I_{t-L+m}.
    Additive swaps the ratios for differences and the product for a sum.
    The trend term is additive on the level in both variants.
    """
    _check_variant(model)
    if not (0.0 < alpha < 1.0 and 0.0 < beta < 1.0 and 0.0 < gamma < 1.0):
        raise BadParams(f"constants must be in (0, 1), got {alpha}, {beta}, {gamma}")
    if period < 2:
        raise ValueError("period must be at least 2")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    n = series.n
    if n < 2 * period:
        raise SeriesTooShort(f"need at least {2 * period} observations for period {period}")
    y = series.values
    mult = model == MULTIPLICATIVE
    if mult:
        series.require_positive("multiplicative Holt-Winters")

    first_mean = y[:period].mean()
    second_mean = y[period : 2 * period].mean()
    trend = (second_mean - first_mean) / period
    # Anchor the level at the end of season 1 and measure the initial
    # indices against the season's own trend line; a trend-free line then
    # starts (and stays) with all-zero seasonal terms.
    level = first_mean + trend * (period - 1) / 2.0
    baseline = first_mean + trend * (np.arange(period) - (period - 1) / 2.0)
    if mult:
        if np.any(baseline <= 0.0):
            raise NonPositiveValue("initial trend line must stay positive")
        ring = y[:period] / baseline
        ring = ring * (period / ring.sum())
    else:
        ring = y[:period] - baseline
        ring = ring - ring.mean()
    # seasonal[t] is the index updated at observation t; the first L slots
    # hold the initial ring.
    seasonal = np.empty(n)
    seasonal[:period] = ring

    fitted = np.empty(n - period)
    for t in range(period, n):
        prev_index = seasonal[t - period]
        base = level + trend
        fitted[t - period] = base * prev_index if mult else base + prev_index
        if mult:
            if prev_index <= 0.0:
                raise NonPositiveValue("seasonal index left the positive domain")
            new_level = alpha * y[t] / prev_index + (1.0 - alpha) * base
            if new_level <= 0.0:
                raise NonPositiveValue("level left the positive domain")
            seasonal[t] = gamma * y[t] / new_level + (1.0 - gamma) * prev_index
        else:
            new_level = alpha * (y[t] - prev_index) + (1.0 - alpha) * base
            seasonal[t] = gamma * (y[t] - new_level) + (1.0 - gamma) * prev_index
        trend = beta * (new_level - level) + (1.0 - beta) * trend
        level = new_level

    forecasts = np.empty(horizon)
    for m in range(1, horizon + 1):
        index = seasonal[n - period + (m - 1) % period]
        base = level + m * trend
        forecasts[m - 1] = base * index if mult else base + index
    return build_result(series, period, fitted, forecasts)


def optimize_smoothing_params(
    kind: str,
    series: TimeSeries,
    period: int | None = None,
    model: str = MULTIPLICATIVE,
    objective: str = "mse",
) -> SmoothingParams:
    """Exhaustive grid search over PARAM_GRID minimizing one-step error.

    kind is 'ses', 'double' or 'holt_winters'.  Ties break toward the
    lexicographically smallest (alpha, beta, gamma); the scan order makes
    that automatic.
    """
    measures = {"mse": "msd", "msd": "msd", "mad": "mad", "mape": "mape"}
    if objective not in measures:
        raise ValueError(f"objective must be one of {sorted(measures)}, got {objective!r}")
    attr = measures[objective]

    def score(result: ForecastResult) -> float:
        return getattr(result.errors, attr)

    best: tuple[float, SmoothingParams] | None = None
    if kind == "ses":
        for a in PARAM_GRID:
            s = score(ses_forecast(series, a, horizon=1))
            if best is None or s < best[0]:
                best = (s, SmoothingParams(alpha=a))
    elif kind == "double":
        for a in PARAM_GRID:
            for b in PARAM_GRID:
                s = score(double_exponential_forecast(series, a, b, model, horizon=1))
                if best is None or s < best[0]:
                    best = (s, SmoothingParams(alpha=a, beta=b))
    elif kind == "holt_winters":
        if period is None:
            raise ValueError("holt_winters optimization needs a period")
        for a in PARAM_GRID:
            for b in PARAM_GRID:
                for g in PARAM_GRID:
                    s = score(holt_winters_forecast(series, period, a, b, g, model, horizon=1))
                    if best is None or s < best[0]:
                        best = (s, SmoothingParams(alpha=a, beta=b, gamma=g))
    else:
        raise ValueError(f"kind must be 'ses', 'double' or 'holt_winters', got {kind!r}")
    assert best is not None
    return best[1]
