"""Common forecast-output container shared by every model family."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metrics import ErrorTriple, error_triple
from .series import TimeSeries


@dataclass(frozen=True, eq=False)
class ForecastResult:
    """One-step in-sample fit plus point forecasts plus the error triple.

    ``fitted`` is anchored where the model's first in-sample prediction
    lands (models with warm-up, like Holt-Winters, start late);
    ``forecasts`` is anchored at the month after the last observation.
    ``residuals`` are actual minus fitted over the fitted span.
    """

    fitted: TimeSeries
    residuals: np.ndarray
    forecasts: TimeSeries
    errors: ErrorTriple


def build_result(
    series: TimeSeries,
    fitted_offset: int,
    fitted_values: np.ndarray,
    forecast_values: np.ndarray,
) -> ForecastResult:
    """Assemble a ForecastResult; errors are measured on the fitted span."""
    fitted_values = np.asarray(fitted_values, dtype=np.float64)
    actual = series.values[fitted_offset : fitted_offset + fitted_values.size]
    if actual.size != fitted_values.size:
        raise ValueError("fitted values extend past the observed series")
    return ForecastResult(
        fitted=TimeSeries(series.start.plus(fitted_offset), fitted_values, series.period_hint),
        residuals=actual - fitted_values,
        forecasts=TimeSeries(series.start.plus(series.n), forecast_values, series.period_hint),
        errors=error_triple(actual, fitted_values),
    )
