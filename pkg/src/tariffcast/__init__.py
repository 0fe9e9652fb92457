"""tariffcast: monthly tariff price forecasting with a 19-approach tournament."""

from .arima import (
    ArimaModel,
    ArimaOrder,
    css_residuals,
    fit_arima,
    forecast_arima,
    select_arima_order,
    selection_grid,
)
from .dataset import TariffDataset, ingest_csv
from .decomposition import (
    DecompositionFit,
    SeasonalIndexSet,
    TrendLine,
    decompose,
    forecast_decomposition,
    seasonal_indices_cma,
    seasonal_indices_standard,
)
from .metrics import (
    ErrorTriple,
    approximation_percentage_errors,
    error_triple,
    mad,
    mape,
    mpe,
    msd,
    mse,
    rmse,
)
from .regression import RegressionModel, build_design_matrix, fit_least_squares, forecast_regression
from .result import ForecastResult
from .series import Month, TimeSeries, autocorrelation, centered_moving_average, difference
from .smoothing import (
    PARAM_GRID,
    SmoothingParams,
    double_exponential_forecast,
    holt_winters_forecast,
    optimize_smoothing_params,
    ses_forecast,
)
from .tournament import (
    REGISTRY,
    Approach,
    TournamentReport,
    ValidationReport,
    WindowComparison,
    compare_windows,
    get_approach,
    rank_error_triples,
    run_approach,
    run_tournament,
    select_best,
    validate_holdout,
)

__version__ = "0.1.0"

__all__ = [
    "ArimaModel", "ArimaOrder", "css_residuals", "fit_arima", "forecast_arima",
    "select_arima_order", "selection_grid",
    "TariffDataset", "ingest_csv",
    "DecompositionFit", "SeasonalIndexSet", "TrendLine", "decompose",
    "forecast_decomposition", "seasonal_indices_cma", "seasonal_indices_standard",
    "ErrorTriple", "approximation_percentage_errors", "error_triple",
    "mad", "mape", "mpe", "msd", "mse", "rmse",
    "RegressionModel", "build_design_matrix", "fit_least_squares", "forecast_regression",
    "ForecastResult",
    "Month", "TimeSeries", "autocorrelation", "centered_moving_average", "difference",
    "PARAM_GRID", "SmoothingParams", "double_exponential_forecast",
    "holt_winters_forecast", "optimize_smoothing_params", "ses_forecast",
    "REGISTRY", "Approach", "TournamentReport", "ValidationReport", "WindowComparison",
    "compare_windows", "get_approach", "rank_error_triples", "run_approach",
    "run_tournament", "select_best", "validate_holdout",
]
