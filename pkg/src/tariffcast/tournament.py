"""Model tournament: run the nineteen registry approaches, rank, validate.

Every approach is scored on in-sample one-step fitted errors; ranking is
by MAPE, then MAD, then MSD, then the lowest approach id.  Holdout
validation refits on a truncated series so held-out observations can
never leak into a fit.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import arima, decomposition, regression, smoothing
from .errors import ApproachInfeasible, HoldoutTooShort, NoFeasibleApproach, TariffcastError
from .metrics import ErrorTriple, approximation_percentage_errors, error_triple
from .result import ForecastResult
from .series import Month, TimeSeries

REGISTRY_VERSION = "1"
TIE_BREAK = "mape,mad,msd,id"

DECOMPOSITION = "decomposition"
DECOMPOSITION_CMA = "decomposition_cma"
REGRESSION = "regression"
SES = "ses"
DOUBLE = "double"
HOLT_WINTERS = "holt_winters"
ARIMA = "arima"


@dataclass(frozen=True)
class Approach:
    id: int
    descriptor: str
    family: str
    model: str | None
    seasonality: int | None


def _approach(id_, descriptor, family, model, seasonality):
    return Approach(id_, descriptor, family, model, seasonality)


REGISTRY: tuple[Approach, ...] = (
    _approach(1, "Classical decomposition with multiplicative model with seasonality is 12",
              DECOMPOSITION, "multiplicative", 12),
    _approach(2, "Classical decomposition with multiplicative model with seasonality is 4",
              DECOMPOSITION, "multiplicative", 4),
    _approach(3, "Classical decomposition with additive model with seasonality is 12",
              DECOMPOSITION, "additive", 12),
    _approach(4, "Classical decomposition with additive model with seasonality is 4",
              DECOMPOSITION, "additive", 4),
    _approach(5, "Classical decomposition with centering moving averages with multiplicative "
                 "model with seasonality is 12", DECOMPOSITION_CMA, "multiplicative", 12),
    _approach(6, "Classical decomposition with centering moving averages with multiplicative "
                 "model with seasonality is 4", DECOMPOSITION_CMA, "multiplicative", 4),
    _approach(7, "Classical decomposition with centering moving averages with additive "
                 "model with seasonality is 12", DECOMPOSITION_CMA, "additive", 12),
    _approach(8, "Classical decomposition with centering moving averages with additive "
                 "model with seasonality is 4", DECOMPOSITION_CMA, "additive", 4),
    _approach(9, "Forecasting with regression equation with seasonality is 12",
              REGRESSION, None, 12),
    _approach(10, "Forecasting with regression equation with seasonality is 4",
              REGRESSION, None, 4),
    _approach(11, "Single exponential smoothing with seasonality is 12", SES, None, 12),
    _approach(12, "Single exponential smoothing with seasonality is 4", SES, None, 4),
    _approach(13, "Double exponential smoothing with seasonality is 12 with multiplicative model",
              DOUBLE, "multiplicative", 12),
    _approach(14, "Double exponential smoothing with additive model with seasonality is 12",
              DOUBLE, "additive", 12),
    _approach(15, "Double exponential smoothing with multiplicative model with seasonality is 4",
              DOUBLE, "multiplicative", 4),
    _approach(16, "Double exponential smoothing with additive model with seasonality is 4",
              DOUBLE, "additive", 4),
    _approach(17, "Holt Winter's model with ideal coefficients with seasonality is 12",
              HOLT_WINTERS, "multiplicative", 12),
    _approach(18, "Holt Winter's model with ideal coefficients with seasonality is 4",
              HOLT_WINTERS, "multiplicative", 4),
    _approach(19, "ARIMA models", ARIMA, None, None),
)


def get_approach(approach_id: int) -> Approach:
    if not 1 <= approach_id <= len(REGISTRY):
        raise ValueError(f"approach id must be 1..{len(REGISTRY)}, got {approach_id}")
    return REGISTRY[approach_id - 1]


def run_approach(
    approach: Approach | int,
    series: TimeSeries,
    horizon: int = 12,
    arima_seasonality: int | None = None,
) -> ForecastResult:
    """Dispatch one registry row; precondition failures become ApproachInfeasible."""
    if isinstance(approach, int):
        approach = get_approach(approach)
    try:
        if approach.family == DECOMPOSITION:
            return decomposition.forecast_decomposition(
                series, approach.seasonality, approach.model, decomposition.STANDARD, horizon)
        if approach.family == DECOMPOSITION_CMA:
            return decomposition.forecast_decomposition(
                series, approach.seasonality, approach.model, decomposition.CMA, horizon)
        if approach.family == REGRESSION:
            return regression.forecast_regression(series, approach.seasonality, horizon)
        if approach.family == SES:
            # The declared seasonality is registry metadata only: single
            # smoothing never reads it, so rows 11 and 12 coincide.
            params = smoothing.optimize_smoothing_params(SES, series)
            return smoothing.ses_forecast(series, params.alpha, horizon)
        if approach.family == DOUBLE:
            params = smoothing.optimize_smoothing_params(DOUBLE, series, model=approach.model)
            return smoothing.double_exponential_forecast(
                series, params.alpha, params.beta, approach.model, horizon)
        if approach.family == HOLT_WINTERS:
            params = smoothing.optimize_smoothing_params(
                HOLT_WINTERS, series, period=approach.seasonality, model=approach.model)
            return smoothing.holt_winters_forecast(
                series, approach.seasonality, params.alpha, params.beta, params.gamma,
                approach.model, horizon)
        if approach.family == ARIMA:
            s = arima_seasonality or series.period_hint or 12
            order = arima.select_arima_order(series, s)
            model = arima.fit_arima(series, order)
            return arima.forecast_arima(series, model, horizon)
    except ApproachInfeasible:
        raise
    except TariffcastError as exc:
        raise ApproachInfeasible(f"approach {approach.id}: {exc}") from exc
    raise ValueError(f"unknown approach family {approach.family!r}")


@dataclass(frozen=True, eq=False)
class ApproachOutcome:
    approach: Approach
    status: str  # "ok" | "infeasible"
    result: ForecastResult | None = None
    reason: str | None = None

    @property
    def errors(self) -> ErrorTriple | None:
        return self.result.errors if self.result is not None else None


@dataclass(frozen=True, eq=False)
class TournamentReport:
    outcomes: tuple[ApproachOutcome, ...]  # ordered by approach id
    ranking: tuple[int, ...]  # approach ids, best first, infeasible last
    winner: Approach
    horizon: int
    train_start: Month
    train_end: Month
    arima_seasonality: int

    def outcome_for(self, approach_id: int) -> ApproachOutcome:
        return self.outcomes[approach_id - 1]

    @property
    def winner_result(self) -> ForecastResult:
        result = self.outcome_for(self.winner.id).result
        assert result is not None
        return result


def rank_error_triples(triples: dict[int, ErrorTriple]) -> list[int]:
    """Order approach ids by (MAPE, MAD, MSD, id) ascending; the selector."""
    return sorted(triples, key=lambda i: (*triples[i].rank_key(), i))


def select_best(triples: dict[int, ErrorTriple]) -> int:
    if not triples:
        raise NoFeasibleApproach("no error triples to select from")
    return rank_error_triples(triples)[0]


def run_tournament(
    series: TimeSeries,
    horizon: int = 12,
    arima_seasonality: int = 12,
    workers: int = 1,
) -> TournamentReport:
    """Run all nineteen approaches and rank them.

    Approaches are independent; `workers` > 1 evaluates them in a thread
    pool.  Results are assembled in registry order either way, so the
    report does not depend on scheduling.
    """

    def evaluate(approach: Approach) -> ApproachOutcome:
        try:
            result = run_approach(approach, series, horizon, arima_seasonality)
        except ApproachInfeasible as exc:
            return ApproachOutcome(approach=approach, status="infeasible", reason=str(exc))
        return ApproachOutcome(approach=approach, status="ok", result=result)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = tuple(pool.map(evaluate, REGISTRY))
    else:
        outcomes = tuple(evaluate(a) for a in REGISTRY)

    feasible = {o.approach.id: o.errors for o in outcomes if o.status == "ok"}
    if not feasible:
        raise NoFeasibleApproach("every approach failed its preconditions")
    ranked = rank_error_triples(feasible)
    ranked += [o.approach.id for o in outcomes if o.status != "ok"]
    return TournamentReport(
        outcomes=outcomes,
        ranking=tuple(ranked),
        winner=get_approach(ranked[0]),
        horizon=horizon,
        train_start=series.start,
        train_end=series.end,
        arima_seasonality=arima_seasonality,
    )


@dataclass(frozen=True, eq=False)
class ValidationReport:
    approach: Approach
    train_end: Month
    months: tuple[Month, ...]
    actual: np.ndarray
    forecast: np.ndarray
    approx_error_pct: np.ndarray
    errors: ErrorTriple  # holdout errors

    @classmethod
    def from_pairs(cls, approach, train_end, months, actual, forecast) -> "ValidationReport":
        actual = np.asarray(actual, dtype=np.float64)
        forecast = np.asarray(forecast, dtype=np.float64)
        return cls(
            approach=approach,
            train_end=train_end,
            months=tuple(months),
            actual=actual,
            forecast=forecast,
            approx_error_pct=approximation_percentage_errors(actual, forecast),
            errors=error_triple(actual, forecast),
        )


def validate_holdout(
    series: TimeSeries,
    train_end: Month,
    approach: Approach | int,
    holdout_end: Month | None = None,
    arima_seasonality: int = 12,
) -> ValidationReport:
    """Fit on data through train_end and score the months that follow.

    At least 12 observations must follow train_end; by default all of
    them are validated, or an explicit holdout_end may bound the span.
    """
    if isinstance(approach, int):
        approach = get_approach(approach)
    series.offset_of(train_end)
    available = series.end.index - train_end.index
    if available < 12:
        raise HoldoutTooShort(f"only {available} observations after {train_end}, need 12")
    holdout_end = holdout_end or series.end
    horizon = holdout_end.index - train_end.index
    if horizon < 1:
        raise HoldoutTooShort(f"holdout end {holdout_end} does not follow {train_end}")
    series.offset_of(holdout_end)

    train = series.window(series.start, train_end)
    result = run_approach(approach, train, horizon, arima_seasonality)
    holdout = series.window(train_end.plus(1), holdout_end)
    return ValidationReport.from_pairs(
        approach, train_end, holdout.months(), holdout.values, result.forecasts.values,
    )


@dataclass(frozen=True, eq=False)
class WindowReport:
    label: str
    train_start: Month
    train_end: Month
    tournament: TournamentReport
    validation: ValidationReport


@dataclass(frozen=True, eq=False)
class WindowComparison:
    windows: tuple[WindowReport, WindowReport]
    holdout_start: Month
    holdout_end: Month


def compare_windows(
    series: TimeSeries,
    window_a: tuple[Month, Month],
    window_b: tuple[Month, Month],
    holdout: tuple[Month, Month],
    arima_seasonality: int = 12,
    workers: int = 1,
) -> WindowComparison:
    """Tournament each training window, validate both winners on one holdout."""
    (a_start, a_end), (b_start, b_end) = window_a, window_b
    h_start, h_end = holdout
    if a_end != b_end:
        raise ValueError(f"windows must end at the same month: {a_end} vs {b_end}")
    if h_start != a_end.plus(1):
        raise ValueError(f"holdout must start right after the windows: {h_start} vs {a_end}")

    reports = []
    for label, start in (("a", a_start), ("b", b_start)):
        train = series.window(start, a_end)
        tour = run_tournament(
            train, horizon=h_end.index - a_end.index,
            arima_seasonality=arima_seasonality, workers=workers,
        )
        full = series.window(start, h_end)
        val = validate_holdout(full, a_end, tour.winner, h_end, arima_seasonality)
        reports.append(WindowReport(label, start, a_end, tour, val))
    return WindowComparison(windows=(reports[0], reports[1]), holdout_start=h_start, holdout_end=h_end)
