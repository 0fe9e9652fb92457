import numpy as np
import pytest

from tariffcast.errors import ApproachInfeasible, HoldoutTooShort, NoFeasibleApproach
from tariffcast.metrics import ErrorTriple
from tariffcast.series import Month, TimeSeries
from tariffcast.tournament import (
    REGISTRY,
    ValidationReport,
    compare_windows,
    get_approach,
    rank_error_triples,
    run_approach,
    run_tournament,
    select_best,
    validate_holdout,
)

JAN = Month(2007, 1)

# Registry contract: ids and descriptors, compared verbatim.
EXPECTED_DESCRIPTORS = {
    1: "Classical decomposition with multiplicative model with seasonality is 12",
    2: "Classical decomposition with multiplicative model with seasonality is 4",
    3: "Classical decomposition with additive model with seasonality is 12",
    4: "Classical decomposition with additive model with seasonality is 4",
    5: "Classical decomposition with centering moving averages with multiplicative model "
       "with seasonality is 12",
    6: "Classical decomposition with centering moving averages with multiplicative model "
       "with seasonality is 4",
    7: "Classical decomposition with centering moving averages with additive model "
       "with seasonality is 12",
    8: "Classical decomposition with centering moving averages with additive model "
       "with seasonality is 4",
    9: "Forecasting with regression equation with seasonality is 12",
    10: "Forecasting with regression equation with seasonality is 4",
    11: "Single exponential smoothing with seasonality is 12",
    12: "Single exponential smoothing with seasonality is 4",
    13: "Double exponential smoothing with seasonality is 12 with multiplicative model",
    14: "Double exponential smoothing with additive model with seasonality is 12",
    15: "Double exponential smoothing with multiplicative model with seasonality is 4",
    16: "Double exponential smoothing with additive model with seasonality is 4",
    17: "Holt Winter's model with ideal coefficients with seasonality is 12",
    18: "Holt Winter's model with ideal coefficients with seasonality is 4",
    19: "ARIMA models",
}


def seasonal_series(n, start=JAN, amplitude=0.05, noise=0.0, seed=0):
    pattern = 1 + amplitude * np.cos(2 * np.pi * np.arange(12) / 12)
    pattern = pattern / pattern.mean()
    t = np.arange(n)
    y = (0.2 + 0.001 * t) * pattern[(start.index + t) % 12]
    if noise:
        y = y * np.exp(np.random.default_rng(seed).normal(0, noise, n))
    return TimeSeries(start, y)


def test_registry_matches_embedded_copy():
    assert len(REGISTRY) == 19
    assert [a.id for a in REGISTRY] == list(range(1, 20))
    for approach in REGISTRY:
        assert approach.descriptor == EXPECTED_DESCRIPTORS[approach.id]


def test_get_approach_bounds():
    assert get_approach(17).seasonality == 12
    with pytest.raises(ValueError):
        get_approach(0)
    with pytest.raises(ValueError):
        get_approach(20)


def test_ses_rows_are_bit_identical():
    """Rows 11 and 12 never differ: single smoothing ignores seasonality."""
    rng = np.random.default_rng(30)
    for _ in range(10):
        ts = TimeSeries(JAN, rng.uniform(0.5, 2.0, size=int(rng.integers(5, 40))))
        a = run_approach(11, ts, horizon=6)
        b = run_approach(12, ts, horizon=6)
        assert np.array_equal(a.fitted.values, b.fitted.values)
        assert np.array_equal(a.forecasts.values, b.forecasts.values)
        assert a.errors == b.errors


def test_short_series_is_infeasible_for_seasonal_rows():
    ts = seasonal_series(20)
    with pytest.raises(ApproachInfeasible):
        run_approach(1, ts, horizon=12)  # needs 2 * 12 observations


def test_arima_row_on_random_walk_forecasts_last_value():
    rng = np.random.default_rng(0)
    y = np.cumsum(rng.normal(0, 1, 120)) + 50.0
    ts = TimeSeries(JAN, y)
    result = run_approach(19, ts, horizon=6)
    assert np.allclose(result.forecasts.values, y[-1], atol=1e-9)


def triples(mapping):
    return {k: ErrorTriple(*v) for k, v in mapping.items()}


def test_selector_on_injected_triples():
    # winner by MAPE; ties fall through MAD, MSD, id
    t = triples({
        3: (2.0, 0.1, 0.1),
        7: (1.0, 0.2, 0.1),
        11: (1.0, 0.1, 0.1),
    })
    assert rank_error_triples(t) == [11, 7, 3]
    assert select_best(t) == 11
    tie = triples({5: (1.0, 0.1, 0.2), 4: (1.0, 0.1, 0.2)})
    assert rank_error_triples(tie) == [4, 5]
    with pytest.raises(NoFeasibleApproach):
        select_best({})


def test_tournament_on_seasonal_synthetic_prefers_seasonal_models():
    ts = seasonal_series(96, noise=0.004, seed=5)
    report = run_tournament(ts, horizon=12)
    assert report.winner.id not in (11, 12)  # never single smoothing
    assert report.winner.id in (1, 3, 5, 7, 9, 13, 14, 17, 19)  # a seasonality-12 row
    assert len(report.ranking) == 19
    assert sorted(report.ranking) == list(range(1, 20))
    assert report.winner.id == report.ranking[0]


def test_tournament_is_deterministic_and_schedule_independent():
    ts = seasonal_series(60, noise=0.003, seed=8)
    a = run_tournament(ts, horizon=6)
    b = run_tournament(ts, horizon=6)
    c = run_tournament(ts, horizon=6, workers=4)
    for other in (b, c):
        assert other.ranking == a.ranking
        for mine, theirs in zip(a.outcomes, other.outcomes):
            assert mine.status == theirs.status
            if mine.result is not None:
                assert np.array_equal(mine.result.forecasts.values,
                                      theirs.result.forecasts.values)
                assert mine.errors == theirs.errors


def test_tournament_records_infeasible_last():
    ts = seasonal_series(20)  # too short for every seasonality-12 family
    report = run_tournament(ts, horizon=6)
    infeasible = {o.approach.id for o in report.outcomes if o.status == "infeasible"}
    assert infeasible  # decomposition s=12 rows need 24 observations
    tail = set(report.ranking[-len(infeasible):])
    assert tail == infeasible
    assert report.outcome_for(report.winner.id).status == "ok"
    for approach_id in infeasible:
        assert report.outcome_for(approach_id).reason


def test_tournament_with_no_feasible_approach():
    single = TimeSeries(JAN, [1.0])
    with pytest.raises(NoFeasibleApproach):
        run_tournament(single, horizon=6)


def test_validate_holdout_zero_errors_when_forecast_matches():
    """A noiseless line is forecast exactly, so every holdout error is ~0."""
    y = 2.0 + 0.01 * np.arange(60)
    ts = TimeSeries(JAN, y)
    report = validate_holdout(ts, JAN.plus(47), approach=3)  # additive decomposition
    assert len(report.months) == 12
    assert np.max(np.abs(report.approx_error_pct)) < 1e-9
    assert report.errors.mape < 1e-9


def test_validate_holdout_never_reads_holdout_values():
    base = seasonal_series(72)
    corrupted = np.array(base.values, copy=True)
    corrupted[60:] = 9999.0
    train_end = JAN.plus(59)
    a = validate_holdout(base, train_end, approach=9)
    b = validate_holdout(TimeSeries(JAN, corrupted), train_end, approach=9)
    assert np.array_equal(a.forecast, b.forecast)


def test_validate_holdout_sign_convention():
    months = [Month(2015, m) for m in range(1, 13)]
    actual = np.full(12, 1.0)
    forecast = np.concatenate([np.full(3, 0.97), np.full(9, 1.02)])
    report = ValidationReport.from_pairs(get_approach(17), Month(2014, 12),
                                         months, actual, forecast)
    assert np.all(report.approx_error_pct[:3] < 0)
    assert np.all(report.approx_error_pct[3:] > 0)


def test_validate_holdout_accuracy_on_matching_generator():
    full = seasonal_series(108)
    report = validate_holdout(full, JAN.plus(95), approach=17)
    assert report.errors.mape < 0.5


def test_validate_holdout_too_short():
    ts = seasonal_series(50)
    with pytest.raises(HoldoutTooShort):
        validate_holdout(ts, JAN.plus(43), approach=11)  # only 6 months follow


def test_validate_holdout_explicit_end_bounds_span():
    ts = seasonal_series(72)
    report = validate_holdout(ts, JAN.plus(47), approach=9, holdout_end=JAN.plus(59))
    assert len(report.months) == 12
    assert report.months[0] == JAN.plus(48)
    assert report.months[-1] == JAN.plus(59)


def test_compare_windows_identical_windows_agree():
    ts = seasonal_series(72, noise=0.002, seed=9)
    window = (JAN, JAN.plus(59))
    holdout = (JAN.plus(60), JAN.plus(71))
    cmp = compare_windows(ts, window, window, holdout)
    a, b = cmp.windows
    assert a.tournament.ranking == b.tournament.ranking
    assert np.array_equal(a.validation.forecast, b.validation.forecast)


def test_compare_windows_longer_window_not_worse_on_stationary_seasonal():
    ts = seasonal_series(108, noise=0.002, seed=10)
    window_a = (JAN.plus(36), JAN.plus(95))
    window_b = (JAN, JAN.plus(95))
    holdout = (JAN.plus(96), JAN.plus(107))
    cmp = compare_windows(ts, window_a, window_b, holdout)
    a, b = cmp.windows
    assert b.validation.errors.mape <= a.validation.errors.mape + 0.5


def test_compare_windows_validates_alignment():
    ts = seasonal_series(72)
    with pytest.raises(ValueError):
        compare_windows(ts, (JAN, JAN.plus(47)), (JAN, JAN.plus(48)),
                        (JAN.plus(48), JAN.plus(59)))
    with pytest.raises(ValueError):
        compare_windows(ts, (JAN, JAN.plus(47)), (JAN.plus(12), JAN.plus(47)),
                        (JAN.plus(50), JAN.plus(61)))
