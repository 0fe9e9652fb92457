import numpy as np
import pytest

from tariffcast.errors import RankDeficient, TooFewObservations
from tariffcast.regression import (
    build_design_matrix,
    fit_least_squares,
    forecast_regression,
)
from tariffcast.series import Month, TimeSeries

JAN = Month(2000, 1)


def make_seasonal_data(n, period, intercept, trend, dummies, anchor_season=1):
    """Generate exactly from the dummy-regression family; season 1 is baseline."""
    y = np.empty(n)
    for i in range(n):
        t = i + 1
        season = ((anchor_season - 1 + t - 1) % period) + 1
        y[i] = intercept + trend * t + (dummies[season - 2] if season >= 2 else 0.0)
    return y


def test_design_matrix_definition():
    X = build_design_matrix(4, 4, 1)
    expected = np.array(
        [
            [1, 1, 0, 0, 0],
            [1, 2, 1, 0, 0],
            [1, 3, 0, 1, 0],
            [1, 4, 0, 0, 1],
        ],
        dtype=float,
    )
    assert np.array_equal(X, expected)


def test_design_matrix_one_dummy_per_row():
    for anchor in range(1, 5):
        X = build_design_matrix(17, 4, anchor)
        assert np.all(X[:, 2:].sum(axis=1) <= 1.0)


def test_design_matrix_dummy_counts_over_whole_cycles():
    """Each dummy column sums to n/period over a whole number of cycles."""
    for period, cycles in ((4, 6), (12, 3)):
        n = period * cycles
        X = build_design_matrix(n, period, 1)
        counts = X[:, 2:].sum(axis=0)
        # counting oracle: every season appears exactly `cycles` times
        oracle = [sum(1 for t in range(1, n + 1) if ((t - 1) % period) + 1 == j)
                  for j in range(2, period + 1)]
        assert np.array_equal(counts, oracle)
        assert np.all(counts == cycles)


def test_fit_recovers_pure_trend():
    X = build_design_matrix(20, 4, 1)
    y = 2.0 * np.arange(1, 21)
    model = fit_least_squares(X, y)
    assert model.trend_coef == pytest.approx(2.0, abs=1e-9)
    assert model.intercept == pytest.approx(0.0, abs=1e-9)
    assert np.all(np.abs(model.dummy_coefs) < 1e-9)


def test_fit_recovers_known_coefficients():
    y = make_seasonal_data(30, 4, intercept=1.5, trend=0.05, dummies=[0.3, -0.2, 0.1])
    model = fit_least_squares(build_design_matrix(30, 4, 1), y)
    assert model.intercept == pytest.approx(1.5, abs=1e-8)
    assert model.trend_coef == pytest.approx(0.05, abs=1e-8)
    assert np.allclose(model.dummy_coefs, [0.3, -0.2, 0.1], atol=1e-8)


def test_fit_recovers_twelve_season_coefficients():
    rng = np.random.default_rng(11)
    dummies = rng.normal(0, 0.5, 11)
    y = make_seasonal_data(60, 12, intercept=0.8, trend=0.01, dummies=dummies)
    model = fit_least_squares(build_design_matrix(60, 12, 1), y)
    assert np.allclose(model.dummy_coefs, dummies, atol=1e-8)


def test_duplicate_trend_column_is_rank_deficient():
    X = build_design_matrix(20, 4, 1)
    X[:, 2] = X[:, 1]
    with pytest.raises(RankDeficient):
        fit_least_squares(X, np.arange(20.0))


def test_residuals_orthogonal_to_design():
    rng = np.random.default_rng(12)
    for _ in range(50):
        period = int(rng.choice([4, 12]))
        n = int(rng.integers(period + 3, 80))
        X = build_design_matrix(n, period, int(rng.integers(1, period + 1)))
        y = rng.normal(1.0, 0.5, n)
        model = fit_least_squares(X, y)
        coef = np.concatenate(([model.intercept, model.trend_coef], model.dummy_coefs))
        r = y - X @ coef
        norms = np.linalg.norm(X, axis=0) * max(np.linalg.norm(y), 1e-30)
        assert np.max(np.abs(X.T @ r) / norms) < 1e-8


def test_refit_on_fitted_values_is_idempotent():
    rng = np.random.default_rng(13)
    y = rng.normal(2.0, 0.3, 40)
    X = build_design_matrix(40, 4, 1)
    model = fit_least_squares(X, y)
    coef = np.concatenate(([model.intercept, model.trend_coef], model.dummy_coefs))
    refit = fit_least_squares(X, X @ coef)
    recoef = np.concatenate(([refit.intercept, refit.trend_coef], refit.dummy_coefs))
    assert np.allclose(coef, recoef, atol=1e-10)


def test_forecast_exact_on_noiseless_generator():
    y = make_seasonal_data(36, 12, intercept=0.2, trend=0.001,
                           dummies=np.linspace(-0.02, 0.03, 11))
    ts = TimeSeries(JAN, y)
    result = forecast_regression(ts, 12, horizon=12)
    assert result.errors.mape < 1e-8
    expected = make_seasonal_data(48, 12, 0.2, 0.001, np.linspace(-0.02, 0.03, 11))[36:]
    assert np.allclose(result.forecasts.values, expected, atol=1e-8)


def test_forecast_shift_moves_only_intercept():
    rng = np.random.default_rng(14)
    y = 1.0 + 0.02 * np.arange(30) + rng.normal(0, 0.05, 30)
    base = fit_least_squares(build_design_matrix(30, 4, 1), y)
    shifted = fit_least_squares(build_design_matrix(30, 4, 1), y + 5.0)
    assert shifted.intercept == pytest.approx(base.intercept + 5.0, abs=1e-9)
    assert shifted.trend_coef == pytest.approx(base.trend_coef, abs=1e-9)
    assert np.allclose(shifted.dummy_coefs, base.dummy_coefs, atol=1e-9)


def test_forecast_affine_equivariance():
    rng = np.random.default_rng(15)
    y = 1.0 + 0.01 * np.arange(40) + rng.normal(0, 0.02, 40)
    ts = TimeSeries(JAN, y)
    base = forecast_regression(ts, 4, horizon=6).forecasts.values
    scaled = forecast_regression(TimeSeries(JAN, 3.0 * y + 2.0), 4, horizon=6).forecasts.values
    assert np.allclose(scaled, 3.0 * base + 2.0, rtol=1e-9, atol=1e-9)


def test_forecast_season_of_next_month_matches_mod_oracle():
    """The first forecast row lands in season ((anchor-1+n) mod period)+1."""
    start = Month(2000, 6)  # season position 1 for period 4
    n, period = 23, 4
    dummies = np.array([0.4, -0.3, 0.2])
    anchor_season = start.season(period) + 1
    y = make_seasonal_data(n, period, 1.0, 0.0, dummies, anchor_season=anchor_season)
    result = forecast_regression(TimeSeries(start, y), period, horizon=1)
    season_next = ((anchor_season - 1 + n) % period) + 1
    expected = 1.0 + (dummies[season_next - 2] if season_next >= 2 else 0.0)
    assert result.forecasts.values[0] == pytest.approx(expected, abs=1e-8)


def test_too_few_observations():
    ts = TimeSeries(JAN, np.arange(1.0, 6.0))
    with pytest.raises(TooFewObservations):
        forecast_regression(ts, 4, horizon=2)
