"""Seasonal ARIMA: conditional-sum-of-squares estimation and forecasting.

The ARMA recursion runs on the differenced series w with multiplicative
seasonal polynomials folded into flat coefficient arrays:

    sum_k a_k (w_{t-k} - mu) = sum_k m_k e_{t-k},   a_0 = m_0 = 1

so e_t = sum_k a_k z_{t-k} - sum_{k>=1} m_k e_{t-k}.  Residuals are
conditioned the standard CSS way: the span starts after the AR lags
(t > p + s*P on the differenced scale) and earlier errors are fixed at 0.
Deep pre-sample observations, needed only at forecast edges, stand in as
the differenced-series mean.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import lfilter

from .errors import (
    AllFitsFailed,
    NonStationaryParams,
    OptimizationDiverged,
    SeriesTooShort,
    TariffcastError,
)
from .result import ForecastResult, build_result
from .series import TimeSeries

COEF_BOUND = 0.99
_DESCENT_START = 0.1
_DESCENT_STOP = 1e-6


@dataclass(frozen=True)
class ArimaOrder:
    """(p,d,q)(P,D,Q)_s with s = 0 allowed when no seasonal order is set."""

    p: int
    d: int
    q: int
    P: int = 0
    D: int = 0
    Q: int = 0
    s: int = 0

    def __post_init__(self) -> None:
        for name in ("p", "d", "q", "P", "D", "Q", "s"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.d + self.D > 2:
            raise ValueError("total differencing d + D must be <= 2")
        if (self.P or self.D or self.Q) and self.s < 2:
            raise ValueError("seasonal orders need a period s >= 2")

    @property
    def total_coefficients(self) -> int:
        return self.p + self.q + self.P + self.Q

    @property
    def max_ar_lag(self) -> int:
        return self.p + self.s * self.P

    def label(self) -> str:
        base = f"({self.p},{self.d},{self.q})"
        if self.s:
            base += f"({self.P},{self.D},{self.Q})_{self.s}"
        return base


def _roots_outside_unit(coefs) -> bool:
    """True when 1 - c_1 x - ... - c_k x^k has every root outside the unit circle.

    Orders one and two use the closed-form conditions (the |c| < 1 bound
    and the order-2 triangle); higher orders fall back to numpy.roots.
    """
    vals = [float(c) for c in coefs]
    while vals and vals[-1] == 0.0:
        vals.pop()
    if not vals:
        return True
    if len(vals) == 1:
        return abs(vals[0]) < 1.0 - 1e-9
    if len(vals) == 2:
        c1, c2 = vals
        return c1 + c2 < 1.0 - 1e-9 and c2 - c1 < 1.0 - 1e-9 and abs(c2) < 1.0 - 1e-9
    poly = np.concatenate(([1.0], -np.asarray(vals)))[::-1]
    return bool(np.all(np.abs(np.roots(poly)) > 1.0 + 1e-9))


def _combined_poly(nonseasonal, seasonal, s: int) -> np.ndarray:
    """Flat lag coefficients of (1 - sum a_i B^i)(1 - sum A_j B^{js}); index 0 is 1."""
    out = [0.0] * (len(nonseasonal) + s * len(seasonal) + 1)
    out[0] = 1.0
    for i, a in enumerate(nonseasonal, start=1):
        out[i] -= float(a)
    for j, aj in enumerate(seasonal, start=1):
        aj = float(aj)
        out[j * s] -= aj
        for i, a in enumerate(nonseasonal, start=1):
            out[j * s + i] += float(a) * aj
    return np.asarray(out)


@dataclass(frozen=True, eq=False)
class ArimaModel:
    order: ArimaOrder
    phi: np.ndarray = field(default_factory=lambda: np.zeros(0))
    theta: np.ndarray = field(default_factory=lambda: np.zeros(0))
    seasonal_phi: np.ndarray = field(default_factory=lambda: np.zeros(0))
    seasonal_theta: np.ndarray = field(default_factory=lambda: np.zeros(0))
    mean: float = 0.0
    sigma2: float = 1.0
    n_eff: int = 0

    def __post_init__(self) -> None:
        for name, count in (
            ("phi", self.order.p),
            ("theta", self.order.q),
            ("seasonal_phi", self.order.P),
            ("seasonal_theta", self.order.Q),
        ):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            if arr.shape != (count,):
                raise ValueError(f"{name} must hold exactly {count} coefficients")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (_roots_outside_unit(self.phi) and _roots_outside_unit(self.seasonal_phi)):
            raise NonStationaryParams("AR polynomial has a root inside the unit circle")
        if not (_roots_outside_unit(self.theta) and _roots_outside_unit(self.seasonal_theta)):
            raise NonStationaryParams("MA polynomial has a root inside the unit circle")
        if self.sigma2 <= 0.0:
            raise ValueError("sigma2 must be positive")

    @property
    def constant(self) -> float:
        """Phi_0 implied by the mean: mu * phi(1) * seasonal_phi(1)."""
        return self.mean * (1.0 - self.phi.sum()) * (1.0 - self.seasonal_phi.sum())

    @property
    def free_coefficients(self) -> int:
        has_mean = 1 if self.order.d + self.order.D == 0 else 0
        return self.order.total_coefficients + has_mean

    @property
    def aic(self) -> float:
        return self.n_eff * math.log(max(self.sigma2, 1e-300)) + 2 * self.free_coefficients


def _difference_ladder(values: np.ndarray, order: ArimaOrder) -> list[np.ndarray]:
    """[original, after each of d lag-1 diffs, after each of D lag-s diffs]."""
    ladder = [np.asarray(values, dtype=np.float64)]
    for _ in range(order.d):
        cur = ladder[-1]
        if cur.size < 2:
            raise SeriesTooShort("not enough observations to difference")
        ladder.append(cur[1:] - cur[:-1])
    for _ in range(order.D):
        cur = ladder[-1]
        if cur.size < order.s + 1:
            raise SeriesTooShort("not enough observations to difference seasonally")
        ladder.append(cur[order.s :] - cur[: -order.s])
    return ladder


def _residual_array(
    w: np.ndarray, mean: float, ar: np.ndarray, ma: np.ndarray, start: int
) -> np.ndarray:
    """Length-len(w) residuals; entries before `start` are conditioning zeros.

    The AR side is a finite correlation (one convolution); the MA side is
    the IIR recursion e_t = conv_t - sum_{k>=1} ma_k e_{t-k}, run with
    zero initial state.  Zeroing conv before `start` keeps the span's
    conditioning exact in both paths.
    """
    z = w - mean
    conv = np.convolve(z, ar)[: z.size]
    if start:
        conv[:start] = 0.0
    if np.count_nonzero(ma[1:]) == 0:
        return conv
    return lfilter(np.ones(1), ma, conv)


def css_residuals(series: TimeSeries, model: ArimaModel) -> np.ndarray:
    """One-step conditional residuals of the model on the differenced scale."""
    order = model.order
    w = _difference_ladder(series.values, order)[-1]
    start = order.max_ar_lag
    if w.size <= start:
        raise SeriesTooShort("series too short to cover the AR lags after differencing")
    ar = _combined_poly(model.phi, model.seasonal_phi, order.s)
    ma = _combined_poly(model.theta, model.seasonal_theta, order.s)
    return _residual_array(w, model.mean, ar, ma, start)[start:]


def _split_vector(vec: np.ndarray, order: ArimaOrder):
    p, q, P = order.p, order.q, order.P
    return vec[:p], vec[p : p + q], vec[p + q : p + q + P], vec[p + q + P :]


def _css_objective(w: np.ndarray, mean: float, order: ArimaOrder):
    start = order.max_ar_lag

    def objective(vec: np.ndarray) -> float:
        if np.any(np.abs(vec) >= COEF_BOUND):
            return math.inf
        phi, theta, sphi, stheta = _split_vector(vec, order)
        if not (_roots_outside_unit(phi) and _roots_outside_unit(sphi)):
            return math.inf
        if not (_roots_outside_unit(theta) and _roots_outside_unit(stheta)):
            return math.inf
        ar = _combined_poly(phi, sphi, order.s)
        ma = _combined_poly(theta, stheta, order.s)
        eps = _residual_array(w, mean, ar, ma, start)
        css = float(np.dot(eps[start:], eps[start:]))
        return css if math.isfinite(css) else math.inf

    return objective


def _coordinate_descent(objective, k: int) -> tuple[np.ndarray, float]:
    """Cyclic coordinate search from 0 with shrinking steps; deterministic.

    At each step size, sweep the coordinates repeatedly (walking as far as
    a direction keeps paying) until a full sweep brings no material
    improvement, then halve the step.
    """
    cache: dict[bytes, float] = {}

    def evaluate(vec: np.ndarray) -> float:
        key = vec.tobytes()
        value = cache.get(key)
        if value is None:
            value = objective(vec)
            cache[key] = value
        return value

    point = np.zeros(k)
    best = evaluate(point)
    step = _DESCENT_START
    while step >= _DESCENT_STOP:
        improved = True
        while improved:
            improved = False
            sweep_start = point
            for i in range(k):
                for direction in (1.0, -1.0):
                    while True:
                        trial = point.copy()
                        trial[i] += direction * step
                        value = evaluate(trial)
                        if value < best - 1e-12 * (1.0 + abs(best)):
                            point, best = trial, value
                            improved = True
                        else:
                            break
            # Pattern extension: repeat the whole sweep's displacement while
            # it keeps paying, so diagonal valleys cost log, not linear, time.
            delta = point - sweep_start
            while improved and np.any(delta != 0.0):
                trial = point + delta
                value = evaluate(trial)
                if value < best - 1e-12 * (1.0 + abs(best)):
                    point, best = trial, value
                else:
                    break
        step *= 0.5
    return point, best


def fit_arima(series: TimeSeries, order: ArimaOrder) -> ArimaModel:
    """Minimize the conditional sum of squares over the coefficient box.

    The constant is the differenced-series mean and is only present when
    no differencing is applied; with d + D >= 1 the mean is fixed at 0.
    """
    w = _difference_ladder(series.values, order)[-1]
    k = order.total_coefficients
    if w.size <= 3 * k + 5:
        raise SeriesTooShort(
            f"need more than {3 * k + 5} differenced observations for {order.label()}"
        )
    mean = float(w.mean()) if order.d + order.D == 0 else 0.0
    objective = _css_objective(w, mean, order)
    if k == 0:
        point, css = np.zeros(0), objective(np.zeros(0))
    else:
        point, css = _coordinate_descent(objective, k)
    if not math.isfinite(css):
        raise OptimizationDiverged(f"CSS not finite for {order.label()}")
    phi, theta, sphi, stheta = _split_vector(point, order)
    n_eff = w.size - order.max_ar_lag
    sigma2 = max(css / n_eff, 1e-300)
    return ArimaModel(
        order=order,
        phi=phi,
        theta=theta,
        seasonal_phi=sphi,
        seasonal_theta=stheta,
        mean=mean,
        sigma2=sigma2,
        n_eff=n_eff,
    )


def selection_grid(s: int) -> list[ArimaOrder]:
    """The 72 candidate orders: p,q in 0..2, d in 0..1, P,Q in 0..1, D = 0."""
    return [
        ArimaOrder(p, d, q, P, 0, Q, s)
        for p in range(3)
        for d in range(2)
        for q in range(3)
        for P in range(2)
        for Q in range(2)
    ]


def select_arima_order(series: TimeSeries, s: int) -> ArimaOrder:
    """Fit every candidate in selection_grid and pick the minimum AIC.

    AIC = n_eff * ln(sigma2) + 2 * free coefficients; ties prefer fewer
    coefficients, then the lexicographically smallest (p,d,q,P,Q).
    """
    if s < 2:
        raise ValueError("seasonal period must be at least 2")
    if series.n < 3 * s:
        raise SeriesTooShort(f"order selection needs at least {3 * s} observations")
    best: tuple[tuple, ArimaOrder] | None = None
    failures: list[str] = []
    for order in selection_grid(s):
        try:
            model = fit_arima(series, order)
        except TariffcastError as exc:
            failures.append(f"{order.label()}: {exc}")
            continue
        key = (model.aic, order.total_coefficients, (order.p, order.d, order.q, order.P, order.Q))
        if best is None or key < best[0]:
            best = (key, order)
    if best is None:
        raise AllFitsFailed("; ".join(failures[:5]))
    return best[1]


def forecast_arima(series: TimeSeries, model: ArimaModel, horizon: int = 12) -> ForecastResult:
    """Iterate the recursion forward with future errors 0, then undo differencing."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    order = model.order
    ladder = _difference_ladder(series.values, order)
    w = ladder[-1]
    start = order.max_ar_lag
    if w.size <= start:
        raise SeriesTooShort("series too short to cover the AR lags after differencing")
    ar = _combined_poly(model.phi, model.seasonal_phi, order.s)
    ma = _combined_poly(model.theta, model.seasonal_theta, order.s)
    eps = _residual_array(w, model.mean, ar, ma, start)

    n_w = w.size
    presample_z = float(w.mean()) - model.mean
    w_ext = np.concatenate([w, np.zeros(horizon)])
    eps_ext = np.concatenate([eps, np.zeros(horizon)])
    ar_lags = np.nonzero(ar[1:])[0] + 1
    ma_lags = np.nonzero(ma[1:])[0] + 1
    for h in range(horizon):
        t = n_w + h
        acc = 0.0
        for lag in ar_lags:
            i = t - lag
            z = (w_ext[i] - model.mean) if i >= 0 else presample_z
            acc -= ar[lag] * z
        for lag in ma_lags:
            i = t - lag
            if i >= 0:
                acc += ma[lag] * eps_ext[i]
        w_ext[t] = model.mean + acc

    # Undo the differencing ladder from the deepest level back to prices.
    level_forecasts = w_ext[n_w:]
    for level in range(len(ladder) - 1, 0, -1):
        parent = ladder[level - 1]
        lag = 1 if level <= order.d else order.s
        extended = np.concatenate([parent, np.zeros(horizon)])
        base = parent.size
        for h in range(horizon):
            extended[base + h] = level_forecasts[h] + extended[base + h - lag]
        level_forecasts = extended[base:]

    offset = (series.n - n_w) + start
    fitted = series.values[offset:] - eps[start:]
    return build_result(series, offset, fitted, level_forecasts)
