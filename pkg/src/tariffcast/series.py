"""Monthly time-series container and the shared transforms built on it.

Every transform keeps the calendar anchor in sync with the values, so a
season position computed from the anchor never drifts after differencing
or averaging.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConstantSeries, LagTooLarge, NonPositiveValue, SeriesTooShort


@dataclass(frozen=True, order=True)
class Month:
    """A calendar month (year, month 1-12) with integer arithmetic."""

    year: int
    month: int

    def __post_init__(self) -> None:
        if not 1 <= self.month <= 12:
            raise ValueError(f"month must be 1..12, got {self.month}")

    @property
    def index(self) -> int:
        """Months since year 0; the canonical axis for season positions."""
        return self.year * 12 + self.month - 1

    @classmethod
    def from_index(cls, index: int) -> "Month":
        return cls(index // 12, index % 12 + 1)

    def plus(self, months: int) -> "Month":
        return Month.from_index(self.index + months)

    def season(self, period: int) -> int:
        """0-based season position in a `period`-observation cycle."""
        return self.index % period

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    @classmethod
    def parse(cls, text: str) -> "Month":
        parts = text.strip().split("-")
        if len(parts) != 2 or len(parts[0]) != 4 or len(parts[1]) != 2:
            raise ValueError(f"expected YYYY-MM, got {text!r}")
        return cls(int(parts[0]), int(parts[1]))


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Contiguous monthly observations anchored at a calendar month.

    Index t holds the value for ``start + t`` months.  Values are stored as
    an immutable float64 array; transforms return new instances.
    """

    start: Month
    values: np.ndarray
    period_hint: int | None = field(default=None)

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=np.float64)
        if vals.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if vals.size < 1:
            raise SeriesTooShort("a series needs at least one observation")
        if not np.all(np.isfinite(vals)):
            raise ValueError("all values must be finite")
        if self.period_hint is not None and self.period_hint not in (4, 12):
            raise ValueError("period_hint must be 4 or 12")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def end(self) -> Month:
        return self.start.plus(self.n - 1)

    def month_at(self, t: int) -> Month:
        return self.start.plus(t)

    def months(self) -> list[Month]:
        return [self.start.plus(t) for t in range(self.n)]

    def season_positions(self, period: int) -> np.ndarray:
        """0-based season position of every observation."""
        return (self.start.index + np.arange(self.n)) % period

    def require_positive(self, context: str) -> None:
        if np.any(self.values <= 0.0):
            raise NonPositiveValue(f"{context} requires strictly positive values")

    def offset_of(self, month: Month) -> int:
        t = month.index - self.start.index
        if not 0 <= t < self.n:
            raise ValueError(f"{month} is outside the series {self.start}..{self.end}")
        return t

    def window(self, first: Month, last: Month) -> "TimeSeries":
        """Sub-series covering `first`..`last` inclusive."""
        i, j = self.offset_of(first), self.offset_of(last)
        if j < i:
            raise ValueError(f"window end {last} precedes start {first}")
        return TimeSeries(first, self.values[i : j + 1], self.period_hint)


def difference(series: TimeSeries, lag: int = 1) -> TimeSeries:
    """Lagged differences Y_t - Y_{t-lag}; the anchor advances `lag` months."""
    if lag < 1:
        raise ValueError("lag must be a positive integer")
    if lag >= series.n:
        raise LagTooLarge(f"lag {lag} >= series length {series.n}")
    vals = series.values[lag:] - series.values[:-lag]
    return TimeSeries(series.start.plus(lag), vals, series.period_hint)


def autocorrelation(series: TimeSeries, max_lag: int) -> np.ndarray:
    """Sample autocorrelations r_1..r_max_lag.

    Uses the full-series mean and full-series denominator:
    r_k = sum_t (Y_t - Ybar)(Y_{t+k} - Ybar) / sum_t (Y_t - Ybar)^2.
    """
    if max_lag < 1:
        raise ValueError("max_lag must be a positive integer")
    if series.n < max_lag + 2:
        raise SeriesTooShort(f"need at least {max_lag + 2} observations for lag {max_lag}")
    centered = series.values - series.values.mean()
    denom = float(np.dot(centered, centered))
    if denom == 0.0:
        raise ConstantSeries("autocorrelation undefined for a constant series")
    return np.array(
        [float(np.dot(centered[:-k], centered[k:])) / denom for k in range(1, max_lag + 1)]
    )


def centered_moving_average(series: TimeSeries, k: int) -> TimeSeries:
    """k-term moving average aligned to the middle of its window.

    Odd k: plain centered average, length n-k+1, anchor shifts (k-1)/2.
    Even k: 2xk double average (mean of two adjacent k-term means) so the
    result lands on a calendar month, length n-k, anchor shifts k/2.
    """
    if k < 1:
        raise ValueError("window must be a positive integer")
    n = series.n
    needed = k if k % 2 == 1 else k + 1
    if n < needed:
        raise SeriesTooShort(f"need at least {needed} observations for window {k}")
    means = np.convolve(series.values, np.ones(k), mode="valid") / k
    if k % 2 == 1:
        return TimeSeries(series.start.plus((k - 1) // 2), means, series.period_hint)
    doubled = (means[:-1] + means[1:]) / 2.0
    return TimeSeries(series.start.plus(k // 2), doubled, series.period_hint)
