"""Matplotlib renderings of the report documents, written straight to file.

These mirror the delimited outputs: a history/fit/forecast line chart, a
holdout actual-vs-forecast chart with signed percentage errors, a ranking
bar chart, and a side-by-side window-comparison error chart.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_PNG_META = {"Software": "tariffcast"}


def _month_ticks(ax, labels: list[str]) -> None:
    step = max(1, len(labels) // 12)
    positions = np.arange(0, len(labels), step)
    ax.set_xticks(positions)
    ax.set_xticklabels([labels[i] for i in positions], rotation=45, ha="right", fontsize=8)


def _save(fig, path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)


def plot_forecast(path, history, result, title: str) -> None:
    """History, in-sample fit and point forecasts on one time axis."""
    months = [str(m) for m in history.months()]
    months += [str(result.forecasts.start.plus(i)) for i in range(result.forecasts.n)]
    fig, ax = plt.subplots(figsize=(9, 4.5))
    ax.plot(range(history.n), history.values, label="actual", color="black", lw=1.2)
    fit_off = result.fitted.start.index - history.start.index
    ax.plot(
        range(fit_off, fit_off + result.fitted.n), result.fitted.values,
        label="fitted", color="tab:blue", lw=1.0, ls="--",
    )
    ax.plot(
        range(history.n, history.n + result.forecasts.n), result.forecasts.values,
        label="forecast", color="tab:red", lw=1.4, marker="o", ms=3,
    )
    ax.axvline(history.n - 0.5, color="gray", lw=0.8, ls=":")
    _month_ticks(ax, months)
    ax.set_ylabel("price")
    ax.set_title(title)
    ax.legend()
    ax.grid(alpha=0.3)
    _save(fig, path)


def plot_validation(path, validation, title: str) -> None:
    """Actual vs forecast over the holdout plus the signed errors below."""
    labels = [str(m) for m in validation.months]
    x = np.arange(len(labels))
    fig, (top, bottom) = plt.subplots(
        2, 1, figsize=(9, 6), sharex=True, height_ratios=[2, 1]
    )
    top.plot(x, validation.actual, label="actual", color="black", marker="o", ms=3)
    top.plot(x, validation.forecast, label="forecast", color="tab:red", marker="s", ms=3)
    top.set_ylabel("price")
    top.set_title(title)
    top.legend()
    top.grid(alpha=0.3)
    colors = ["tab:red" if e < 0 else "tab:green" for e in validation.approx_error_pct]
    bottom.bar(x, validation.approx_error_pct, color=colors)
    bottom.axhline(0.0, color="black", lw=0.8)
    bottom.set_ylabel("approx error %")
    _month_ticks(bottom, labels)
    bottom.grid(alpha=0.3)
    _save(fig, path)


def plot_tournament(path, document: dict, title: str) -> None:
    """MAPE per feasible approach, ranked bars."""
    rows = [a for a in document["approaches"] if "mape" in a]
    rows.sort(key=lambda a: a["rank"])
    fig, ax = plt.subplots(figsize=(9, 4.5))
    x = np.arange(len(rows))
    ax.bar(x, [a["mape"] for a in rows], color="tab:blue")
    ax.set_xticks(x)
    ax.set_xticklabels([str(a["id"]) for a in rows])
    ax.set_xlabel("approach id (best first)")
    ax.set_ylabel("MAPE %")
    ax.set_title(title)
    ax.grid(alpha=0.3, axis="y")
    _save(fig, path)


def plot_window_comparison(path, comparison, title: str) -> None:
    """Approximation percentage errors of both window winners, side by side."""
    a, b = comparison.windows
    labels = [str(m) for m in a.validation.months]
    x = np.arange(len(labels))
    width = 0.4
    fig, ax = plt.subplots(figsize=(9, 4.5))
    ax.bar(x - width / 2, a.validation.approx_error_pct, width,
           label=f"window a ({a.train_start}..{a.train_end})", color="tab:blue")
    ax.bar(x + width / 2, b.validation.approx_error_pct, width,
           label=f"window b ({b.train_start}..{b.train_end})", color="tab:orange")
    ax.axhline(0.0, color="black", lw=0.8)
    ax.set_ylabel("approx error %")
    ax.set_title(title)
    _month_ticks(ax, labels)
    ax.legend()
    ax.grid(alpha=0.3, axis="y")
    _save(fig, path)
