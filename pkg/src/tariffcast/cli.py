"""Command-line front end.

Subcommands: forecast, tournament, validate, compare-windows.  Each run
emits one structured report (JSON or human table); with --out it also
writes delimited plot data and rendered PNG figures next to the report.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 no feasible
approach.  Failures print a machine-readable error object to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import plots, report
from .dataset import SERIES_NAMES, TariffDataset, ingest_csv
from .errors import (
    ConfigError,
    GapInCalendar,
    NoFeasibleApproach,
    NonPositivePrice,
    ParseError,
    TariffcastError,
)
from .series import Month, TimeSeries
from .tournament import (
    compare_windows,
    get_approach,
    run_approach,
    run_tournament,
    validate_holdout,
)


def _parse_month(text: str, flag: str) -> Month:
    try:
        return Month.parse(text)
    except ValueError as exc:
        raise ConfigError(f"{flag}: {exc}") from exc


def _parse_window(text: str, flag: str) -> tuple[Month, Month]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"{flag}: expected YYYY-MM:YYYY-MM, got {text!r}")
    first = _parse_month(parts[0], flag)
    last = _parse_month(parts[1], flag)
    if last < first:
        raise ConfigError(f"{flag}: window end {last} precedes start {first}")
    return first, last


def _pick_series(dataset: TariffDataset, name: str | None) -> tuple[str, TimeSeries]:
    if name is None:
        if len(dataset.names) == 1:
            name = dataset.names[0]
        else:
            raise ConfigError(
                f"--series is required; file has {', '.join(dataset.names)}"
            )
    if name not in dataset.names:
        raise ConfigError(f"--series {name!r} not in file (has {', '.join(dataset.names)})")
    return name, dataset.series(name)


def _window_of(series: TimeSeries, window: tuple[Month, Month] | None, flag: str) -> TimeSeries:
    if window is None:
        return series
    try:
        return series.window(*window)
    except ValueError as exc:
        raise ConfigError(f"{flag}: {exc}") from exc


def _parse_approach(text: str) -> int | None:
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError:
        raise ConfigError(f"--approach must be 1..19 or 'auto', got {text!r}") from None
    if not 1 <= value <= 19:
        raise ConfigError(f"--approach must be 1..19 or 'auto', got {text}")
    return value


def _emit(args, document: dict, extras) -> int:
    rendered = (
        report.render_json(document) if args.format == "json" else report.render_table(document)
    )
    if args.out is None:
        sys.stdout.write(rendered)
        return 0
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    report_path = out / ("report.json" if args.format == "json" else "report.txt")
    report_path.write_text(rendered, encoding="utf-8")
    written = [report_path]
    for name, rows in extras.get("csv", {}).items():
        path = out / name
        report.write_delimited(path, rows)
        written.append(path)
    for name, draw in extras.get("figures", {}).items():
        path = out / name
        draw(path)
        written.append(path)
    sys.stdout.write("\n".join(str(p) for p in written) + "\n")
    return 0


def _train_config(series: TimeSeries) -> dict:
    return {"start": str(series.start), "end": str(series.end)}


def cmd_tournament(args) -> int:
    dataset = ingest_csv(args.input)
    name, series = _pick_series(dataset, args.series)
    train = _window_of(series, args.train, "--train")
    tour = run_tournament(train, horizon=args.horizon, arima_seasonality=args.seasonality)
    config = report.base_config(
        "tournament", input=str(args.input), series=name, train=_train_config(train),
        horizon=args.horizon, seasonality=args.seasonality,
    )
    doc = report.tournament_document(tour, config)
    extras = {
        "csv": {
            "approaches.csv": report.approaches_csv_rows(doc),
            "plot_data.csv": report.plot_data_rows(history=train, result=tour.winner_result),
        },
        "figures": {
            "tournament.png": lambda p: plots.plot_tournament(
                p, doc, f"{name}: tournament ranking"),
            "forecast.png": lambda p: plots.plot_forecast(
                p, train, tour.winner_result,
                f"{name}: winner {tour.winner.id} forecast"),
        },
    }
    return _emit(args, doc, extras)


def cmd_forecast(args) -> int:
    dataset = ingest_csv(args.input)
    name, series = _pick_series(dataset, args.series)
    train = _window_of(series, args.train, "--train")
    approach_id = _parse_approach(args.approach)
    if approach_id is None:
        tour = run_tournament(train, horizon=args.horizon, arima_seasonality=args.seasonality)
        approach, result = tour.winner, tour.winner_result
    else:
        approach = get_approach(approach_id)
        result = run_approach(approach, train, args.horizon, args.seasonality)
    config = report.base_config(
        "forecast", input=str(args.input), series=name, train=_train_config(train),
        horizon=args.horizon, seasonality=args.seasonality, approach=approach.id,
    )
    doc = report.forecast_document(result, approach, config)
    extras = {
        "csv": {"plot_data.csv": report.plot_data_rows(history=train, result=result)},
        "figures": {
            "forecast.png": lambda p: plots.plot_forecast(
                p, train, result, f"{name}: approach {approach.id} forecast"),
        },
    }
    return _emit(args, doc, extras)


def cmd_validate(args) -> int:
    dataset = ingest_csv(args.input)
    name, series = _pick_series(dataset, args.series)
    train_window = args.train
    holdout_end = args.holdout[1] if args.holdout else series.end
    if args.holdout and args.holdout[0] != train_window[1].plus(1):
        raise ConfigError(
            f"--holdout must start the month after --train ends "
            f"({train_window[1].plus(1)}), got {args.holdout[0]}"
        )
    span = _window_of(series, (train_window[0], holdout_end), "--holdout")
    approach_id = _parse_approach(args.approach)
    if approach_id is None:
        tour = run_tournament(
            _window_of(series, train_window, "--train"),
            horizon=holdout_end.index - train_window[1].index,
            arima_seasonality=args.seasonality,
        )
        approach_id = tour.winner.id
    validation = validate_holdout(
        span, train_window[1], approach_id, holdout_end, args.seasonality
    )
    config = report.base_config(
        "validate", input=str(args.input), series=name,
        train={"start": str(train_window[0]), "end": str(train_window[1])},
        holdout={"start": str(train_window[1].plus(1)), "end": str(holdout_end)},
        seasonality=args.seasonality, approach=approach_id,
    )
    doc = report.validation_document(validation, config)
    extras = {
        "csv": {"validation.csv": report.validation_csv_rows(doc)},
        "figures": {
            "validation.png": lambda p: plots.plot_validation(
                p, validation, f"{name}: approach {approach_id} holdout validation"),
        },
    }
    return _emit(args, doc, extras)


def cmd_compare_windows(args) -> int:
    dataset = ingest_csv(args.input)
    name, series = _pick_series(dataset, args.series)
    try:
        comparison = compare_windows(
            series, args.window_a, args.window_b, args.holdout,
            arima_seasonality=args.seasonality,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    config = report.base_config(
        "compare-windows", input=str(args.input), series=name,
        window_a={"start": str(args.window_a[0]), "end": str(args.window_a[1])},
        window_b={"start": str(args.window_b[0]), "end": str(args.window_b[1])},
        holdout={"start": str(args.holdout[0]), "end": str(args.holdout[1])},
        seasonality=args.seasonality,
    )
    doc = report.comparison_document(comparison, config)
    a, b = comparison.windows
    merged = [
        {
            "month": str(m),
            "actual": repr(float(act)),
            "forecast_a": repr(float(fa)),
            "approx_error_pct_a": repr(float(ea)),
            "forecast_b": repr(float(fb)),
            "approx_error_pct_b": repr(float(eb)),
        }
        for m, act, fa, ea, fb, eb in zip(
            a.validation.months, a.validation.actual,
            a.validation.forecast, a.validation.approx_error_pct,
            b.validation.forecast, b.validation.approx_error_pct,
        )
    ]
    extras = {
        "csv": {"comparison.csv": merged},
        "figures": {
            "comparison.png": lambda p: plots.plot_window_comparison(
                p, comparison, f"{name}: window comparison"),
        },
    }
    return _emit(args, doc, extras)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="CSV file of monthly tariff prices")
    parser.add_argument("--series", default=None,
                        help=f"series name, one of {', '.join(SERIES_NAMES)}")
    parser.add_argument("--seasonality", type=int, choices=(4, 12), default=12,
                        help="seasonal period used by the ARIMA approach")
    parser.add_argument("--out", default=None,
                        help="output directory for the report, plot data and figures")
    parser.add_argument("--format", choices=("json", "table"), default="json",
                        help="report rendering")


def _window_arg(text: str) -> tuple[Month, Month]:
    return _parse_window(text, "window")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tariffcast",
        description="Monthly tariff price forecasting: tournament, validation, comparison",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tournament", help="run all 19 approaches and rank them")
    _add_common(p)
    p.add_argument("--train", type=_window_arg, default=None, help="YYYY-MM:YYYY-MM train window")
    p.add_argument("--horizon", type=int, default=12)
    p.set_defaults(func=cmd_tournament)

    p = sub.add_parser("forecast", help="forecast with one approach (or the tournament winner)")
    _add_common(p)
    p.add_argument("--train", type=_window_arg, default=None, help="YYYY-MM:YYYY-MM train window")
    p.add_argument("--horizon", type=int, default=12)
    p.add_argument("--approach", default="auto", help="approach id 1..19 or 'auto'")
    p.set_defaults(func=cmd_forecast)

    p = sub.add_parser("validate", help="fit through a train window, score the months after")
    _add_common(p)
    p.add_argument("--train", type=_window_arg, required=True,
                   help="YYYY-MM:YYYY-MM train window")
    p.add_argument("--holdout", type=_window_arg, default=None,
                   help="YYYY-MM:YYYY-MM holdout span (default: rest of the data)")
    p.add_argument("--approach", default="auto", help="approach id 1..19 or 'auto'")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compare-windows",
                       help="tournament two training windows, validate both on one holdout")
    _add_common(p)
    p.add_argument("--window-a", type=_window_arg, required=True, dest="window_a")
    p.add_argument("--window-b", type=_window_arg, required=True, dest="window_b")
    p.add_argument("--holdout", type=_window_arg, required=True)
    p.set_defaults(func=cmd_compare_windows)

    return parser


def _fail(code: int, exc: Exception) -> int:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    sys.stderr.write(json.dumps(payload) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        return _fail(2, exc)
    except NoFeasibleApproach as exc:
        return _fail(4, exc)
    except FileNotFoundError as exc:
        return _fail(3, exc)
    except (ParseError, GapInCalendar, NonPositivePrice) as exc:
        return _fail(3, exc)
    except TariffcastError as exc:
        return _fail(3, exc)


if __name__ == "__main__":
    sys.exit(main())
