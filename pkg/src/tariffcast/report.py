"""Report documents and their renderings.

Every run produces one structured document with `config`, `approaches`,
`winner`, `forecasts` and `validation` sections (sections that do not
apply are omitted).  JSON output carries full float precision; the human
table rounds to 5 decimals.  Nothing time- or host-dependent is embedded,
so identical runs serialize byte-identically.
"""
from __future__ import annotations

import csv
import json

from .tournament import (
    REGISTRY,
    REGISTRY_VERSION,
    TIE_BREAK,
    TournamentReport,
    ValidationReport,
    WindowComparison,
)

ERROR_CONVENTION = (
    "error triples are in-sample one-step fitted errors; "
    "approximation percentage error is 100*(forecast-actual)/actual, negative = under-forecast"
)


def base_config(command: str, **extra) -> dict:
    config = {
        "command": command,
        "registry_version": REGISTRY_VERSION,
        "tie_break": TIE_BREAK,
        "error_convention": ERROR_CONVENTION,
    }
    config.update({k: v for k, v in extra.items() if v is not None})
    return config


def _approach_rows(report: TournamentReport) -> list[dict]:
    ranks = {approach_id: i + 1 for i, approach_id in enumerate(report.ranking)}
    rows = []
    for outcome in report.outcomes:
        row: dict = {
            "id": outcome.approach.id,
            "descriptor": outcome.approach.descriptor,
            "status": outcome.status,
            "rank": ranks[outcome.approach.id],
        }
        if outcome.errors is not None:
            row.update(outcome.errors.as_dict())
        else:
            row["reason"] = outcome.reason
        rows.append(row)
    return rows


def _forecast_rows(result) -> list[dict]:
    fc = result.forecasts
    return [
        {"month": str(fc.start.plus(i)), "value": float(v)} for i, v in enumerate(fc.values)
    ]


def _validation_rows(validation: ValidationReport) -> list[dict]:
    return [
        {
            "month": str(m),
            "actual": float(a),
            "forecast": float(f),
            "approx_error_pct": float(e),
        }
        for m, a, f, e in zip(
            validation.months, validation.actual, validation.forecast,
            validation.approx_error_pct,
        )
    ]


def tournament_document(report: TournamentReport, config: dict) -> dict:
    return {
        "config": config,
        "approaches": _approach_rows(report),
        "winner": {"id": report.winner.id, "descriptor": report.winner.descriptor},
        "forecasts": _forecast_rows(report.winner_result),
    }


def forecast_document(result, approach, config: dict) -> dict:
    return {
        "config": config,
        "approaches": [
            {"id": approach.id, "descriptor": approach.descriptor, "status": "ok",
             **result.errors.as_dict()}
        ],
        "winner": {"id": approach.id, "descriptor": approach.descriptor},
        "forecasts": _forecast_rows(result),
    }


def validation_document(validation: ValidationReport, config: dict) -> dict:
    return {
        "config": config,
        "winner": {"id": validation.approach.id, "descriptor": validation.approach.descriptor},
        "forecasts": [
            {"month": str(m), "value": float(v)}
            for m, v in zip(validation.months, validation.forecast)
        ],
        "validation": _validation_rows(validation),
        "holdout_errors": validation.errors.as_dict(),
    }


def comparison_document(comparison: WindowComparison, config: dict) -> dict:
    windows = []
    for window in comparison.windows:
        windows.append(
            {
                "label": window.label,
                "train": {"start": str(window.train_start), "end": str(window.train_end)},
                "approaches": _approach_rows(window.tournament),
                "winner": {
                    "id": window.tournament.winner.id,
                    "descriptor": window.tournament.winner.descriptor,
                },
                "validation": _validation_rows(window.validation),
                "holdout_errors": window.validation.errors.as_dict(),
            }
        )
    return {
        "config": config,
        "holdout": {"start": str(comparison.holdout_start), "end": str(comparison.holdout_end)},
        "windows": windows,
    }


def render_json(document: dict) -> str:
    return json.dumps(document, indent=2, allow_nan=False) + "\n"


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.5f}"
    return str(value)


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [[_fmt(c) for c in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * w for w in widths),
    ]
    lines += ["  ".join(r[i].ljust(widths[i]) for i in range(len(headers))) for r in cells]
    return "\n".join(lines)


def render_table(document: dict) -> str:
    """Human-readable rendering with 5-decimal display rounding."""
    parts: list[str] = []
    config = document.get("config", {})
    parts.append("config: " + ", ".join(f"{k}={v}" for k, v in config.items()
                                        if k != "error_convention"))
    parts.append("note: " + config.get("error_convention", ERROR_CONVENTION))

    def one_run(doc: dict) -> None:
        if "approaches" in doc:
            rows = [
                [a["id"], a.get("rank", ""), a.get("mape", ""), a.get("mad", ""),
                 a.get("msd", ""), a["status"], a["descriptor"]]
                for a in sorted(doc["approaches"], key=lambda a: a.get("rank", a["id"]))
            ]
            parts.append(_table(["id", "rank", "mape", "mad", "msd", "status", "descriptor"], rows))
        if "winner" in doc:
            parts.append(f"winner: {doc['winner']['id']} - {doc['winner']['descriptor']}")
        if doc.get("forecasts"):
            rows = [[f["month"], f["value"]] for f in doc["forecasts"]]
            parts.append(_table(["month", "forecast"], rows))
        if doc.get("validation"):
            rows = [[v["month"], v["actual"], v["forecast"], v["approx_error_pct"]]
                    for v in doc["validation"]]
            parts.append(_table(["month", "actual", "forecast", "approx_error_pct"], rows))
        if doc.get("holdout_errors"):
            e = doc["holdout_errors"]
            parts.append(f"holdout errors: MAPE={e['mape']:.5f}  MAD={e['mad']:.5f}  "
                         f"MSD={e['msd']:.10f}")

    if "windows" in document:
        for window in document["windows"]:
            parts.append(f"--- window {window['label']}: "
                         f"{window['train']['start']}..{window['train']['end']} ---")
            one_run(window)
    else:
        one_run(document)
    return "\n\n".join(parts) + "\n"


def plot_data_rows(history=None, fitted=None, result=None) -> list[dict]:
    """(month, actual?, fitted?, forecast?) rows for external plotting."""
    rows: dict[str, dict] = {}

    def slot(month) -> dict:
        key = str(month)
        if key not in rows:
            rows[key] = {"month": key, "actual": "", "fitted": "", "forecast": ""}
        return rows[key]

    if history is not None:
        for i, v in enumerate(history.values):
            slot(history.start.plus(i))["actual"] = repr(float(v))
    if result is not None:
        for i, v in enumerate(result.fitted.values):
            slot(result.fitted.start.plus(i))["fitted"] = repr(float(v))
        for i, v in enumerate(result.forecasts.values):
            slot(result.forecasts.start.plus(i))["forecast"] = repr(float(v))
    return [rows[k] for k in sorted(rows)]


def write_delimited(path, rows: list[dict]) -> None:
    if not rows:
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def approaches_csv_rows(document: dict) -> list[dict]:
    out = []
    for a in document.get("approaches", []):
        out.append(
            {
                "id": a["id"],
                "rank": a.get("rank", ""),
                "mape": repr(a["mape"]) if "mape" in a else "",
                "mad": repr(a["mad"]) if "mad" in a else "",
                "msd": repr(a["msd"]) if "msd" in a else "",
                "status": a["status"],
                "descriptor": a["descriptor"],
            }
        )
    return out


def validation_csv_rows(document: dict) -> list[dict]:
    return [
        {
            "month": v["month"],
            "actual": repr(v["actual"]),
            "forecast": repr(v["forecast"]),
            "approx_error_pct": repr(v["approx_error_pct"]),
        }
        for v in document.get("validation", [])
    ]
