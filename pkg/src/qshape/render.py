"""Text, JSON and CSV rendering.

Renderers work on plain dictionaries (the JSON form), so that parsing a
JSON document and rendering it as text gives exactly the text output.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable

from .analysis import ShapeAnalysis
from .lineshapes import GeneralizedThermal, shape_name
from .tables import Table

REPORT_FIELDS = (
    "shape", "m", "n", "level_fraction", "x_peak", "f_peak", "x_lower", "x_upper",
    "bandwidth", "q_direct", "q_reciprocal", "x_median", "area_fraction",
)

DISPLAY_DIGITS = 6
FULL_DIGITS = 17


def fmt(value: Any, full: bool = False) -> str:
    if value is None:
        return "-"
    if isinstance(value, str):
        return value
    return format(float(value), f".{FULL_DIGITS if full else DISPLAY_DIGITS}g")


def report_to_dict(report: ShapeAnalysis) -> dict:
    thermal = isinstance(report.shape, GeneralizedThermal)
    return {
        "shape": shape_name(report.shape),
        "m": report.shape.m if thermal else None,
        "n": report.shape.n if thermal else None,
        "level_fraction": report.level.fraction,
        "x_peak": report.x_peak,
        "f_peak": report.f_peak,
        "x_lower": report.x_lower,
        "x_upper": report.x_upper,
        "bandwidth": report.bandwidth,
        "q_direct": report.q_direct,
        "q_reciprocal": report.q_reciprocal,
        "x_median": report.x_median,
        "area_fraction": report.area_fraction,
    }


def table_to_dict(table: Table) -> dict:
    def cell(c):
        if isinstance(c, float):
            return {"value": c, "display": fmt(c)}
        return c

    return {
        "table": table.table_id,
        "title": table.title,
        "columns": list(table.columns),
        "rows": [[cell(c) for c in row] for row in table.rows],
        "notes": list(table.notes),
    }


def to_json(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def render_mapping_text(data: dict, full: bool = False) -> str:
    width = max(len(k) for k in data)
    return "".join(f"{k:<{width}}  {fmt(v, full)}\n" for k, v in data.items())


def render_mapping_csv(data: dict, full: bool = False) -> str:
    return render_rows_csv(list(data), [[fmt(v, full) for v in data.values()]])


def render_rows_csv(header: Iterable[str], rows: Iterable[Iterable[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _cell_text(c: Any, full: bool) -> str:
    if isinstance(c, dict):
        return fmt(c["value"], full) if full else c["display"]
    return fmt(c, full)


def render_table_text(data: dict, full: bool = False) -> str:
    header = data["columns"]
    body = [[_cell_text(c, full) for c in row] for row in data["rows"]]
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    lines = [f"Table {data['table']}. {data['title']}"]
    rule = "  ".join("-" * w for w in widths)
    lines.append(rule)
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    lines.append(rule)
    for row in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    lines.append(rule)
    lines.extend(f"note: {n}" for n in data.get("notes", []))
    return "\n".join(lines) + "\n"


def render_table_csv(data: dict, full: bool = False) -> str:
    return render_rows_csv(data["columns"],
                           [[_cell_text(c, full) for c in row] for row in data["rows"]])


def render_curve_csv(points, header=("x", "f"), full: bool = False) -> str:
    return render_rows_csv(header, ([fmt(x, full), fmt(f, full)] for x, f in points))
