"""Report and artifact emission: versioned JSON plus sorted CSV streams.

Numeric report content is a pure function of the configuration (counts
are exact, ratios deterministic floats); wall-clock timing lives under a
separate "timing" key so reruns can be compared byte-for-byte on
everything else.
"""

from __future__ import annotations

import csv
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .rationals import format_rational

TOOL_NAME = "quotlab"
TOOL_VERSION = "0.1.0"

SCHEMA_VERSION = 1


def build_report(experiment: str, config: dict, results: dict,
                 elapsed_s: float | None = None) -> dict:
    report = {
        "schema": SCHEMA_VERSION,
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "experiment": experiment,
        "config": config,
        "results": results,
    }
    if elapsed_s is not None:
        report["timing"] = {"elapsed_s": elapsed_s}
    return report


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def write_report(path: str | Path, report: dict) -> None:
    Path(path).write_text(dump_report(report) + "\n")


def write_csv(path: str | Path, header: list[str], rows: Iterable[tuple]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def rational_cell(value: Fraction) -> str:
    return format_rational(value)


def points_csv_rows(points) -> Iterable[tuple]:
    """Rows (x, y, n) for the sorted crossing-point stream."""
    for pm in points:
        yield (rational_cell(pm.point[0]), rational_cell(pm.point[1]), pm.count)


def histogram_csv_rows(hist) -> Iterable[tuple]:
    for x, q in hist.counts.items():
        yield (rational_cell(x), q)


def values_csv_rows(values) -> Iterable[tuple]:
    for v in values:
        yield (rational_cell(v),)


def scan_csv_rows(scan) -> Iterable[tuple]:
    for n, m in scan.rows:
        yield (n, m, math.log(n), math.log(m))
