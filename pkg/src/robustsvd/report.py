"""Tabular experiment reports with CSV and JSON serialization.

CSV files carry a ``# schema=1`` comment line, then a header, then one
row per record. The JSON summary echoes the full configuration and the
aggregated statistics so a run can be reproduced from its own output.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field

SCHEMA_LINE = "# schema=1"


@dataclass
class ExperimentReport:
    """Per-trial records plus aggregates for one batch experiment.

    ``records`` hold one dict per (method, trial) with the keys listed in
    ``columns``; failed trials carry NaN metrics and a note in ``errors``.
    """

    columns: list[str]
    records: list[dict] = field(default_factory=list)
    aggregates: list[dict] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    errors: list[dict] = field(default_factory=list)

    def write_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", newline="", encoding="ascii") as fh:
            fh.write(SCHEMA_LINE + "\n")
            writer = csv.DictWriter(fh, fieldnames=self.columns, extrasaction="ignore")
            writer.writeheader()
            for record in self.records:
                writer.writerow({k: _format_cell(record.get(k)) for k in self.columns})

    def summary_dict(self) -> dict:
        return {
            "schema": 1,
            "config": self.config,
            "aggregates": self.aggregates,
            "errors": self.errors,
        }

    def write_json(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="ascii") as fh:
            json.dump(self.summary_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _format_cell(value) -> str:
    if value is None:
        return "nan"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def aggregate(records: list[dict], group_keys: list[str], metric_keys: list[str]) -> list[dict]:
    """Mean/median/std/count of each metric over records grouped by *group_keys*.

    Records with NaN metrics are excluded from that metric's statistics;
    the output order is deterministic (sorted group labels) regardless of
    record order.
    """
    groups: dict[tuple, list[dict]] = {}
    for record in records:
        key = tuple(record[k] for k in group_keys)
        groups.setdefault(key, []).append(record)
    out = []
    for key in sorted(groups, key=lambda k: tuple(str(v) for v in k)):
        entry: dict = dict(zip(group_keys, key))
        for metric in metric_keys:
            values = sorted(
                float(r[metric])
                for r in groups[key]
                if r.get(metric) is not None and not math.isnan(float(r[metric]))
            )
            stats: dict[str, float | int] = {"count": len(values)}
            if values:
                n = len(values)
                mean = sum(values) / n
                mid = n // 2
                median = values[mid] if n % 2 else 0.5 * (values[mid - 1] + values[mid])
                var = sum((v - mean) ** 2 for v in values) / n
                stats.update(mean=mean, median=median, std=math.sqrt(var))
            entry[metric] = stats
        out.append(entry)
    return out
