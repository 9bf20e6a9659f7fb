"""Matrix CSV round trip.

Format: one matrix row per line, comma-separated decimal literals, no
header. Readers reject ragged rows, empty files, and non-finite values.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .exceptions import DataError
from .linalg import as_matrix


def write_matrix_csv(path: str | os.PathLike, m) -> None:
    """Write matrix *m* with full float precision (round-trip safe)."""
    m = as_matrix(m, "m")
    with open(path, "w", encoding="ascii") as fh:
        for row in m:
            fh.write(",".join(repr(float(x)) for x in row))
            fh.write("\n")


def read_matrix_csv(path: str | os.PathLike) -> np.ndarray:
    """Read a matrix written by :func:`write_matrix_csv` (or any plain CSV)."""
    rows: list[list[float]] = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            try:
                values = [float(f) for f in fields]
            except ValueError as exc:
                raise DataError(f"{path}: line {lineno}: not a decimal literal: {exc}") from exc
            if any(not math.isfinite(v) for v in values):
                raise DataError(f"{path}: line {lineno}: non-finite value")
            if rows and len(values) != len(rows[0]):
                raise DataError(
                    f"{path}: line {lineno}: ragged row ({len(values)} fields, expected {len(rows[0])})"
                )
            rows.append(values)
    if not rows:
        raise DataError(f"{path}: no rows")
    return np.array(rows, dtype=np.float64)
