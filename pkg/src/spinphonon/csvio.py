"""CSV emission for the experiment tables.

Provenance goes into '#'-prefixed comment lines above the header.  Floats
are written with repr (shortest round-tripping form, '.' decimal point), so
emitting and reloading a table reproduces the values exactly and identical
inputs give bit-identical files.
"""

from __future__ import annotations

import math

import numpy as np


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    return repr(x)


def write_table(path, columns, rows, provenance=()):
    """Write rows (iterable of tuples) under a header line, after '# ' comments."""
    lines = [f"# {entry}" for entry in provenance]
    lines.append(",".join(columns))
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row width {len(row)} != header width {len(columns)}")
        lines.append(",".join(_fmt(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_table(path):
    """Read back a table written by :func:`write_table`.

    Returns (columns, rows) with rows as a float ndarray (NaN preserved).
    Comment lines are skipped.
    """
    columns = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if columns is None:
                columns = line.split(",")
                continue
            rows.append([float(tok) for tok in line.split(",")])
    if columns is None:
        raise ValueError(f"{path} holds no table")
    return columns, np.array(rows, dtype=float)
