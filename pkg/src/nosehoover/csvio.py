"""CSV output with shortest round-trip float formatting.

One header row, comma separator, LF line endings. Integers are written
without a decimal point and read back as integers, so parsing a file and
writing it again reproduces it byte for byte.
"""

from __future__ import annotations

import csv
import io
import re
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

_INT = re.compile(r"^[+-]?\d+$")


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return repr(float(v))


def _parse(tok: str):
    if _INT.match(tok):
        return int(tok)
    try:
        return float(tok)
    except ValueError:
        return tok


def dumps(columns: Mapping[str, Sequence]) -> str:
    names = list(columns)
    cols = [list(columns[k]) for k in names]
    n = {len(c) for c in cols}
    if len(n) > 1:
        raise ValueError(f"columns have different lengths: {sorted(n)}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    for row in zip(*cols):
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def loads(text: str) -> dict[str, list]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValueError("empty CSV")
    header, body = rows[0], rows[1:]
    out = {k: [] for k in header}
    for row in body:
        if len(row) != len(header):
            raise ValueError("ragged CSV row")
        for k, tok in zip(header, row):
            out[k].append(_parse(tok))
    return out


def write(path: str | Path, columns: Mapping[str, Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(dumps(columns))
    return path


def read(path: str | Path) -> dict[str, list]:
    with open(path, newline="") as f:
        return loads(f.read())
