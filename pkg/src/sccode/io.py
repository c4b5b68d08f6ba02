"""Matrix CSV files and JSON bundles for constructed codes."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .model import CycleStats, ValidationError

SCHEMA_VERSION = 1


def read_matrix(path, shape=None, lo: int = 0, hi=None, name: str = "matrix") -> np.ndarray:
    """Integer matrix from a headerless CSV, checked against ``shape`` and ``[lo, hi)``."""
    path = Path(path)
    rows = []
    with path.open(newline="") as fh:
        for r, line in enumerate(csv.reader(fh), start=1):
            if not line or all(not c.strip() for c in line):
                continue
            try:
                rows.append([int(c) for c in line])
            except ValueError as exc:
                raise ValidationError(f"{path}:{r}: non-integer entry ({exc})") from None
    if not rows:
        raise ValidationError(f"{path}: empty {name}")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValidationError(f"{path}: ragged rows, widths {sorted(widths)}")
    m = np.array(rows, dtype=np.int64)
    if shape is not None and m.shape != tuple(shape):
        raise ValidationError(f"{path}: {name} is {m.shape[0]}x{m.shape[1]}, expected {shape[0]}x{shape[1]}")
    bad = (m < lo) if hi is None else ((m < lo) | (m >= hi))
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        rng = f"[{lo}, {hi})" if hi is not None else f">= {lo}"
        raise ValidationError(f"{path}: {name} entry ({i}, {j}) = {m[i, j]} outside {rng}")
    return m


def write_matrix(path, m) -> None:
    m = np.asarray(m, dtype=np.int64)
    with Path(path).open("w", newline="") as fh:
        csv.writer(fh, lineterminator="\n").writerows(m.tolist())


def stats_document(stats: CycleStats, **extra) -> dict:
    return {"schema_version": SCHEMA_VERSION, **stats.to_dict(), **extra}


def write_json(path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
