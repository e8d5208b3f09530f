"""Dataset simplification by joining close values, and table cleaning."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Dataset, DataError, Interval, build_dataset
from .io import MISSING, RawTable


@dataclass(frozen=True)
class AttributeJoin:
    attribute: str
    delta_max: float
    beta: float
    groups: tuple[tuple[float, float], ...]
    size_before: int
    size_after: int


@dataclass(frozen=True)
class SimplificationReport:
    gamma: float
    attributes: tuple[AttributeJoin, ...]


def join_runs(values: tuple[float, ...], gamma: float) -> tuple[float, float, list[tuple[float, float]]]:
    """Greedy runs of sorted values whose consecutive gaps are below ``gamma * delta_max``."""
    gaps = [b - a for a, b in zip(values, values[1:])]
    delta_max = max(gaps, default=0.0)
    beta = gamma * delta_max
    runs = [[values[0], values[0]]]
    for gap, v in zip(gaps, values[1:]):
        if gap < beta:
            runs[-1][1] = v
        else:
            runs.append([v, v])
    return delta_max, beta, [tuple(r) for r in runs]


def simplify(ds: Dataset, gamma: float) -> tuple[Dataset, SimplificationReport]:
    """Replace every endpoint by the hull of its run of close values.

    An object interval ``[a, b]`` becomes ``[min(run(a)), max(run(b))]``.
    """
    if not (0 < gamma < 1):
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
    lookup = []
    joins = []
    for name, w in zip(ds.attributes, ds.value_sets):
        delta_max, beta, runs = join_runs(w, gamma)
        table = {}
        for lo, hi in runs:
            for v in w:
                if lo <= v <= hi:
                    table[v] = (lo, hi)
        lookup.append(table)
        new_values = {x for r in runs for x in r}
        joins.append(AttributeJoin(name, delta_max, beta, tuple(runs), len(w), len(new_values)))
    rows = []
    for oid, d in zip(ds.object_ids, ds.descriptions):
        rows.append(
            (oid, [Interval(t[iv.lo][0], t[iv.hi][1]) for t, iv in zip(lookup, d)])
        )
    return build_dataset(rows, ds.attributes), SimplificationReport(gamma, tuple(joins))


@dataclass(frozen=True)
class CleaningReport:
    dropped_columns: tuple[str, ...]
    dropped_rows: int
    kept_rows: int


def _is_numeric_cell(cell: str) -> bool:
    parts = cell.split("..")
    if len(parts) > 2:
        return False
    try:
        nums = [float(p) for p in parts]
    except ValueError:
        return False
    return all(math.isfinite(x) for x in nums)


def drop_incomplete(table: RawTable) -> tuple[RawTable, CleaningReport]:
    """Remove categorical columns, then rows with a missing cell.

    A column is categorical when one of its non-missing cells is neither a
    number nor a ``lo..hi`` interval. Object ids are not data columns.
    """
    header, rows = table.header, table.rows
    keep = [
        j
        for j in range(len(header))
        if all(r[j].strip() in MISSING or _is_numeric_cell(r[j].strip()) for r in rows)
    ]
    dropped_cols = tuple(header[j] for j in range(len(header)) if j not in keep)
    new_rows, new_ids = [], []
    for oid, r in zip(table.ids, rows):
        cells = [r[j] for j in keep]
        if any(c.strip() in MISSING for c in cells):
            continue
        new_rows.append(cells)
        new_ids.append(oid)
    if not new_rows or not keep:
        raise DataError("empty after cleaning")
    cleaned = RawTable([header[j] for j in keep], new_rows, new_ids)
    return cleaned, CleaningReport(dropped_cols, len(rows) - len(new_rows), len(new_rows))
