"""Reading interval tables and writing mined patterns.

Input tables are UTF-8 text, comma- or semicolon-separated, with a header
row. A cell is a number (a point interval), ``lo..hi``, or ``?`` for a
missing value. The first column may hold object ids.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Any, Sequence

from .core import Dataset, DataError, Interval, build_dataset, format_tuple, format_value
from .sofia import PatternSet

MISSING = {"?", ""}
ID_HEADERS = {"", "id", "ids", "object", "object_id", "obj", "name", "g"}
FORMATS = ("json", "csv", "text")


@dataclass
class RawTable:
    header: list[str]
    rows: list[list[str]]
    ids: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.ids:
            self.ids = [f"g{i + 1}" for i in range(len(self.rows))]


def detect_delimiter(line: str) -> str:
    return ";" if line.count(";") > line.count(",") else ","


def parse_cell(cell: str, row: int | None = None, col: int | None = None) -> Interval | None:
    """``"0"`` -> [0,0], ``"1..2"`` -> [1,2], ``"?"`` -> None."""
    text = cell.strip()
    if text in MISSING:
        return None
    where = f" at row {row}, column {col}" if row is not None else ""
    parts = text.split("..")
    try:
        if len(parts) > 2:
            raise ValueError
        lo, hi = float(parts[0]), float(parts[-1])
    except ValueError:
        raise DataError(f"cannot parse cell {cell!r}{where}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DataError(f"non-finite value {cell!r}{where}")
    if lo > hi:
        raise DataError(f"malformed interval {cell!r}{where}: lo > hi")
    return Interval(lo, hi)


def _looks_like_ids(header: str, cells: Sequence[str]) -> bool:
    if header.strip().lower() in ID_HEADERS:
        return True
    values = [c.strip() for c in cells]
    numeric = 0
    for c in values:
        try:
            parse_cell(c)
            numeric += 1
        except DataError:
            pass
    return numeric == 0 and len(set(values)) == len(values)


def parse_input(source: str | Path | IO[str], id_column: bool | None = None) -> RawTable:
    """Read a table; ``id_column=None`` detects an id column from its header or contents."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise DataError("empty dataset")
    delim = detect_delimiter(lines[0])
    records = [[c.strip() for c in r] for r in csv.reader(lines, delimiter=delim)]
    header, rows = records[0], records[1:]
    for i, r in enumerate(rows, start=2):
        if len(r) != len(header):
            raise DataError(f"arity mismatch at row {i}: {len(r)} cells, header has {len(header)}")
    if id_column is None:
        id_column = bool(header) and _looks_like_ids(header[0], [r[0] for r in rows])
    if id_column:
        return RawTable(header[1:], [r[1:] for r in rows], [r[0] for r in rows])
    return RawTable(header, rows)


def table_to_dataset(table: RawTable) -> Dataset:
    rows = []
    for i, (oid, cells) in enumerate(zip(table.ids, table.rows), start=2):
        ivs = []
        for j, c in enumerate(cells, start=1):
            iv = parse_cell(c, i, j)
            if iv is None:
                raise DataError(f"missing value at row {i}, column {j}; clean the table first")
            ivs.append(iv)
        rows.append((oid, ivs))
    return build_dataset(rows, table.header)


def load_dataset(source: str | Path | IO[str], id_column: bool | None = None) -> Dataset:
    return table_to_dataset(parse_input(source, id_column))


def _num(v: float) -> str:
    # repr keeps every digit so the grid survives a round trip
    return format_value(v) if float(v).is_integer() else repr(float(v))


def _cell(iv: Interval) -> str:
    if iv.lo == iv.hi:
        return _num(iv.lo)
    return f"{_num(iv.lo)}..{_num(iv.hi)}"


def dump_dataset(ds: Dataset) -> str:
    """CSV text that :func:`load_dataset` reads back to the same dataset."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", *ds.attributes])
    for oid, d in zip(ds.object_ids, ds.descriptions):
        w.writerow([oid, *(_cell(iv) for iv in d)])
    return buf.getvalue()


def pattern_records(pats: PatternSet, ds: Dataset) -> list[dict[str, Any]]:
    records = []
    for p in pats.ordered():
        intent = ds.to_values(p.intent)
        records.append(
            {
                "extent": list(ds.ids(p.extent)),
                "intent": [[iv.lo, iv.hi] for iv in intent],
                "intent_text": format_tuple(intent),
                "support": p.support,
                "delta": p.delta,
            }
        )
    return records


def serialize_patterns(pats: PatternSet, ds: Dataset, fmt: str = "json", meta: dict | None = None) -> str:
    """Deterministic rendering: a run header followed by one record per pattern."""
    meta = dict(meta or {})
    records = pattern_records(pats, ds)
    if fmt == "json":
        return json.dumps({"run": meta, "patterns": records}, indent=2, default=str) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        for k, v in meta.items():
            buf.write(f"# {k}: {json.dumps(v, default=str)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["extent", "intent", "support", "delta"])
        for r in records:
            w.writerow([" ".join(r["extent"]), r["intent_text"], r["support"], r["delta"]])
        return buf.getvalue()
    if fmt == "text":
        lines = [f"{k}: {v}" for k, v in meta.items()]
        lines.append(f"patterns: {len(records)}")
        for r in records:
            lines.append(
                f"  delta={r['delta']} support={r['support']} "
                f"{r['intent_text']} {{{', '.join(r['extent'])}}}"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
