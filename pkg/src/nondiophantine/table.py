"""Labeled sample columns written as CSV.

Floats are written with ``repr`` (shortest round-trip form) so identical
inputs give byte-identical files.  Missing samples are empty fields.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float) or hasattr(v, "dtype"):
        v = float(v)
        return "" if math.isnan(v) else repr(v)
    return str(v)


def _parse(s: str):
    return None if s == "" else float(s)


@dataclass
class SeriesTable:
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def to_csv(self, target: str | Path | None = None) -> str:
        """Render as CSV; also write it to ``target`` when given."""
        buf = io.StringIO()
        for c in self.comments:
            buf.write(f"# {c}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows([_cell(v) for v in row] for row in self.rows)
        text = buf.getvalue()
        if target is not None:
            with open(target, "w", newline="", encoding="utf-8") as fh:
                fh.write(text)
        return text

    @classmethod
    def from_csv(cls, source: str | Path | Iterable[str]) -> "SeriesTable":
        if isinstance(source, (str, Path)) and Path(source).exists():
            lines = Path(source).read_text(encoding="utf-8").splitlines()
        elif isinstance(source, str):
            lines = source.splitlines()
        else:
            lines = list(source)
        comments = [ln[1:].strip() for ln in lines if ln.startswith("#")]
        body = [ln for ln in lines if not ln.startswith("#")]
        reader = csv.reader(body)
        columns = next(reader)
        rows = [tuple(_parse(c) for c in r) for r in reader if r]
        return cls(columns, rows, comments)

    def __len__(self):
        return len(self.rows)


def table_from_columns(names: Sequence[str], *cols, comments=()) -> SeriesTable:
    return SeriesTable(list(names), [tuple(r) for r in zip(*cols)], list(comments))
