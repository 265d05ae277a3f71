"""Tabular output for the command-line tools."""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field

FORMATS = ("human", "csv", "tsv")
_INT_RE = re.compile(r"[+-]?\d+")


def _cell(value, fmt: str) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if fmt == "human":
            return f"{value:.6g}"
        return repr(value)
    return str(value)


def _parse_cell(text: str):
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    if _INT_RE.fullmatch(text):
        return int(text)
    try:
        value = float(text)
    except ValueError:
        return text
    if math.isfinite(value) or text in ("inf", "-inf", "nan"):
        return value
    return text


@dataclass
class OutputTable:
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values, table has {len(self.columns)} columns")
        self.rows.append(tuple(values))

    def render(self, fmt: str = "human") -> str:
        if fmt not in FORMATS:
            raise ValueError(f"unknown format {fmt!r}")
        cells = [[_cell(v, fmt) for v in row] for row in self.rows]
        if fmt == "human":
            widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(self.columns)]
            lines = ["  ".join(c.ljust(w) for c, w in zip(self.columns, widths)).rstrip()]
            for r in cells:
                lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
            return "\n".join(lines) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter="," if fmt == "csv" else "\t", lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerows(cells)
        return buf.getvalue()

    @classmethod
    def parse(cls, text: str, fmt: str = "csv") -> OutputTable:
        """Inverse of :meth:`render` for the ``csv`` and ``tsv`` formats."""
        if fmt not in ("csv", "tsv"):
            raise ValueError("only csv and tsv output can be parsed")
        reader = csv.reader(io.StringIO(text), delimiter="," if fmt == "csv" else "\t")
        header, *body = list(reader)
        table = cls(list(header))
        for row in body:
            table.add(*(_parse_cell(c) for c in row))
        return table
