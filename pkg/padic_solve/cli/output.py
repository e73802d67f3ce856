"""Writers for the three output formats.

Streams of ``OutputRecord`` go out as JSON lines, CSV or ``key=value`` text;
table grids (numpy arrays, -1 marking an unsupported cell) go out as an
aligned text grid or CSV, or as one JSON record per cell.
"""

import csv
from typing import Iterable, List, Sequence, TextIO

import numpy as np

from padic_solve.models.records import OutputRecord

FORMATS = ("text", "csv", "json")
UNSUPPORTED_CELL = "-"


def _cell(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, list):
        return " ".join(str(x) for x in value)
    return str(value)


def _text_cell(value) -> str:
    if isinstance(value, list):
        return ",".join(str(x) for x in value)
    if isinstance(value, str) and " " in value:
        return f'"{value}"'
    return _cell(value)


def _columns(records: Sequence[OutputRecord]) -> List[str]:
    used = set()
    for record in records:
        used.update(record.model_dump(exclude_none=True))
    return [name for name in OutputRecord.model_fields if name in used]


def write_records(records: Iterable[OutputRecord], fmt: str, stream: TextIO) -> None:
    records = list(records)
    if fmt == "json":
        for record in records:
            stream.write(record.to_json() + "\n")
    elif fmt == "csv":
        columns = _columns(records)
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for record in records:
            values = record.model_dump()
            writer.writerow(["" if values[c] is None else _cell(values[c]) for c in columns])
    else:
        for record in records:
            fields = record.model_dump(exclude_none=True)
            stream.write(" ".join(f"{key}={_text_cell(value)}" for key, value in fields.items()) + "\n")


def _render(value: int) -> str:
    return UNSUPPORTED_CELL if value < 0 else str(value)


def write_grid(
    grid: np.ndarray,
    row_name: str,
    rows: Sequence[int],
    col_name: str,
    cols: Sequence[int],
    fmt: str,
    stream: TextIO,
    title: str = "",
) -> None:
    header = [row_name] + [f"{col_name}={c}" for c in cols]
    body = [[str(r)] + [_render(int(v)) for v in grid[i]] for i, r in enumerate(rows)]

    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return

    widths = [max(len(line[j]) for line in [header] + body) for j in range(len(header))]
    if title:
        stream.write(title + "\n")
    for line in [header] + body:
        stream.write("  ".join(cell.rjust(width) for cell, width in zip(line, widths)).rstrip() + "\n")
