"""CSV tables with a commented metadata header block.

Every table written by the pipeline starts with zero or more lines of the
form ``#key=value``, followed by a standard CSV header row and data rows
(RFC 4180 quoting, CRLF line endings). Floats are serialized with repr so
the shortest round-tripping form is written; None becomes an empty cell.
Nothing time-dependent goes into the metadata, so a rerun with identical
inputs produces byte-identical files.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .errors import FormatError


def format_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_table(
    path: str | Path,
    header: list[str],
    rows: list[list[object]],
    metadata: dict[str, str] | None = None,
) -> None:
    """Write a metadata block, header row, and data rows to path."""
    buf = io.StringIO()
    if metadata:
        for key, value in metadata.items():
            if "=" in key or "\n" in key or "\n" in str(value):
                raise ValueError(f"metadata key/value not representable: {key!r}")
            buf.write(f"#{key}={value}\r\n")
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(cell) for cell in row])
    Path(path).write_bytes(buf.getvalue().encode("utf-8"))


def read_table(
    path: str | Path,
) -> tuple[dict[str, str], list[str], list[list[str]]]:
    """Read back (metadata, header, rows); cells stay strings."""
    text = Path(path).read_text(encoding="utf-8")
    metadata: dict[str, str] = {}
    lines = text.splitlines(keepends=True)
    body_start = 0
    for lineno, line in enumerate(lines, start=1):
        stripped = line.rstrip("\r\n")
        if not stripped.startswith("#"):
            break
        if "=" not in stripped:
            raise FormatError(lineno, f"metadata line without '=': {stripped!r}")
        key, _, value = stripped[1:].partition("=")
        if not key:
            raise FormatError(lineno, "metadata line with empty key")
        metadata[key] = value
        body_start = lineno
    body = "".join(lines[body_start:])
    reader = csv.reader(io.StringIO(body))
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError(body_start + 1, "missing CSV header row") from None
    rows = [row for row in reader if row]
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise FormatError(
                body_start + 2 + i,
                f"row has {len(row)} cells, header has {len(header)}",
            )
    return metadata, header, rows


def parse_optional_float(cell: str) -> float | None:
    return None if cell == "" else float(cell)
