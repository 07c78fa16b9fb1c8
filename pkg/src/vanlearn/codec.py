"""Tabular data ingestion and serialization.

Covers CSV parsing (RFC 4180, header mandatory), the client/server wire
string (one JSON object per row, rows separated by top-level commas), and
csv/txt export. Cells are ``float`` (Number) or ``str`` (Text); a column
is numeric iff every cell in it is a Number.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass

from .errors import (
    DuplicateColumnError,
    EmptyError,
    EncodingError,
    FormatError,
    KeyMismatchError,
    RaggedError,
    SchemaError,
    WireSyntaxError,
)

Cell = float | str

# Strict numeric lexeme: decimal or scientific notation, no inf/nan/whitespace.
_NUMBER_RE = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$")


def lex_number(text: str) -> float | None:
    """Return the float value if ``text`` lexes as a finite number, else None."""
    if not _NUMBER_RE.match(text):
        return None
    value = float(text)
    if not math.isfinite(value):
        return None
    return value


def render_number(value: float) -> str:
    """Shortest decimal form that round-trips to the same float.

    Integral values below 1e16 drop the trailing ``.0`` so 1.0 renders as
    ``1``; everything else uses Python's shortest-repr float rendering.
    """
    if value == int(value) and abs(value) < 1e16:
        if value == 0.0 and math.copysign(1.0, value) < 0:
            return "-0.0"
        return str(int(value))
    return repr(value)


def render_cell(cell: Cell) -> str:
    return render_number(cell) if isinstance(cell, float) else cell


@dataclass(frozen=True)
class Dataset:
    """Named columns plus rows of Number/Text cells."""

    columns: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]

    def __post_init__(self):
        seen: set[str] = set()
        for name in self.columns:
            if not isinstance(name, str) or name == "":
                raise SchemaError("column names must be non-empty strings")
            if name in seen:
                raise DuplicateColumnError(f"duplicate column name {name!r}")
            seen.add(name)
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise RaggedError(f"row {i} has {len(row)} cells, expected {width}")
            for cell in row:
                if isinstance(cell, bool) or not isinstance(cell, (float, str)):
                    raise SchemaError(f"row {i}: cells must be float or str")
                if isinstance(cell, float) and not math.isfinite(cell):
                    raise SchemaError(f"row {i}: numeric cells must be finite")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    def column(self, j: int) -> list[Cell]:
        return [row[j] for row in self.rows]

    def is_numeric_column(self, j: int) -> bool:
        return all(isinstance(row[j], float) for row in self.rows)


def dataset_of(columns, rows) -> Dataset:
    """Dataset from plain sequences; int cells are promoted to float."""
    norm_rows = tuple(
        tuple(float(c) if isinstance(c, int) and not isinstance(c, bool) else c for c in row)
        for row in rows
    )
    return Dataset(tuple(columns), norm_rows)


def parse_csv(data: bytes) -> Dataset:
    """Parse UTF-8 RFC 4180 CSV bytes; the first record is the header."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"input is not valid UTF-8: {exc}") from None
    if text.startswith("﻿"):
        text = text[1:]
    reader = csv.reader(io.StringIO(text))
    records = [rec for rec in reader if rec]  # blank lines carry no cells
    if not records:
        raise EmptyError("CSV has no header record")
    header = records[0]
    seen: set[str] = set()
    for name in header:
        if name == "":
            raise SchemaError("empty column name in header")
        if name in seen:
            raise DuplicateColumnError(f"duplicate column name {name!r}")
        seen.add(name)
    width = len(header)
    rows: list[tuple[Cell, ...]] = []
    for i, rec in enumerate(records[1:]):
        if len(rec) != width:
            raise RaggedError(f"data row {i} has {len(rec)} fields, expected {width}")
        cells: list[Cell] = []
        for field in rec:
            value = lex_number(field)
            cells.append(value if value is not None else field)
        rows.append(tuple(cells))
    return Dataset(tuple(header), tuple(rows))


def encode_wire(d: Dataset) -> str:
    """One JSON object per row, keys in column order, rows joined by commas."""
    keys = [json.dumps(name, ensure_ascii=False) for name in d.columns]
    parts = []
    for row in d.rows:
        fields = []
        for key, cell in zip(keys, row):
            if isinstance(cell, float):
                fields.append(f"{key}:{render_number(cell)}")
            else:
                fields.append(f"{key}:{json.dumps(cell, ensure_ascii=False)}")
        parts.append("{" + ",".join(fields) + "}")
    return ",".join(parts)


def _reject_constant(token: str):
    raise WireSyntaxError(f"non-finite number {token!r} in wire payload")


class _Pairs(list):
    """Marker so object bodies are distinguishable from JSON arrays."""


def _split_objects(text: str) -> list[str]:
    """Split at depth-0 commas in a single pass; a depth counter plus a
    string-literal flag is the only separator state."""
    segments: list[str] = []
    depth = 0
    in_string = False
    escaped = False
    start = 0
    for i, ch in enumerate(text):
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
            continue
        if ch == '"':
            in_string = True
        elif ch in "{[":
            depth += 1
        elif ch in "}]":
            depth -= 1
            if depth < 0:
                raise WireSyntaxError(f"unbalanced brackets at offset {i}")
        elif ch == "," and depth == 0:
            segments.append(text[start:i])
            start = i + 1
    if in_string or depth != 0:
        raise WireSyntaxError("unterminated object or string literal")
    segments.append(text[start:])
    return segments


def decode_wire(text: str) -> Dataset:
    """Inverse of :func:`encode_wire`; single pass, linear in input length."""
    if text == "":
        raise EmptyError("empty wire payload")
    columns: tuple[str, ...] | None = None
    key_set: frozenset[str] | None = None
    rows: list[tuple[Cell, ...]] = []
    for segment in _split_objects(text):
        try:
            pairs = json.loads(
                segment, object_pairs_hook=_Pairs, parse_constant=_reject_constant
            )
        except json.JSONDecodeError as exc:
            raise WireSyntaxError(f"malformed wire object: {exc}") from None
        if not isinstance(pairs, _Pairs):
            raise WireSyntaxError("wire segments must be JSON objects")
        keys = [k for k, _ in pairs]
        if len(set(keys)) != len(keys):
            raise WireSyntaxError("duplicate key within a wire object")
        if any(k == "" for k in keys):
            raise WireSyntaxError("empty key in wire object")
        values: dict[str, Cell] = {}
        for key, raw in pairs:
            if isinstance(raw, bool) or not isinstance(raw, (int, float, str)):
                raise WireSyntaxError(f"unsupported value type for key {key!r}")
            if isinstance(raw, (int, float)):
                try:
                    number = float(raw)
                except OverflowError:
                    raise WireSyntaxError(f"number out of range for key {key!r}") from None
                if not math.isfinite(number):
                    raise WireSyntaxError(f"non-finite number for key {key!r}")
                values[key] = number
            else:
                values[key] = raw
        if columns is None:
            columns = tuple(keys)
            key_set = frozenset(keys)
        elif frozenset(keys) != key_set:
            raise KeyMismatchError("wire objects must share an identical key set")
        rows.append(tuple(values[name] for name in columns))
    assert columns is not None
    return Dataset(columns, tuple(rows))


def export(d: Dataset, format: str) -> bytes:
    """Serialize to csv (RFC 4180) or txt (tab-separated), LF line endings."""
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(d.columns)
        for row in d.rows:
            writer.writerow([render_cell(c) for c in row])
        return buf.getvalue().encode("utf-8")
    if format == "txt":
        lines = ["\t".join(d.columns)]
        lines.extend("\t".join(render_cell(c) for c in row) for row in d.rows)
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise FormatError(f"unknown export format {format!r}")
