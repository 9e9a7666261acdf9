"""Reading, validating and normalizing collections of categorical data.

A collection is an N x K matrix: one row per dataset, one column per
category. Entries must be finite and nonnegative.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    EmptyInputError,
    MalformedDocumentError,
    NegativeValueError,
    NotNumericError,
    RaggedRowsError,
    ZeroRowError,
)

_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")

Text = Union[bytes, str]


@dataclass(frozen=True, eq=False)
class DataMatrix:
    """Immutable N x K matrix of nonnegative category values.

    Parameters
    ----------
    values : array_like, shape (N, K)
        Nonnegative finite reals. Row i is dataset i.
    category_names : sequence of str, optional
        One label per column.
    """

    values: np.ndarray
    category_names: Optional[tuple] = None

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise EmptyInputError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise NotNumericError("matrix contains non-finite entries")
        if np.any(arr < 0):
            i, j = np.argwhere(arr < 0)[0]
            raise NegativeValueError(f"negative entry {arr[i, j]!r} at row {i}, column {j}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        if self.category_names is not None:
            names = tuple(str(n) for n in self.category_names)
            if len(names) != arr.shape[1]:
                raise RaggedRowsError(
                    f"{len(names)} category names for {arr.shape[1]} columns"
                )
            object.__setattr__(self, "category_names", names)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def k(self) -> int:
        return self.values.shape[1]

    def __eq__(self, other):
        if not isinstance(other, DataMatrix):
            return NotImplemented
        return (
            self.category_names == other.category_names
            and self.values.shape == other.values.shape
            and bool(np.array_equal(self.values, other.values))
        )

    __hash__ = None


def _decode(data: Text) -> str:
    if isinstance(data, str):
        return data
    try:
        return bytes(data).decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise MalformedDocumentError(f"input is not valid UTF-8: {exc}") from None


def _parse_field(field: str, row: int, col: int) -> float:
    field = field.strip()
    if not _DECIMAL.match(field):
        raise NotNumericError(f"row {row}, column {col}: {field!r} is not a decimal number")
    value = float(field)
    if not math.isfinite(value):
        raise NotNumericError(f"row {row}, column {col}: {field!r} overflows")
    if value < 0:
        raise NegativeValueError(f"row {row}, column {col}: negative value {field}")
    return value


def parse_csv(data: Text, has_header: bool = False) -> DataMatrix:
    """Parse comma-separated text into a :class:`DataMatrix`.

    No quoting is supported; fields are trimmed and trailing blank lines
    are dropped. With ``has_header`` the first line supplies the category
    names.
    """
    lines = _decode(data).splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise EmptyInputError("no rows in CSV input")

    names = None
    if has_header:
        names = [f.strip() for f in lines[0].split(",")]
        lines = lines[1:]
        if not lines:
            raise EmptyInputError("CSV input has a header but no data rows")

    width = len(names) if names is not None else None
    rows = []
    for r, line in enumerate(lines):
        fields = line.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise RaggedRowsError(f"row {r} has {len(fields)} fields, expected {width}")
        rows.append([_parse_field(f, r, c) for c, f in enumerate(fields)])
    return DataMatrix(np.array(rows, dtype=np.float64), names)


def _check_json_rows(rows) -> list:
    if not isinstance(rows, list) or not rows:
        raise EmptyInputError("no rows in JSON input")
    width = None
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list):
            raise MalformedDocumentError(f"row {r} is not an array")
        if width is None:
            width = len(row)
            if width == 0:
                raise EmptyInputError("rows have no entries")
        elif len(row) != width:
            raise RaggedRowsError(f"row {r} has {len(row)} entries, expected {width}")
        vals = []
        for c, v in enumerate(row):
            # bool is an int subclass; reject it explicitly
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise NotNumericError(f"row {r}, column {c}: {v!r} is not a number")
            v = float(v)
            if not math.isfinite(v):
                raise NotNumericError(f"row {r}, column {c}: non-finite value")
            if v < 0:
                raise NegativeValueError(f"row {r}, column {c}: negative value {v!r}")
            vals.append(v)
        out.append(vals)
    return out


def parse_json(data: Text) -> DataMatrix:
    """Parse a JSON document into a :class:`DataMatrix`.

    Accepts either a bare array of equal-length numeric arrays or an object
    ``{"categories": [...], "data": [[...], ...]}``.
    """
    try:
        doc = json.loads(_decode(data))
    except json.JSONDecodeError as exc:
        raise MalformedDocumentError(f"invalid JSON: {exc}") from None

    names = None
    if isinstance(doc, dict):
        if "data" not in doc:
            raise MalformedDocumentError('JSON object lacks a "data" key')
        rows = doc["data"]
        if "categories" in doc:
            names = doc["categories"]
            if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
                raise MalformedDocumentError('"categories" must be a list of strings')
    elif isinstance(doc, list):
        rows = doc
    else:
        raise MalformedDocumentError("JSON root must be an array or an object")

    return DataMatrix(np.array(_check_json_rows(rows), dtype=np.float64), names)


def to_json(m: DataMatrix) -> str:
    """Serialize ``m`` so that ``parse_json(to_json(m)) == m``."""
    rows = m.values.tolist()
    if m.category_names is None:
        return json.dumps(rows)
    return json.dumps({"categories": list(m.category_names), "data": rows})


def normalize_rows(m: DataMatrix) -> DataMatrix:
    """Scale each row to sum to one."""
    sums = m.values.sum(axis=1)
    zero = np.flatnonzero(sums == 0)
    if zero.size:
        raise ZeroRowError(f"row {zero[0]} sums to zero and cannot be normalized")
    return DataMatrix(m.values / sums[:, None], m.category_names)


def load(path: Union[str, Path], has_header: bool = False) -> DataMatrix:
    """Read a ``.json`` or CSV file from disk (format chosen by suffix)."""
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix.lower() == ".json":
        return parse_json(raw)
    return parse_csv(raw, has_header=has_header)


def from_rows(rows: Sequence[Sequence[float]], names: Optional[Sequence[str]] = None) -> DataMatrix:
    return DataMatrix(np.asarray(rows, dtype=np.float64), None if names is None else tuple(names))
