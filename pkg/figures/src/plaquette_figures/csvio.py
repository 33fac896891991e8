"""Parsing of the sweep CSV interchange format.

Contract: ``#``-prefixed metadata lines (``tool``, ``basis``, ``spec``
with a canonical JSON echo), a ``axis,S11,...,S44`` header, then one row
of 17 floats per grid point.  Errors carry row/column context.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

S_COLUMNS = tuple(f"S{i}{j}" for i in range(1, 5) for j in range(1, 5))
EXPECTED_HEADER = ("axis",) + S_COLUMNS

PORT_LABELS = {
    "bare": ("a1", "a2", "b1", "b2"),
    "normal": ("a1", "a2", "b+", "b-"),
}


class MalformedCSV(Exception):
    """Input does not follow the sweep CSV contract."""


@dataclass(frozen=True)
class ParsedTable:
    """One parsed CSV: metadata, axis values, and the P x 16 block."""

    path: Path
    meta: dict
    basis: str
    axis_values: np.ndarray
    s: np.ndarray

    @property
    def ports(self) -> tuple:
        return PORT_LABELS.get(self.basis, PORT_LABELS["bare"])

    @property
    def axis_label(self) -> str:
        spec = self.meta.get("spec", {})
        axis = spec.get("axis", "axis")
        unit = spec.get("unit", "")
        return f"{axis} ({unit})" if unit else str(axis)

    def matrix(self, row: int = 0) -> np.ndarray:
        """One grid point's 4x4 scattering probability matrix."""
        return self.s[row].reshape(4, 4)


def parse_table(path) -> ParsedTable:
    """Parse one CSV file, validating it against the contract."""
    path = Path(path)
    if not path.exists():
        raise MalformedCSV(f"{path}: file does not exist")
    meta: dict = {}
    header = None
    axis_values = []
    rows = []
    with path.open(encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                if header is not None:
                    raise MalformedCSV(f"{path}:{lineno}: metadata after the header")
                body = line[1:].strip()
                key, sep, value = body.partition(":")
                if not sep:
                    raise MalformedCSV(f"{path}:{lineno}: metadata line without a key")
                key = key.strip()
                value = value.strip()
                if key == "spec":
                    try:
                        meta[key] = json.loads(value)
                    except json.JSONDecodeError as exc:
                        raise MalformedCSV(f"{path}:{lineno}: bad spec JSON: {exc}") from None
                else:
                    meta[key] = value
                continue
            cells = line.split(",")
            if header is None:
                if tuple(cells) != EXPECTED_HEADER:
                    raise MalformedCSV(
                        f"{path}:{lineno}: header must be 'axis,{','.join(S_COLUMNS)}'"
                    )
                header = tuple(cells)
                continue
            if len(cells) != 17:
                raise MalformedCSV(
                    f"{path}:{lineno}: expected 17 columns, found {len(cells)}"
                )
            values = []
            for col, cell in enumerate(cells, start=1):
                try:
                    values.append(float(cell))
                except ValueError:
                    raise MalformedCSV(
                        f"{path}:{lineno}: column {col}: not a float: {cell!r}"
                    ) from None
            axis_values.append(values[0])
            rows.append(values[1:])
    if header is None:
        raise MalformedCSV(f"{path}: no header row found")
    if not rows:
        raise MalformedCSV(f"{path}: no data rows after the header")
    return ParsedTable(
        path=path,
        meta=meta,
        basis=meta.get("basis", "bare"),
        axis_values=np.array(axis_values),
        s=np.array(rows),
    )
