"""
Rendering of complex values, matrices and character tables
"""

import json
from typing import IO, Any, Dict, List, Sequence

import pandas as pd

TABLE_COLUMNS = ["g", "order", "c", "eps", "psi"]
REPORT_COLUMNS = ["check", "params", "expected", "got", "residual", "pass"]

_ZERO_THRESHOLD = 1e-10


def _number(x: float, digits: int) -> str:
    text = f"{x:.{digits}g}"
    return "0" if text in ("-0", "0") else text


def format_complex(z: complex, digits: int = 12) -> str:
    """Render z as "a+bi" with ``digits`` significant digits, dropping vanishing parts."""
    z = complex(z)
    scale = max(1.0, abs(z))
    a = 0.0 if abs(z.real) < _ZERO_THRESHOLD * scale else z.real
    b = 0.0 if abs(z.imag) < _ZERO_THRESHOLD * scale else z.imag
    if b == 0:
        return _number(a, digits)
    imag = "i" if abs(b) == 1 else f"{_number(abs(b), digits)}i"
    if a == 0:
        return imag if b > 0 else f"-{imag}"
    sign = "+" if b > 0 else "-"
    return f"{_number(a, digits)}{sign}{imag}"


def format_matrix(matrix: Sequence[Sequence[int]]) -> str:
    """Compact JSON for an integer matrix, e.g. [[1,1],[0,1]]."""
    return json.dumps([[int(x) for x in row] for row in matrix], separators=(",", ":"))


def table_frame(rows: List[Dict[str, Any]]) -> pd.DataFrame:
    """Character table rows in the fixed column order g, order, c, eps, psi."""
    return pd.DataFrame(rows, columns=TABLE_COLUMNS)


def report_frame(entries: List[Dict[str, Any]]) -> pd.DataFrame:
    """Identity report entries as a frame, params flattened to compact JSON."""
    rows = [{**e, "params": json.dumps(e["params"], sort_keys=True, separators=(",", ":"))} for e in entries]
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def write_csv(frame: pd.DataFrame, stream: IO[str]) -> None:
    frame.to_csv(stream, index=False, lineterminator="\n")
