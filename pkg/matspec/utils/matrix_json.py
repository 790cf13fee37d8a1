"""
JSON encoding for matrices shared by the CLI and reports.

Canonical form: {"order": r, "entries": [[[re, im], ...], ...]} (row-major).
A plain real nested list [[1.0, 2.0], ...] is accepted and promoted.
"""

from typing import Any

import numpy as np

from matspec.exceptions import DimensionError
from matspec.utils.validators import SquareMatrix, square_matrix


def _entry(value: Any) -> complex:
    if isinstance(value, list | tuple):
        if len(value) != 2:
            raise DimensionError(f"Complex entry must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise DimensionError(f"Matrix entry must be a number or [re, im], got {value!r}")
    return complex(float(value), 0.0)


def decode_matrix(payload: Any) -> SquareMatrix:
    """
    Decode a matrix from its JSON form.

    Args:
        payload: Canonical dict, real shorthand list, or a bare number (1x1)

    Returns:
        Validated SquareMatrix
    """
    if isinstance(payload, dict):
        if "entries" not in payload:
            raise DimensionError("Matrix object requires an 'entries' field")
        rows = payload["entries"]
        matrix = square_matrix([[_entry(v) for v in row] for row in rows])
        declared = payload.get("order")
        if declared is not None and int(declared) != matrix.shape[0]:
            raise DimensionError(
                f"Declared order {declared} does not match entries of order {matrix.shape[0]}"
            )
        return matrix
    if isinstance(payload, int | float) and not isinstance(payload, bool):
        return square_matrix([[float(payload)]])
    if isinstance(payload, list):
        return square_matrix([[_entry(v) for v in row] for row in payload])
    raise DimensionError(f"Cannot decode matrix from {type(payload).__name__}")


def encode_matrix(matrix: np.ndarray) -> dict[str, Any]:
    """Encode a matrix in the canonical JSON form."""
    matrix = np.asarray(matrix, dtype=np.complex128)
    return {
        "order": int(matrix.shape[0]),
        "entries": [[[float(v.real), float(v.imag)] for v in row] for row in matrix],
    }


def decode_scalar(payload: Any) -> complex:
    """Decode a scalar argument given as a number or [re, im]."""
    return _entry(payload)
