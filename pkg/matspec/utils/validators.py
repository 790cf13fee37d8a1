"""
Validators for matrix-valued inputs.
"""

from typing import Any

import numpy as np
import numpy.typing as npt

from matspec.exceptions import DimensionError, DomainError

SquareMatrix = npt.NDArray[np.complex128]


def square_matrix(data: Any) -> SquareMatrix:
    """
    Build a validated SquareMatrix.

    Args:
        data: Nested sequence, scalar (1x1) or ndarray

    Returns:
        Read-only complex r x r array

    Raises:
        DimensionError: If the array is not square, empty or has non-finite entries
    """
    array = np.array(data, dtype=np.complex128)
    if array.ndim == 0:
        array = array.reshape(1, 1)
    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
        raise DimensionError(f"Expected a non-empty square matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise DimensionError("Matrix entries must be finite")
    array.setflags(write=False)
    return array


def identity(order: int) -> SquareMatrix:
    """Identity matrix of the given order."""
    return square_matrix(np.eye(order))


def same_order(*matrices: SquareMatrix) -> int:
    """
    Check that all matrices share one order.

    Returns:
        The common order

    Raises:
        DimensionError: On order mismatch
    """
    orders = {m.shape[0] for m in matrices}
    if len(orders) != 1:
        raise DimensionError(f"Matrix orders differ: {sorted(orders)}")
    return orders.pop()


def frobenius(matrix: npt.ArrayLike) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(np.asarray(matrix)))


def validate_unit_disk(z: complex, anchor: str, closed: bool = False) -> complex:
    """
    Check |z| < 1 (or <= 1 when closed).

    Raises:
        DomainError: If z lies outside the convergence disk
    """
    z = complex(z)
    radius = abs(z)
    if radius > 1.0 or (radius == 1.0 and not closed):
        raise DomainError(f"|z| = {radius:.6g} outside the convergence region of {anchor}")
    return z


def validate_positive(value: float, name: str) -> float:
    """Validate a strictly positive real setting."""
    if not value > 0:
        raise DomainError(f"{name} must be positive, got {value}")
    return float(value)
