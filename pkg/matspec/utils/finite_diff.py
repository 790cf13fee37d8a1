"""
Fourth-order central finite differences for matrix-valued functions.

Used to check the differential formulas against the series they differentiate.
"""

from collections.abc import Callable

import numpy as np

EPSILON = float(np.finfo(float).eps)

# Stencil offsets and weights; divide by 12 h**order.
_STENCILS: dict[int, tuple[tuple[int, ...], tuple[float, ...]]] = {
    1: ((-2, -1, 1, 2), (1.0, -8.0, 8.0, -1.0)),
    2: ((-2, -1, 0, 1, 2), (-1.0, 16.0, -30.0, 16.0, -1.0)),
}


def default_step(z: complex) -> float:
    """Step h = eps**(1/5) scaled by |z| + 1."""
    return EPSILON ** 0.2 * (abs(z) + 1.0)


def derivative(
    f: Callable[[complex], np.ndarray],
    z: complex,
    order: int = 1,
    h: float | None = None,
) -> np.ndarray:
    """
    Central difference of order 1 or 2 along the real direction.

    Args:
        f: Matrix-valued function of one scalar
        z: Evaluation point
        order: Derivative order (1 or 2)
        h: Step, defaults to default_step(z)

    Returns:
        Approximation of d^order f / dz^order
    """
    if order == 0:
        return np.asarray(f(z))
    if order not in _STENCILS:
        raise ValueError(f"Unsupported derivative order {order}")
    step = default_step(z) if h is None else h
    offsets, weights = _STENCILS[order]
    total = sum(w * np.asarray(f(z + k * step)) for k, w in zip(offsets, weights, strict=True))
    return total / (12.0 * step**order)


def partial_derivative(
    f: Callable[..., np.ndarray],
    point: tuple[complex, ...],
    orders: tuple[int, ...],
    h: float | None = None,
) -> np.ndarray:
    """
    Mixed partial derivative by nesting the one-dimensional stencils.

    Args:
        f: Matrix-valued function of len(point) scalars
        point: Evaluation point
        orders: Derivative order per coordinate (each 0, 1 or 2)
        h: Common step, defaults to default_step of the largest coordinate

    Returns:
        Approximation of the mixed partial derivative
    """
    step = default_step(max(abs(p) for p in point)) if h is None else h

    def along(axis: int, current: tuple[complex, ...]) -> np.ndarray:
        if axis == len(point):
            return np.asarray(f(*current))

        def slice_fn(x: complex) -> np.ndarray:
            moved = current[:axis] + (x,) + current[axis + 1:]
            return along(axis + 1, moved)

        return derivative(slice_fn, current[axis], orders[axis], step)

    return along(0, tuple(point))
