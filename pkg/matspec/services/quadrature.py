"""
Double-exponential quadrature for matrix-valued integrands.

Unit interval: tanh-sinh, t = 1 / (1 + exp(-pi sinh x)).
Half line: exp-sinh, u = exp(pi/2 sinh x).
Both use x in [-X_MAX, X_MAX] with step h = 2**-level; every level adds the
odd multiples of h and reuses the previous sum, S_k = S_{k-1}/2 + h * new.
Convergence is tested from level 3 on ||S_k - S_{k-1}||_F.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from matspec.exceptions import IntegrandError
from matspec.schemas.reports import EvalReport
from matspec.schemas.specs import QuadratureSpec

logger = logging.getLogger(__name__)

X_MAX = 5.0
MIN_LEVEL = 3


@dataclass
class QuadratureResult:
    """Raw integral of an array-valued integrand."""

    value: np.ndarray
    error: float
    evaluations: int
    converged: bool
    warnings: list[str] = field(default_factory=list)

    def report(self) -> EvalReport:
        return EvalReport(
            value=self.value,
            error_estimate=self.error,
            evaluations=self.evaluations,
            converged=self.converged,
            warnings=list(self.warnings),
        )


def level_abscissae(level: int) -> np.ndarray:
    """Abscissae added at the given level (all of them at level 0)."""
    if level == 0:
        return np.arange(-X_MAX, X_MAX + 0.5, 1.0)
    h = 2.0**-level
    count = int(round(X_MAX / h))
    odd = np.arange(1, count, 2, dtype=float)
    return np.concatenate((-odd[::-1], odd)) * h


def unit_nodes(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Tanh-sinh nodes of one level.

    Returns:
        (t, 1 - t, weight) with weight = dt/dx
    """
    x = level_abscissae(level)
    s = np.pi * np.sinh(x)
    t = expit(s)
    tc = expit(-s)
    return t, tc, np.pi * np.cosh(x) * t * tc


def halfline_nodes(level: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Exp-sinh nodes of one level.

    Returns:
        (u, weight) with weight = du/dx
    """
    x = level_abscissae(level)
    u = np.exp(0.5 * np.pi * np.sinh(x))
    return u, 0.5 * np.pi * np.cosh(x) * u


def check_finite(values: np.ndarray, nodes: np.ndarray) -> None:
    if np.all(np.isfinite(values)):
        return
    flat = values.reshape(values.shape[0], -1)
    bad = int(np.argmax(~np.all(np.isfinite(flat), axis=1)))
    raise IntegrandError(f"Integrand not finite at node {nodes[bad]:.17g}", node=float(nodes[bad]))


def _weighted_sum(weights: np.ndarray, values: np.ndarray) -> np.ndarray:
    shape = (weights.shape[0],) + (1,) * (values.ndim - 1)
    return np.sum(weights.reshape(shape) * values, axis=0)


def refine(
    level_sum: Callable[[int], tuple[np.ndarray, int]],
    spec: QuadratureSpec,
    label: str = "integral",
) -> QuadratureResult:
    """
    Level-doubling driver shared by every double-exponential rule.

    Args:
        level_sum: Returns (sum of weight * f over the new nodes, node count)
        spec: Accuracy target and budget
        label: Name used in warnings

    Returns:
        QuadratureResult, unconverged when the budget runs out
    """
    total: np.ndarray | None = None
    evaluations = 0
    error = float("inf")
    for level in range(spec.max_levels + 1):
        h = 2.0**-level
        partial, count = level_sum(level)
        evaluations += count
        if total is None:
            total = h * partial
            continue
        updated = 0.5 * total + h * partial
        error = float(np.linalg.norm(updated - total))
        total = updated
        if level >= MIN_LEVEL:
            target = max(spec.abs_tol, spec.rel_tol * float(np.linalg.norm(total)))
            if error <= target:
                logger.debug("%s converged at level %d (%d evaluations)", label, level, evaluations)
                return QuadratureResult(total, error, evaluations, True)
        if evaluations >= spec.max_evals:
            break
    assert total is not None
    message = f"{label}: quadrature unconverged after {evaluations} evaluations (estimate {error:.3g})"
    logger.warning(message)
    return QuadratureResult(total, error, evaluations, False, [message])


def integrate_unit_array(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    spec: QuadratureSpec,
    label: str = "unit integral",
) -> QuadratureResult:
    """Integrate a vectorized f(t, 1 - t) -> (nodes, ...) over (0, 1)."""

    def level_sum(level: int) -> tuple[np.ndarray, int]:
        t, tc, w = unit_nodes(level)
        values = np.asarray(f(t, tc))
        check_finite(values, t)
        return _weighted_sum(w, values), t.shape[0]

    return refine(level_sum, spec, label)


def integrate_halfline_array(
    f: Callable[[np.ndarray], np.ndarray],
    spec: QuadratureSpec,
    label: str = "half-line integral",
) -> QuadratureResult:
    """Integrate a vectorized f(u) -> (nodes, ...) over (0, inf)."""

    def level_sum(level: int) -> tuple[np.ndarray, int]:
        u, w = halfline_nodes(level)
        values = np.asarray(f(u))
        check_finite(values, u)
        return _weighted_sum(w, values), u.shape[0]

    return refine(level_sum, spec, label)


def integrate_unit_square_array(
    f: Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], np.ndarray],
    spec: QuadratureSpec,
    label: str = "unit-square integral",
) -> QuadratureResult:
    """
    Tensor-product tanh-sinh over (0, 1)^2.

    f(u, 1 - u, v, 1 - v) receives the full 1-D node sets of a level and
    returns an array of shape (len(u), len(v), ...). Each level is
    evaluated on its complete grid; max_evals caps the total grid points.
    """
    cache: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

    def nodes_through(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if level not in cache:
            parts = [unit_nodes(k) for k in range(level + 1)]
            cache[level] = tuple(np.concatenate([p[i] for p in parts]) for i in range(3))  # type: ignore[assignment]
        return cache[level]

    previous: np.ndarray | None = None
    evaluations = 0
    error = float("inf")
    total: np.ndarray | None = None
    for level in range(spec.max_levels + 1):
        h = 2.0**-level
        t, tc, w = nodes_through(level)
        if evaluations + t.shape[0] ** 2 > spec.max_evals and level > MIN_LEVEL:
            break
        values = np.asarray(f(t, tc, t, tc))
        flat = values.reshape(t.shape[0], t.shape[0], -1)
        if not np.all(np.isfinite(flat)):
            bad = np.argwhere(~np.isfinite(flat))[0]
            raise IntegrandError(
                f"Integrand not finite at node ({t[bad[0]]:.17g}, {t[bad[1]]:.17g})",
                node=float(t[bad[0]]),
            )
        evaluations += t.shape[0] ** 2
        total = h * h * np.einsum("i,j,ij...->...", w, w, values)
        if previous is not None:
            error = float(np.linalg.norm(total - previous))
            if level >= MIN_LEVEL:
                target = max(spec.abs_tol, spec.rel_tol * float(np.linalg.norm(total)))
                if error <= target:
                    logger.debug("%s converged at level %d (%d evaluations)", label, level, evaluations)
                    return QuadratureResult(total, error, evaluations, True)
        previous = total
    assert total is not None
    message = f"{label}: cubature unconverged after {evaluations} evaluations (estimate {error:.3g})"
    logger.warning(message)
    return QuadratureResult(total, error, evaluations, False, [message])


def integrate_unit(
    f: Callable[..., np.ndarray],
    spec: QuadratureSpec,
    *,
    complement: bool = False,
    vectorized: bool = False,
) -> EvalReport:
    """
    Integrate a matrix-valued f over (0, 1).

    Args:
        f: f(t), or f(t, 1 - t) when complement is set; with vectorized set
           f(t, 1 - t) receives node arrays and returns (nodes, r, r)
        spec: Accuracy target and budget
        complement: Pass the exactly computed 1 - t as second argument
        vectorized: Evaluate all nodes of a level in one call

    Returns:
        EvalReport; unconverged reports are returned, not raised

    Raises:
        IntegrandError: If f is not finite at an interior node
    """
    if vectorized:
        return integrate_unit_array(f, spec).report()

    def stacked(t: np.ndarray, tc: np.ndarray) -> np.ndarray:
        # Nodes that round to an endpoint carry no information in f(t) form.
        if not complement:
            inside = (t > 0.0) & (t < 1.0)
            sample = np.asarray(f(float(t[inside][0])))
            out = np.zeros((t.shape[0],) + sample.shape, dtype=np.complex128)
            for i in np.flatnonzero(inside):
                out[i] = f(float(t[i]))
            return out
        return np.stack([np.asarray(f(float(a), float(b)), dtype=np.complex128) for a, b in zip(t, tc, strict=True)])

    return integrate_unit_array(stacked, spec).report()


def integrate_halfline(
    f: Callable[..., np.ndarray],
    spec: QuadratureSpec,
    *,
    vectorized: bool = False,
) -> EvalReport:
    """
    Integrate a matrix-valued f over (0, inf) with the exp-sinh rule.

    Raises:
        IntegrandError: If f is not finite at a node
    """
    if vectorized:
        return integrate_halfline_array(f, spec).report()

    def stacked(u: np.ndarray) -> np.ndarray:
        return np.stack([np.asarray(f(float(x)), dtype=np.complex128) for x in u])

    return integrate_halfline_array(stacked, spec).report()


def integrate_unit_square(
    f: Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], np.ndarray],
    spec: QuadratureSpec,
) -> EvalReport:
    """Matrix-valued tensor-product cubature; f as in integrate_unit_square_array."""
    return integrate_unit_square_array(f, spec).report()
