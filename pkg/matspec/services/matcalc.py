"""
Matrix functional calculus primitives.

Spectral data, positive stability, matrix powers, Pochhammer symbols and the
binomial series. Every function is pure and returns read-only matrices.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from matspec.exceptions import (
    DomainError,
    EigenFailureError,
    EvaluationError,
    NonDiagonalizableError,
    PreconditionError,
)
from matspec.schemas.reports import SpectralData
from matspec.schemas.specs import SeriesSpec, Tolerances
from matspec.utils.truncation import SeriesAccumulator
from matspec.utils.validators import (
    SquareMatrix,
    frobenius,
    identity,
    same_order,
    square_matrix,
    validate_unit_disk,
)

logger = logging.getLogger(__name__)

EPSILON = float(np.finfo(float).eps)

# Off-diagonal residual accepted when one basis diagonalizes a whole family.
JOINT_OFFDIAG_TOL = 1e-9


def _eigenvalues(matrix: np.ndarray) -> np.ndarray:
    try:
        values = scipy.linalg.eigvals(matrix)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise EigenFailureError(f"Eigenvalue iteration failed: {e}", order=matrix.shape[0]) from e
    if not np.all(np.isfinite(values)):
        raise EigenFailureError("Eigenvalue iteration returned non-finite values", order=matrix.shape[0])
    return values


def spectral_alpha_beta(A: SquareMatrix) -> tuple[float, float]:
    """
    Largest and smallest real part over the spectrum of A.

    Returns:
        (alpha, beta) with alpha = max Re(sigma(A)) and beta = min Re(sigma(A))
    """
    values = _eigenvalues(np.asarray(A))
    return float(np.max(values.real)), float(np.min(values.real))


def is_positive_stable(A: SquareMatrix, margin: float = 0.0) -> bool:
    """True iff min Re(sigma(A)) > margin."""
    if margin < 0:
        raise DomainError(f"Stability margin must be nonnegative, got {margin}")
    return spectral_alpha_beta(A)[1] > margin


def commutator_norm(A: SquareMatrix, B: SquareMatrix) -> float:
    """Frobenius norm of AB - BA."""
    same_order(A, B)
    return frobenius(A @ B - B @ A)


def real_power(t: float, A: SquareMatrix) -> SquareMatrix:
    """
    t**A = exp(A ln t) for real t > 0.

    Raises:
        DomainError: If t <= 0
    """
    if not t > 0:
        raise DomainError(f"real_power requires t > 0, got {t}")
    if t == 1.0:
        return identity(A.shape[0])
    return square_matrix(scipy.linalg.expm(np.asarray(A) * np.log(t)))


def complex_power(base: complex, A: SquareMatrix) -> SquareMatrix:
    """
    base**A = exp(A Log base) on the principal branch.

    Raises:
        DomainError: If base is zero or lies on the branch cut (negative real axis)
    """
    base = complex(base)
    if base == 0 or (base.imag == 0 and base.real < 0):
        raise DomainError(f"complex_power base {base} lies on the branch cut")
    return square_matrix(scipy.linalg.expm(np.asarray(A) * np.log(base)))


def pochhammer(A: SquareMatrix, n: int) -> SquareMatrix:
    """Rising factorial (A)_n = A(A+I)...(A+(n-1)I), with (A)_0 = I."""
    if n < 0:
        raise DomainError(f"Pochhammer index must be nonnegative, got {n}")
    eye = np.eye(A.shape[0], dtype=np.complex128)
    result = eye.copy()
    for k in range(n):
        result = result @ (A + k * eye)
    return square_matrix(result)


def binomial_series(z: complex, A: SquareMatrix, spec: SeriesSpec) -> SquareMatrix:
    """
    (1 - z)**(-A) as the partial sums of sum (A)_n z^n / n!.

    Raises:
        DomainError: If |z| >= 1
    """
    z = validate_unit_disk(z, anchor="Eq. (s11)")
    eye = np.eye(A.shape[0], dtype=np.complex128)
    term = eye.copy()
    acc = SeriesAccumulator(eye.shape, spec)
    n = 0
    while not acc.add(term):
        term = term @ (A + n * eye) * (z / (n + 1))
        n += 1
    if not acc.converged:
        logger.warning("binomial_series unconverged after %d terms at z=%s", acc.terms, z)
    return square_matrix(acc.total)


def spectral_decompose(A: SquareMatrix, tolerances: Tolerances | None = None) -> SpectralData:
    """
    Eigen-decomposition with eigenvalues sorted by (Re, Im).

    Raises:
        NonDiagonalizableError: If the eigenvector condition number exceeds the cap
    """
    cap = (tolerances or Tolerances()).condition_cap
    matrix = np.asarray(A)
    try:
        values, vectors = scipy.linalg.eig(matrix)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise EigenFailureError(f"Eigen decomposition failed: {e}", order=matrix.shape[0]) from e
    order = np.lexsort((values.imag, values.real))
    values = values[order]
    vectors = vectors[:, order]
    condition = float(np.linalg.cond(vectors))
    if not np.isfinite(condition) or condition > cap:
        raise NonDiagonalizableError(
            f"Eigenbasis condition estimate {condition:.3g} exceeds cap {cap:.3g}"
        )
    inverse = np.linalg.inv(vectors)
    return SpectralData(
        eigenvalues=values,
        eigenvector_matrix=square_matrix(vectors),
        inverse_eigenvector_matrix=square_matrix(inverse),
        condition_estimate=condition,
    )


def apply_scalar_function(S: SpectralData, f: Callable[[complex], complex]) -> SquareMatrix:
    """
    P diag(f(lambda_i)) P^-1.

    Raises:
        EvaluationError: If f is not finite at some eigenvalue
    """
    mapped = np.empty_like(S.eigenvalues)
    for i, value in enumerate(S.eigenvalues):
        result = complex(f(complex(value)))
        if not np.isfinite(result):
            raise EvaluationError(f"Scalar function not finite at eigenvalue {value}", eigenvalue=complex(value))
        mapped[i] = result
    return square_matrix(S.eigenvector_matrix @ np.diag(mapped) @ S.inverse_eigenvector_matrix)


def require_positive_stable(
    name: str, A: SquareMatrix, anchor: str, tolerances: Tolerances | None = None
) -> None:
    """
    Raises:
        PreconditionError: If A is not positive stable within the configured margin
    """
    margin = (tolerances or Tolerances()).stability_margin
    beta = spectral_alpha_beta(A)[1]
    if not beta > margin:
        raise PreconditionError(
            f"{name} is not positive stable (min Re sigma = {beta:.6g}) as required by {anchor}",
            hypothesis="positive stable",
            anchor=anchor,
        )


def commutes(A: SquareMatrix, B: SquareMatrix, tolerances: Tolerances | None = None) -> bool:
    """Commutator norm within commutator_tol * max(||A|| ||B||, 1)."""
    tol = (tolerances or Tolerances()).commutator_tol
    return commutator_norm(A, B) <= tol * max(frobenius(A) * frobenius(B), 1.0)


def require_commuting(
    named: dict[str, SquareMatrix], anchor: str, tolerances: Tolerances | None = None
) -> None:
    """
    Check pairwise commutation of the named matrices.

    Raises:
        PreconditionError: On the first non-commuting pair
    """
    names = list(named)
    for i, first in enumerate(names):
        for second in names[i + 1:]:
            if not commutes(named[first], named[second], tolerances):
                raise PreconditionError(
                    f"{first} and {second} do not commute as required by {anchor}",
                    hypothesis="commuting",
                    anchor=anchor,
                )


@dataclass(frozen=True)
class JointSpectrum:
    """One eigenbasis diagonalizing several commuting matrices."""

    basis: np.ndarray
    inverse: np.ndarray
    eigenvalues: np.ndarray  # (members, order)
    condition: float

    def assemble(self, diagonal: np.ndarray) -> np.ndarray:
        """P diag(d) P^-1 applied over the trailing axis of d."""
        return np.einsum("ij,...j,jk->...ik", self.basis, diagonal, self.inverse)

    def error_scale(self) -> float:
        """Bound on ||P diag(e) P^-1|| / ||e||."""
        return float(np.linalg.norm(self.basis, 2) * np.linalg.norm(self.inverse, 2))


def joint_spectrum(
    matrices: Sequence[SquareMatrix], tolerances: Tolerances | None = None
) -> JointSpectrum | None:
    """
    Diagonalize a commuting family with the eigenvectors of a generic combination.

    Returns:
        JointSpectrum, or None when the family does not commute, is not
        diagonalizable, or the basis is too ill-conditioned
    """
    tolerances = tolerances or Tolerances()
    order = same_order(*matrices)
    for i, first in enumerate(matrices):
        for second in matrices[i + 1:]:
            if not commutes(first, second, tolerances):
                return None
    weights = [0.5 + ((k + 1) * 0.6180339887498949) % 1.0 for k in range(len(matrices))]
    generic = sum(w * np.asarray(m) for w, m in zip(weights, matrices, strict=True))
    try:
        values, vectors = scipy.linalg.eig(generic)
    except (np.linalg.LinAlgError, ValueError):
        return None
    permutation = np.lexsort((values.imag, values.real))
    vectors = vectors[:, permutation]
    condition = float(np.linalg.cond(vectors))
    if not np.isfinite(condition) or condition > tolerances.condition_cap:
        return None
    inverse = np.linalg.inv(vectors)
    eigenvalues = np.empty((len(matrices), order), dtype=np.complex128)
    for k, matrix in enumerate(matrices):
        projected = inverse @ np.asarray(matrix) @ vectors
        diagonal = np.diag(projected).copy()
        off = frobenius(projected - np.diag(diagonal))
        if off > JOINT_OFFDIAG_TOL * max(frobenius(matrix), 1.0) * condition:
            return None
        eigenvalues[k] = diagonal
    return JointSpectrum(basis=vectors, inverse=inverse, eigenvalues=eigenvalues, condition=condition)


def inverse(A: np.ndarray, what: str = "matrix") -> np.ndarray:
    """
    Inverse with a conditioning guard.

    Raises:
        EvaluationError: If A is numerically singular
    """
    condition = float(np.linalg.cond(A))
    if not np.isfinite(condition) or condition > 1.0 / EPSILON:
        raise EvaluationError(f"{what} is numerically singular (cond {condition:.3g})", eigenvalue=0j)
    return np.linalg.inv(A)
