"""
Classical hypergeometric matrix series: 1F1 and 2F1.

Term order is fixed: (A)_n [(B)_n]^-1 M^n / n! for 1F1 and
(A1)_n (B1)_n [(C1)_n]^-1 z^n / n! for 2F1.
"""

import logging
from collections.abc import Iterator
from itertools import islice

import numpy as np
import scipy.linalg

from matspec.exceptions import DomainError, ParameterPoleError
from matspec.schemas.reports import EvalReport
from matspec.schemas.specs import SeriesSpec, Tolerances
from matspec.services.matcalc import EPSILON, commutes, spectral_alpha_beta
from matspec.utils.truncation import SeriesAccumulator
from matspec.utils.validators import SquareMatrix, frobenius, same_order

logger = logging.getLogger(__name__)


def _shift_inverse(C: np.ndarray, k: int) -> np.ndarray:
    shifted = C + k * np.eye(C.shape[0])
    condition = float(np.linalg.cond(shifted))
    if not np.isfinite(condition) or condition > 1.0 / EPSILON:
        raise ParameterPoleError(f"Parameter shifted by {k}I is singular (pole at n = {k + 1})", n=k + 1)
    return np.linalg.inv(shifted)


def _kummer_series(A: np.ndarray, B: np.ndarray, M: np.ndarray, spec: SeriesSpec) -> SeriesAccumulator:
    eye = np.eye(A.shape[0], dtype=np.complex128)
    rising = eye.copy()
    inverse_rising = eye.copy()
    power = eye.copy()
    acc = SeriesAccumulator(eye.shape, spec)
    n = 0
    while not acc.add(rising @ inverse_rising @ power):
        rising = rising @ (A + n * eye)
        inverse_rising = _shift_inverse(B, n) @ inverse_rising
        power = power @ M / (n + 1)
        n += 1
    return acc


def kummer_coefficients(A: SquareMatrix, B: SquareMatrix, count: int) -> list[np.ndarray]:
    """The first count coefficients (A)_n [(B)_n]^-1 / n! of 1F1(A; B; M)."""
    same_order(A, B)
    A, B = np.asarray(A), np.asarray(B)
    eye = np.eye(A.shape[0], dtype=np.complex128)
    rising = eye.copy()
    inverse_rising = eye.copy()
    coefficients: list[np.ndarray] = []
    for n in range(count):
        coefficients.append(rising @ inverse_rising)
        rising = rising @ (A + n * eye) / (n + 1)
        inverse_rising = _shift_inverse(B, n) @ inverse_rising
    return coefficients


def _transform_applies(A: np.ndarray, B: np.ndarray, M: np.ndarray, tolerances: Tolerances | None) -> bool:
    return commutes(A, M, tolerances) and commutes(B, M, tolerances) and commutes(A, B, tolerances)


def kummer_1f1(
    A: SquareMatrix,
    B: SquareMatrix,
    M: SquareMatrix,
    spec: SeriesSpec,
    tolerances: Tolerances | None = None,
) -> EvalReport:
    """
    Confluent hypergeometric matrix function 1F1(A; B; M).

    Arguments with alpha(M) below spec.kummer_threshold are summed via
    e^M 1F1(B - A; B; -M) when A, B and M commute pairwise. Non-commuting
    arguments are always summed directly, with a cancellation warning when
    alpha(M) is below the threshold.

    Raises:
        ParameterPoleError: If some B + kI is singular within the truncation depth
    """
    same_order(A, B, M)
    A, B, M = np.asarray(A), np.asarray(B), np.asarray(M)
    warnings: list[str] = []
    if frobenius(M) == 0.0:
        return EvalReport(value=np.eye(A.shape[0]), evaluations=1)
    alpha = spectral_alpha_beta(M)[0]
    if alpha < spec.kummer_threshold and _transform_applies(A, B, M, tolerances):
        acc = _kummer_series(B - A, B, -M, spec)
        prefactor = scipy.linalg.expm(M)
        value = prefactor @ acc.total
        error = frobenius(prefactor) * acc.error_estimate
    else:
        if alpha < spec.kummer_threshold:
            message = (
                f"1F1 summed directly at alpha(M) = {alpha:.3g} because A, B and M do not commute; "
                "the partial sums may lose accuracy to cancellation"
            )
            logger.debug(message)
            warnings.append(message)
        acc = _kummer_series(A, B, M, spec)
        value = acc.total
        error = acc.error_estimate
        # Cancellation: rounding in the largest partial term survives in the sum.
        error = max(error, EPSILON * max(acc.norms))
    if not acc.converged:
        message = f"1F1 series unconverged after {acc.terms} terms (||M|| = {frobenius(M):.3g})"
        logger.warning(message)
        warnings.append(message)
    logger.debug("1F1 truncated at %d terms", acc.terms)
    return EvalReport(
        value=value,
        error_estimate=error,
        evaluations=acc.terms,
        converged=acc.converged,
        warnings=warnings,
    )


def _gauss_coefficients(A1: np.ndarray, B1: np.ndarray, C1: np.ndarray) -> Iterator[np.ndarray]:
    """(A1)_n (B1)_n [(C1)_n]^-1 / n! for n = 0, 1, ..."""
    eye = np.eye(A1.shape[0], dtype=np.complex128)
    rising_a = eye.copy()
    rising_b = eye.copy()
    inverse_c = eye.copy()
    n = 0
    while True:
        yield rising_a @ rising_b @ inverse_c
        rising_a = rising_a @ (A1 + n * eye) / (n + 1)
        rising_b = rising_b @ (B1 + n * eye)
        inverse_c = _shift_inverse(C1, n) @ inverse_c
        n += 1


def gauss_coefficients(A1: SquareMatrix, B1: SquareMatrix, C1: SquareMatrix, count: int) -> list[np.ndarray]:
    """The first count coefficients of 2F1(A1, B1; C1; z) in powers of z."""
    same_order(A1, B1, C1)
    return list(islice(_gauss_coefficients(np.asarray(A1), np.asarray(B1), np.asarray(C1)), count))


def gauss_2f1(
    A1: SquareMatrix, B1: SquareMatrix, C1: SquareMatrix, z: complex, spec: SeriesSpec
) -> EvalReport:
    """
    Gauss hypergeometric matrix function as its defining series.

    Converges for |z| < 1, and on |z| = 1 when alpha(A1) + alpha(B1) < beta(C1).

    Raises:
        DomainError: Outside the convergence region
        ParameterPoleError: If some C1 + kI is singular
    """
    same_order(A1, B1, C1)
    z = complex(z)
    radius = abs(z)
    if radius > 1.0:
        raise DomainError(f"|z| = {radius:.6g} outside the convergence region of Eq. (52.9)")
    if radius == 1.0:
        alpha_a = spectral_alpha_beta(A1)[0]
        alpha_b = spectral_alpha_beta(B1)[0]
        beta_c = spectral_alpha_beta(C1)[1]
        if not alpha_a + alpha_b < beta_c:
            raise DomainError("|z| = 1 requires alpha(A1) + alpha(B1) < beta(C1) (Eq. (52.9))")
    A1, B1, C1 = np.asarray(A1), np.asarray(B1), np.asarray(C1)
    acc = SeriesAccumulator((A1.shape[0], A1.shape[0]), spec)
    power = 1.0 + 0.0j
    for coefficient in _gauss_coefficients(A1, B1, C1):
        if acc.add(coefficient * power):
            break
        power = power * z
    warnings: list[str] = []
    if not acc.converged:
        message = f"2F1 series unconverged after {acc.terms} terms at z = {z}"
        logger.warning(message)
        warnings.append(message)
    return EvalReport(
        value=acc.total,
        error_estimate=acc.error_estimate,
        evaluations=acc.terms,
        converged=acc.converged,
        warnings=warnings,
    )
