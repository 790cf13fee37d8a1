"""
The confluent kernel 1F1(A; B; c I + s Y) evaluated at many scalar pairs (c, s).

Every new extended integrand carries this factor at each quadrature node.
When A, B and Y share an eigenbasis the kernel is a scalar 1F1 per
eigen-direction; otherwise each node falls back to the matrix series.
"""

import logging

import mpmath
import numpy as np
import scipy.linalg
from pydantic import ValidationError
from scipy.special import hyp1f1

from matspec.exceptions import DimensionError
from matspec.schemas.specs import SeriesSpec, Tolerances
from matspec.services.matcalc import JointSpectrum, joint_spectrum, spectral_alpha_beta
from matspec.services.series import kummer_1f1
from matspec.utils.validators import SquareMatrix, frobenius

logger = logging.getLogger(__name__)

ASYMPTOTIC_THRESHOLD = 60.0
ASYMPTOTIC_TERMS = 80
# Matrix-series nodes beyond this argument norm are dropped.
MATRIX_ARGUMENT_LIMIT = 700.0
EXP_UNDERFLOW = 745.0
# Matrix-series kernel values with a larger relative error estimate are dropped.
SERIES_ERROR_LIMIT = 1e-8


def _is_real(value: complex) -> bool:
    return abs(complex(value).imag) <= 1e-14 * max(1.0, abs(value))


def _asymptotic(a: complex, b: complex, x: np.ndarray) -> np.ndarray:
    """Large negative argument: Gamma(b)/Gamma(b-a) (-x)^-a sum (a)_s (a-b+1)_s / s! (-x)^-s."""
    minus_x = -x
    inverse = 1.0 / minus_x
    term = np.ones_like(minus_x)
    total = term.copy()
    previous = np.abs(term)
    for s in range(ASYMPTOTIC_TERMS):
        term = term * (a + s) * (a - b + 1 + s) / (s + 1) * inverse
        size = np.abs(term)
        # Stop before the divergent part of the expansion.
        growing = size > previous
        term = np.where(growing, 0.0, term)
        total = total + term
        if np.all((size <= 1e-17 * np.abs(total)) | growing):
            break
        previous = np.where(growing, 0.0, size)
    prefactor = complex(mpmath.gamma(b) * mpmath.rgamma(b - a))
    return prefactor * np.power(minus_x, -a) * total


def hyp1f1_values(a: complex, b: complex, x: np.ndarray) -> np.ndarray:
    """
    Scalar 1F1(a; b; x) over an array of arguments.

    Real parameters use scipy; complex parameters use mpmath. Arguments with
    |x| >= ASYMPTOTIC_THRESHOLD and Re x < 0 use the algebraic expansion.
    """
    a, b = complex(a), complex(b)
    x = np.asarray(x, dtype=np.complex128)
    if abs(a - b) <= 1e-13 * max(1.0, abs(b)):
        return np.exp(x)
    out = np.empty_like(x)
    far = (np.abs(x) >= ASYMPTOTIC_THRESHOLD) & (x.real < 0)
    leading_vanishes = _is_real(b - a) and (b - a).real <= 0 and float((b - a).real).is_integer()
    if leading_vanishes:
        far[:] = False
    if np.any(far):
        out[far] = _asymptotic(a, b, x[far])
    near = ~far
    if np.any(near):
        values = x[near]
        if _is_real(a) and _is_real(b):
            if np.all(values.imag == 0):
                out[near] = hyp1f1(a.real, b.real, values.real)
            else:
                out[near] = hyp1f1(a.real, b.real, values)
        else:
            out[near] = [complex(mpmath.hyp1f1(a, b, complex(v))) for v in values]
    return out


class KummerKernel:
    """
    1F1(A; B; c I + s Y) for one fixed triple (A, B, Y).

    In diagonal mode `directional` returns the scalar kernel per eigen-direction
    of the shared basis; `matrices` always returns full matrices.
    """

    def __init__(
        self,
        A: SquareMatrix,
        B: SquareMatrix,
        Y: SquareMatrix,
        series: SeriesSpec,
        tolerances: Tolerances | None = None,
        spectrum: JointSpectrum | None = None,
        rows: tuple[int, int, int] = (0, 1, 2),
    ):
        self.A, self.B, self.Y = np.asarray(A), np.asarray(B), np.asarray(Y)
        self.series = series
        self.tolerances = tolerances or Tolerances()
        self.trivial = frobenius(self.Y) == 0.0
        self.exponential = frobenius(self.A - self.B) <= 1e-13 * max(1.0, frobenius(self.B))
        if spectrum is None:
            spectrum = joint_spectrum([self.A, self.B, self.Y], self.tolerances)
            rows = (0, 1, 2)
        self.spectrum = spectrum
        self.warnings: list[str] = []
        if spectrum is not None:
            self.a = spectrum.eigenvalues[rows[0]]
            self.b = spectrum.eigenvalues[rows[1]]
            self.y = spectrum.eigenvalues[rows[2]]
        logger.debug("Kernel path: %s", "diagonal" if self.diagonal else "matrix series")

    @property
    def diagonal(self) -> bool:
        return self.spectrum is not None

    def _note(self, message: str) -> None:
        if message not in self.warnings:
            logger.warning(message)
            self.warnings.append(message)

    def directional(self, c: np.ndarray, s: np.ndarray) -> np.ndarray:
        """Kernel per eigen-direction, shape (nodes, order)."""
        if self.spectrum is None:
            raise ValueError("directional kernel requires a shared eigenbasis")
        c = np.asarray(c, dtype=np.complex128)
        s = np.asarray(s, dtype=np.complex128)
        out = np.empty((c.shape[0], self.a.shape[0]), dtype=np.complex128)
        for j in range(self.a.shape[0]):
            if self.trivial and not np.any(c):
                out[:, j] = 1.0
                continue
            with np.errstate(over="ignore", invalid="ignore"):
                out[:, j] = hyp1f1_values(self.a[j], self.b[j], c + s * self.y[j])
        bad = ~np.isfinite(out)
        if np.any(bad):
            out[bad] = 0.0
            self._note(f"dropped {int(np.count_nonzero(np.any(bad, axis=1)))} kernel nodes with non-finite 1F1")
        return out

    def matrices(self, c: np.ndarray, s: np.ndarray) -> np.ndarray:
        """Kernel matrices, shape (nodes, order, order)."""
        c = np.asarray(c, dtype=np.complex128)
        s = np.asarray(s, dtype=np.complex128)
        order = self.A.shape[0]
        if self.spectrum is not None:
            return self.spectrum.assemble(self.directional(c, s))
        if self.trivial and not np.any(c):
            return np.broadcast_to(np.eye(order, dtype=np.complex128), (c.shape[0], order, order)).copy()
        out = np.zeros((c.shape[0], order, order), dtype=np.complex128)
        if self.exponential:
            beta_y = spectral_alpha_beta(self.Y)[1]
            for i, (ci, si) in enumerate(zip(c, s, strict=True)):
                if beta_y > 0 and si.real < 0 and ci.real <= 0 and abs(si) * beta_y > EXP_UNDERFLOW:
                    continue
                out[i] = np.exp(ci) * scipy.linalg.expm(si * self.Y)
            return out
        dropped = 0
        eye = np.eye(order)
        for i, (ci, si) in enumerate(zip(c, s, strict=True)):
            argument = ci * eye + si * self.Y
            if frobenius(argument) > MATRIX_ARGUMENT_LIMIT:
                dropped += 1
                continue
            try:
                report = kummer_1f1(self.A, self.B, argument, self.series, self.tolerances)
            except (DimensionError, ValidationError):
                dropped += 1
                continue
            accurate = report.error_estimate <= SERIES_ERROR_LIMIT * max(1.0, frobenius(report.value))
            if not (report.converged and accurate):
                dropped += 1
                continue
            if report.warnings:
                self._note("kernel summed directly for non-commuting A, B, Y at strongly negative arguments")
            out[i] = report.value
        if dropped:
            self._note(f"dropped {dropped} kernel nodes beyond the matrix-series range")
        return out
