"""
Gamma and beta matrix functions: classical, extended and new extended.

Every beta-type value is a moment of one integrand over (0, 1). The
MomentSequence class computes whole families of moments B(P + nI, Q) on one
shared node set, so the hypergeometric series can reuse them term by term.
"""

import logging
import math
import threading
from collections.abc import Callable

import numpy as np
import scipy.linalg

from matspec.exceptions import PreconditionError, ShiftSingularityError
from matspec.schemas.params import GammaBetaParams
from matspec.schemas.reports import EvalReport, SidesReport
from matspec.schemas.specs import QuadratureSpec, SeriesSpec, Tolerances
from matspec.services import quadrature
from matspec.services.kernel import KummerKernel
from matspec.services.matcalc import (
    EPSILON,
    JointSpectrum,
    joint_spectrum,
    pochhammer,
    require_commuting,
    require_positive_stable,
    spectral_alpha_beta,
)
from matspec.utils.truncation import SeriesAccumulator
from matspec.utils.validators import SquareMatrix, frobenius, same_order

logger = logging.getLogger(__name__)

MOMENT_CHUNK = 32
MOMENT_CACHE_SIZE = 64
EXP_FLOOR = -745.0


def expm_stack(M: np.ndarray, coefficients: np.ndarray) -> np.ndarray:
    """expm(c_i M) for every coefficient, shape (len(c), r, r)."""
    return scipy.linalg.expm(np.asarray(coefficients)[:, None, None] * np.asarray(M)[None])


def exponent_bound(terms: list[tuple[np.ndarray, np.ndarray]]) -> np.ndarray:
    """Upper bound of Re sigma(sum c_i M_i) per node for commuting M_i."""
    bound: np.ndarray | float = 0.0
    for coefficients, matrix in terms:
        alpha, beta = spectral_alpha_beta(matrix)
        bound = bound + np.where(coefficients >= 0, alpha * coefficients, beta * coefficients)
    return np.asarray(bound)


def combined_exponential(terms: list[tuple[np.ndarray, np.ndarray]], nodes: int) -> np.ndarray:
    """expm(sum c_i M_i) per node; nodes whose bound underflows are zero."""
    order = terms[0][1].shape[0]
    out = np.zeros((nodes, order, order), dtype=np.complex128)
    live = exponent_bound(terms) > EXP_FLOOR
    if np.any(live):
        stack = sum(c[live][:, None, None] * np.asarray(m)[None] for c, m in terms)
        out[live] = scipy.linalg.expm(stack)
    return out


class MomentSequence:
    """
    The moments B(P + nI, Q) = int_0^1 t^n G(t) dt of one integrand G.

    Moments are produced in chunks of MOMENT_CHUNK on shared tanh-sinh
    levels. Level values w * G are cached, so later chunks cost one
    tensor contraction per level. Safe for concurrent readers.
    """

    def __init__(
        self,
        label: str,
        base: Callable[[np.ndarray, np.ndarray], np.ndarray],
        assemble: Callable[[np.ndarray], np.ndarray],
        spec: QuadratureSpec,
        error_scale: float = 1.0,
        kernel: KummerKernel | None = None,
    ):
        """
        Args:
            label: Name used in warnings
            base: G(t, 1 - t) over node arrays; (nodes, r) in an eigenbasis
                  or (nodes, r, r) as full matrices
            assemble: Maps a stack of raw integrals to matrices
            spec: Quadrature budget
            error_scale: Factor turning raw errors into matrix errors
            kernel: The kernel behind G, for warnings and dropped nodes
        """
        self.label = label
        self._base = base
        self._assemble = assemble
        self.spec = spec
        self.error_scale = error_scale
        self.kernel = kernel
        self.evaluations = 0
        self.warnings: list[str] = []
        self._levels: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self._values: list[np.ndarray] = []
        self._errors: list[float] = []
        self._converged: list[bool] = []
        self._lock = threading.Lock()

    def _level(self, level: int) -> tuple[np.ndarray, np.ndarray]:
        if level not in self._levels:
            t, tc, w = quadrature.unit_nodes(level)
            values = np.asarray(self._base(t, tc))
            quadrature.check_finite(values, t)
            shape = (w.shape[0],) + (1,) * (values.ndim - 1)
            self._levels[level] = (t, w.reshape(shape) * values)
            self.evaluations += t.shape[0]
        return self._levels[level]

    def _extend(self) -> None:
        start = len(self._values)
        exponents = np.arange(start, start + MOMENT_CHUNK)

        def level_sum(level: int) -> tuple[np.ndarray, int]:
            t, weighted = self._level(level)
            powers = np.power.outer(t, exponents)
            return np.tensordot(powers.T, weighted, axes=(1, 0)), t.shape[0]

        result = quadrature.refine(level_sum, self.spec, f"{self.label} moments {start}-{exponents[-1]}")
        matrices = self._assemble(result.value)
        converged = result.converged
        notes = list(result.warnings)
        if self.kernel is not None and self.kernel.warnings:
            notes.extend(self.kernel.warnings)
            # Dropped matrix-series nodes bias the integral.
            if not self.kernel.diagonal:
                converged = False
        for k in range(MOMENT_CHUNK):
            self._values.append(matrices[k])
            self._errors.append(result.error * self.error_scale)
            self._converged.append(converged)
        self.warnings.extend(n for n in notes if n not in self.warnings)

    def _ensure(self, n: int) -> None:
        if n < 0:
            raise IndexError(f"Moment index must be nonnegative, got {n}")
        with self._lock:
            while len(self._values) <= n:
                self._extend()

    def value(self, n: int) -> np.ndarray:
        self._ensure(n)
        return self._values[n]

    def error(self, n: int) -> float:
        self._ensure(n)
        return self._errors[n]

    def converged(self, n: int) -> bool:
        self._ensure(n)
        return self._converged[n]

    def report(self, n: int = 0) -> EvalReport:
        """The moment of index n as an EvalReport."""
        self._ensure(n)
        return EvalReport(
            value=self._values[n],
            error_estimate=self._errors[n],
            evaluations=self.evaluations,
            converged=self._converged[n],
            warnings=list(self.warnings),
        )

    def offset(self, k: int) -> "ShiftedMoments":
        """View with index n mapped to n + k, i.e. P replaced by P + kI."""
        return ShiftedMoments(self, k)


class ShiftedMoments:
    """A MomentSequence read from index k on."""

    def __init__(self, parent: MomentSequence, k: int):
        self.parent = parent
        self.k = k

    @property
    def evaluations(self) -> int:
        return self.parent.evaluations

    @property
    def warnings(self) -> list[str]:
        return self.parent.warnings

    def value(self, n: int) -> np.ndarray:
        return self.parent.value(n + self.k)

    def error(self, n: int) -> float:
        return self.parent.error(n + self.k)

    def converged(self, n: int) -> bool:
        return self.parent.converged(n + self.k)

    def report(self, n: int = 0) -> EvalReport:
        return self.parent.report(n + self.k)

    def offset(self, k: int) -> "ShiftedMoments":
        return ShiftedMoments(self.parent, self.k + k)


Moments = MomentSequence | ShiftedMoments


class GammaBetaService:
    """Gamma and beta matrix functions with every integral form."""

    def __init__(
        self,
        quadrature_spec: QuadratureSpec | None = None,
        series_spec: SeriesSpec | None = None,
        tolerances: Tolerances | None = None,
    ):
        """
        Args:
            quadrature_spec: Default quadrature budget
            series_spec: Default truncation rule for series and kernels
            tolerances: Precondition thresholds
        """
        self.quadrature = quadrature_spec or QuadratureSpec()
        self.series = series_spec or SeriesSpec()
        self.tolerances = tolerances or Tolerances()
        self._moments: dict[tuple, MomentSequence] = {}
        self._lock = threading.Lock()

    # Preconditions

    def _stable(self, name: str, M: np.ndarray, anchor: str) -> None:
        require_positive_stable(name, M, anchor, self.tolerances)

    def _stable_or_zero(self, name: str, M: np.ndarray, anchor: str) -> None:
        if frobenius(M) > 0.0:
            self._stable(name, M, anchor)

    def _commuting(self, named: dict[str, np.ndarray], anchor: str) -> None:
        require_commuting(named, anchor, self.tolerances)

    def _spec(self, spec: QuadratureSpec | None) -> QuadratureSpec:
        return spec or self.quadrature

    # Moment sequences

    def moments(
        self,
        A: SquareMatrix,
        B: SquareMatrix,
        Y: SquareMatrix,
        P: SquareMatrix,
        Q: SquareMatrix,
        *,
        kernel_first: bool = True,
        spec: QuadratureSpec | None = None,
    ) -> MomentSequence:
        """
        Moments of 1F1(A; B; -Y/(t(1-t))) t^(P-I) (1-t)^(Q-I).

        kernel_first places the kernel left of the powers; it only matters
        when the matrices do not share an eigenbasis.
        """
        same_order(A, B, Y, P, Q)
        spec = self._spec(spec)
        matrices = [np.asarray(m, dtype=np.complex128) for m in (A, B, Y, P, Q)]
        key = (kernel_first, spec) + tuple(m.tobytes() for m in matrices) + (matrices[0].shape[0],)
        with self._lock:
            cached = self._moments.get(key)
            if cached is not None:
                return cached
        sequence = self._build_moments(*matrices, kernel_first=kernel_first, spec=spec)
        with self._lock:
            if len(self._moments) >= MOMENT_CACHE_SIZE:
                self._moments.pop(next(iter(self._moments)))
            return self._moments.setdefault(key, sequence)

    def _build_moments(
        self,
        A: np.ndarray,
        B: np.ndarray,
        Y: np.ndarray,
        P: np.ndarray,
        Q: np.ndarray,
        kernel_first: bool,
        spec: QuadratureSpec,
    ) -> MomentSequence:
        order = A.shape[0]
        spectrum = joint_spectrum([A, B, Y, P, Q], self.tolerances)
        kernel = KummerKernel(A, B, Y, self.series, self.tolerances, spectrum=spectrum)
        label = "beta" if kernel.trivial else "new extended beta"
        if spectrum is not None:
            p, q = spectrum.eigenvalues[3], spectrum.eigenvalues[4]

            def diagonal(t: np.ndarray, tc: np.ndarray) -> np.ndarray:
                k = kernel.directional(np.zeros_like(t), -1.0 / (t * tc))
                return k * np.exp(np.outer(np.log(t), p - 1) + np.outer(np.log(tc), q - 1))

            return MomentSequence(label, diagonal, spectrum.assemble, spec, spectrum.error_scale(), kernel)

        eye = np.eye(order)

        def full(t: np.ndarray, tc: np.ndarray) -> np.ndarray:
            k = kernel.matrices(np.zeros_like(t), -1.0 / (t * tc))
            powers = expm_stack(P - eye, np.log(t)) @ expm_stack(Q - eye, np.log(tc))
            return k @ powers if kernel_first else powers @ k

        return MomentSequence(label, full, lambda values: values, spec, 1.0, kernel)

    def classical_moments(self, P: SquareMatrix, Q: SquareMatrix, spec: QuadratureSpec | None = None) -> MomentSequence:
        """Moments B(P + nI, Q) of the classical beta integrand."""
        eye = np.eye(np.asarray(P).shape[0])
        return self.moments(eye, eye, np.zeros_like(eye), P, Q, spec=spec)

    def extended_moments(
        self, P: SquareMatrix, Q: SquareMatrix, X: SquareMatrix, spec: QuadratureSpec | None = None
    ) -> MomentSequence:
        """Moments B(P + nI, Q; X) of the extended beta integrand (exp kernel)."""
        eye = np.eye(np.asarray(P).shape[0])
        return self.moments(eye, eye, X, P, Q, kernel_first=False, spec=spec)

    # Shared integration driver

    def integrate_forms(
        self,
        label: str,
        domain: str,
        spectrum: JointSpectrum | None,
        diagonal: Callable[..., np.ndarray],
        full: Callable[..., np.ndarray],
        spec: QuadratureSpec,
        kernel: KummerKernel | None = None,
    ) -> EvalReport:
        """
        Integrate in the shared eigenbasis when there is one, else as full matrices.

        Args:
            domain: "unit", "halfline" or "square"
            diagonal: Integrand returning (nodes, r) eigen-direction values
            full: Integrand returning (nodes, r, r) matrices
            kernel: Kernel whose dropped nodes mark the result unconverged
        """
        integrate = {
            "unit": quadrature.integrate_unit_array,
            "halfline": quadrature.integrate_halfline_array,
            "square": quadrature.integrate_unit_square_array,
        }[domain]
        if spectrum is not None:
            result = integrate(diagonal, spec, label)
            value = spectrum.assemble(result.value)
            error = result.error * spectrum.error_scale()
        else:
            result = integrate(full, spec, label)
            value, error = result.value, result.error
        warnings = list(result.warnings)
        converged = result.converged
        if kernel is not None and kernel.warnings:
            warnings.extend(w for w in kernel.warnings if w not in warnings)
            if not kernel.diagonal:
                converged = False
        return EvalReport(
            value=value,
            error_estimate=error,
            evaluations=result.evaluations,
            converged=converged,
            warnings=warnings,
        )

    # Classical gamma

    def gamma_matrix(self, A: SquareMatrix, spec: QuadratureSpec | None = None) -> EvalReport:
        """
        Gamma matrix function int_0^inf e^-t t^(A-I) dt.

        Raises:
            PreconditionError: If A is not positive stable
        """
        self._stable("A", A, "Eq. (1a1.4)")
        A = np.asarray(A)
        spectrum = joint_spectrum([A], self.tolerances)
        eye = np.eye(A.shape[0])

        def diagonal(u: np.ndarray) -> np.ndarray:
            a = spectrum.eigenvalues[0]  # type: ignore[union-attr]
            return np.exp(np.outer(np.log(u), a - 1) - u[:, None])

        def full(u: np.ndarray) -> np.ndarray:
            return combined_exponential([(np.log(u), A - eye), (-u, eye)], u.shape[0])

        return self.integrate_forms("gamma", "halfline", spectrum, diagonal, full, self._spec(spec))

    def gamma_reciprocal_report(self, A: SquareMatrix, n_shift: int | None = None) -> EvalReport:
        """
        Reciprocal gamma A(A+I)...(A+(n-1)I) Gamma^-1(A + nI).

        Args:
            A: Any square matrix
            n_shift: Shift depth; by default the smallest n with beta(A) + n > margin

        Raises:
            ShiftSingularityError: If A + kI is singular for some k < n_shift
            PreconditionError: If A + n_shift I is not positive stable
        """
        A = np.asarray(A, dtype=np.complex128)
        eye = np.eye(A.shape[0])
        beta = spectral_alpha_beta(A)[1]
        margin = self.tolerances.stability_margin
        if n_shift is None:
            n_shift = 0 if beta > margin else int(math.floor(margin - beta)) + 1
        if n_shift < 0:
            raise PreconditionError(
                f"Shift depth must be nonnegative, got {n_shift}", hypothesis="nonnegative shift", anchor="Eq. (eq.07)"
            )
        for k in range(n_shift):
            condition = float(np.linalg.cond(A + k * eye))
            if not np.isfinite(condition) or condition > 1.0 / EPSILON:
                raise ShiftSingularityError(f"A + {k}I is singular in the reciprocal gamma shift", k=k)
        gamma = self.gamma_matrix(A + n_shift * eye)
        logger.debug("Reciprocal gamma with shift %d", n_shift)
        return EvalReport.product(EvalReport.exact(pochhammer(A, n_shift)), gamma.inverse())

    def gamma_reciprocal(self, A: SquareMatrix, n_shift: int | None = None) -> SquareMatrix:
        """Reciprocal gamma value; see gamma_reciprocal_report."""
        return self.gamma_reciprocal_report(A, n_shift).value

    def pochhammer_via_gamma_report(self, A: SquareMatrix, n: int) -> EvalReport:
        """(A)_n as Gamma^-1(A) Gamma(A + nI)."""
        self._stable("A", A, "Eq. (c1eq.010)")
        A = np.asarray(A)
        if n == 0:
            return EvalReport.exact(np.eye(A.shape[0]))
        return EvalReport.product(self.gamma_reciprocal_report(A, 0), self.gamma_matrix(A + n * np.eye(A.shape[0])))

    def pochhammer_via_gamma(self, A: SquareMatrix, n: int) -> SquareMatrix:
        """(A)_n through the gamma function, for cross-checking matcalc.pochhammer."""
        return self.pochhammer_via_gamma_report(A, n).value

    # Classical beta

    def beta_matrix(
        self, A: SquareMatrix, B: SquareMatrix, form: str = "unit", spec: QuadratureSpec | None = None
    ) -> EvalReport:
        """
        Beta matrix function B(A, B).

        Args:
            form: "unit", "halfline" or "gamma_product"

        Raises:
            PreconditionError: If A or B is not positive stable or AB != BA
        """
        anchor = "Eqs. (1ca1.4)/(1ca1.5)"
        self._stable("A", A, anchor)
        self._stable("B", B, anchor)
        self._commuting({"A": A, "B": B}, anchor)
        A, B = np.asarray(A), np.asarray(B)
        if form == "unit":
            return self.classical_moments(A, B, spec).report(0)
        if form == "gamma_product":
            return EvalReport.product(
                self.gamma_matrix(A, spec), self.gamma_matrix(B, spec), self.gamma_reciprocal_report(A + B, 0)
            )
        if form != "halfline":
            raise ValueError(f"Unknown beta form: {form}")
        spectrum = joint_spectrum([A, B], self.tolerances)
        eye = np.eye(A.shape[0])

        def diagonal(u: np.ndarray) -> np.ndarray:
            a, b = spectrum.eigenvalues  # type: ignore[union-attr]
            return np.exp(np.outer(np.log(u), a - 1) - np.outer(np.log1p(u), a + b))

        def full(u: np.ndarray) -> np.ndarray:
            return combined_exponential([(np.log(u), A - eye), (-np.log1p(u), A + B)], u.shape[0])

        return self.integrate_forms("beta (half line)", "halfline", spectrum, diagonal, full, self._spec(spec))

    # Extended gamma and beta

    def gamma_extended(self, A: SquareMatrix, X: SquareMatrix, spec: QuadratureSpec | None = None) -> EvalReport:
        """
        Extended gamma int_0^inf t^(A-I) exp(-tI - X/t) dt.

        X = 0 reduces to gamma_matrix(A).
        """
        anchor = "extended gamma"
        self._stable("A", A, anchor)
        self._stable_or_zero("X", X, anchor)
        self._commuting({"A": A, "X": X}, anchor)
        A, X = np.asarray(A), np.asarray(X)
        spectrum = joint_spectrum([A, X], self.tolerances)
        eye = np.eye(A.shape[0])

        def diagonal(u: np.ndarray) -> np.ndarray:
            a, x = spectrum.eigenvalues  # type: ignore[union-attr]
            return np.exp(np.outer(np.log(u), a - 1) - u[:, None] - np.outer(1.0 / u, x))

        def full(u: np.ndarray) -> np.ndarray:
            return combined_exponential([(np.log(u), A - eye), (-u, eye), (-1.0 / u, X)], u.shape[0])

        return self.integrate_forms("extended gamma", "halfline", spectrum, diagonal, full, self._spec(spec))

    def beta_extended(
        self, A: SquareMatrix, B: SquareMatrix, X: SquareMatrix, spec: QuadratureSpec | None = None
    ) -> EvalReport:
        """
        Extended beta int_0^1 t^(A-I) (1-t)^(B-I) exp(-X/(t(1-t))) dt.

        X = 0 reduces to beta_matrix(A, B).
        """
        anchor = "Eq. (xb1)"
        self._stable("A", A, anchor)
        self._stable("B", B, anchor)
        self._stable_or_zero("X", X, anchor)
        self._commuting({"A": A, "B": B, "X": X}, anchor)
        return self.extended_moments(A, B, X, spec).report(0)

    def beta_extended_factorization_sides(
        self, A: SquareMatrix, B: SquareMatrix, X: SquareMatrix, spec: QuadratureSpec | None = None
    ) -> SidesReport:
        """
        B(A, B; X) against Gamma(A, X) Gamma(B, X) Gamma^-1(A + B, X).

        The two sides differ in general; the residual is reported, never asserted.
        """
        lhs = self.beta_extended(A, B, X, spec)
        A, B = np.asarray(A), np.asarray(B)
        rhs = EvalReport.product(
            self.gamma_extended(A, X, spec),
            self.gamma_extended(B, X, spec),
            self.gamma_extended(A + B, X, spec).inverse(),
        )
        return SidesReport(lhs=lhs, rhs=rhs)

    # New extended gamma

    def _new_gamma_checks(self, params: GammaBetaParams, anchor: str) -> tuple[np.ndarray, ...]:
        A, B, X = params.require("A", "B", "X")
        Y = params.Y if params.Y is not None else np.zeros_like(A)
        for name, M in (("A", A), ("B", B), ("X", X)):
            self._stable(name, M, anchor)
        self._stable_or_zero("Y", Y, anchor)
        self._stable("A - X", A - X, anchor)
        return A, B, X, Y

    def gamma_new_extended(self, params: GammaBetaParams, spec: QuadratureSpec | None = None) -> EvalReport:
        """
        New extended gamma int_0^inf 1F1(A; B; -tI - Y/t) t^(X-I) dt.

        The integral converges only for A - X positive stable.

        Raises:
            PreconditionError: If a role is not positive stable
        """
        A, B, X, Y = self._new_gamma_checks(params, "Eq. (3.1)")
        spectrum = joint_spectrum([A, B, Y, X], self.tolerances)
        kernel = KummerKernel(A, B, Y, self.series, self.tolerances, spectrum=spectrum)
        eye = np.eye(A.shape[0])

        def diagonal(u: np.ndarray) -> np.ndarray:
            x = spectrum.eigenvalues[3]  # type: ignore[union-attr]
            return kernel.directional(-u, -1.0 / u) * np.exp(np.outer(np.log(u), x - 1))

        def full(u: np.ndarray) -> np.ndarray:
            return kernel.matrices(-u, -1.0 / u) @ expm_stack(X - eye, np.log(u))

        return self.integrate_forms(
            "new extended gamma", "halfline", spectrum, diagonal, full, self._spec(spec), kernel
        )

    def gamma_new_extended_form2(self, params: GammaBetaParams, spec: QuadratureSpec | None = None) -> EvalReport:
        """
        Gamma(B) Gamma^-1(A) Gamma^-1(B-A) int_0^1 Gamma_{Y mu^2}(X) mu^(A-X-I) (1-mu)^(B-A-I) dmu.

        Raises:
            PreconditionError: If B - A is not positive stable or the roles do not commute
        """
        anchor = "Thm 3.1, Eq. (3.3)"
        A, B, X, Y = self._new_gamma_checks(params, anchor)
        self._stable("B - A", B - A, anchor)
        self._commuting({"A": A, "B": B, "X": X, "Y": Y}, anchor)
        spec = self._spec(spec)
        eye = np.eye(A.shape[0])
        spectrum = joint_spectrum([A, B, Y, X], self.tolerances)
        inner_errors: list[float] = []
        inner_failures: list[str] = []

        def track(result: quadrature.QuadratureResult) -> None:
            inner_errors.append(result.error)
            if not result.converged:
                inner_failures.extend(w for w in result.warnings if w not in inner_failures)

        def diagonal(mu: np.ndarray, muc: np.ndarray) -> np.ndarray:
            a, b, y, x = spectrum.eigenvalues  # type: ignore[union-attr]

            def inner(v: np.ndarray) -> np.ndarray:
                log_v = np.log(v)[:, None, None]
                return np.exp(
                    (x - 1)[None, None, :] * log_v
                    - v[:, None, None]
                    - (mu**2)[None, :, None] * y[None, None, :] / v[:, None, None]
                )

            result = quadrature.integrate_halfline_array(inner, spec, "inner extended gamma")
            track(result)
            weight = np.exp(np.outer(np.log(mu), a - x - 1) + np.outer(np.log(muc), b - a - 1))
            return result.value * weight

        def full(mu: np.ndarray, muc: np.ndarray) -> np.ndarray:
            out = np.empty((mu.shape[0], eye.shape[0], eye.shape[0]), dtype=np.complex128)
            for i, (m, mc) in enumerate(zip(mu, muc, strict=True)):
                scaled = Y * m * m

                def inner(v: np.ndarray, scaled: np.ndarray = scaled) -> np.ndarray:
                    return combined_exponential([(np.log(v), X - eye), (-v, eye), (-1.0 / v, scaled)], v.shape[0])

                result = quadrature.integrate_halfline_array(inner, spec, "inner extended gamma")
                track(result)
                out[i] = (
                    result.value
                    @ scipy.linalg.expm(np.log(m) * (A - X - eye))
                    @ scipy.linalg.expm(np.log(mc) * (B - A - eye))
                )
            return out

        integral = self.integrate_forms("new extended gamma (mu form)", "unit", spectrum, diagonal, full, spec)
        if inner_errors:
            integral = integral.model_copy(
                update={"error_estimate": integral.error_estimate + max(inner_errors)}
            )
        if inner_failures:
            integral = integral.with_warnings(inner_failures, converged=False)
        prefactor = EvalReport.product(
            self.gamma_matrix(B, spec),
            self.gamma_reciprocal_report(A, 0),
            self.gamma_reciprocal_report(B - A, 0),
        )
        return EvalReport.product(prefactor, integral)

    # New extended beta

    def _new_beta_roles(self, params: GammaBetaParams, anchor: str) -> tuple[np.ndarray, ...]:
        A, B, X, Z = params.require("A", "B", "X", "Z")
        Y = params.Y if params.Y is not None else np.zeros_like(A)
        for name, M in (("A", A), ("B", B), ("X", X), ("Z", Z)):
            self._stable(name, M, anchor)
        self._stable_or_zero("Y", Y, anchor)
        return A, B, X, Z, Y

    def beta_new_extended(self, params: GammaBetaParams, spec: QuadratureSpec | None = None) -> EvalReport:
        """
        New extended beta int_0^1 1F1(A; B; -Y/(t(1-t))) t^(X-I) (1-t)^(Z-I) dt.

        A = B gives the extended beta with matrix Y; Y = 0 gives the classical beta.
        """
        A, B, X, Z, Y = self._new_beta_roles(params, "Eq. (3.2)")
        return self.moments(A, B, Y, X, Z, spec=spec).report(0)

    def beta_new_extended_halfline(self, params: GammaBetaParams, spec: QuadratureSpec | None = None) -> EvalReport:
        """Half-line form int_0^inf 1F1(A; B; -2Y - Y(u + 1/u)) u^(X-I) (1+u)^-(X+Z) du."""
        anchor = "Thm 3.2, Eq. (e3.7)"
        A, B, X, Z, Y = self._new_beta_roles(params, anchor)
        self._stable("X + Z", X + Z, anchor)
        spectrum = joint_spectrum([A, B, Y, X, Z], self.tolerances)
        kernel = KummerKernel(A, B, Y, self.series, self.tolerances, spectrum=spectrum)
        eye = np.eye(A.shape[0])

        def diagonal(u: np.ndarray) -> np.ndarray:
            x, z = spectrum.eigenvalues[3], spectrum.eigenvalues[4]  # type: ignore[union-attr]
            k = kernel.directional(np.zeros_like(u), -(2.0 + u + 1.0 / u))
            return k * np.exp(np.outer(np.log(u), x - 1) - np.outer(np.log1p(u), x + z))

        def full(u: np.ndarray) -> np.ndarray:
            k = kernel.matrices(np.zeros_like(u), -(2.0 + u + 1.0 / u))
            return k @ expm_stack(X - eye, np.log(u)) @ expm_stack(-(X + Z), np.log1p(u))

        return self.integrate_forms(
            "new extended beta (half line)", "halfline", spectrum, diagonal, full, self._spec(spec), kernel
        )

    def beta_ne_summation(
        self,
        params: GammaBetaParams,
        spec: QuadratureSpec | None = None,
        series: SeriesSpec | None = None,
    ) -> EvalReport:
        """
        Sum over n of B_Y^(A,B)(X + nI, I) (Z)_n / n!.

        Equals beta_new_extended with Z replaced by I - Z. The terms decay
        algebraically; when the term budget runs out first, the remaining
        tail is summed from a power-law fit to the last terms.

        Raises:
            PreconditionError: If A, B, X or I - Z is not positive stable
        """
        anchor = "Thm 3.4, Eq. (3.10)"
        A, B, X, Z = params.require("A", "B", "X", "Z")
        Y = params.Y if params.Y is not None else np.zeros_like(A)
        eye = np.eye(A.shape[0])
        for name, M in (("A", A), ("B", B), ("X", X), ("I - Z", eye - Z)):
            self._stable(name, M, anchor)
        self._stable_or_zero("Y", Y, anchor)
        series = series or self.series
        moments = self.moments(A, B, Y, X, eye, spec=spec)
        acc = SeriesAccumulator(eye.shape, series)
        rising = eye.astype(np.complex128)
        error = 0.0
        n = 0
        while True:
            error += moments.error(n) * float(np.linalg.norm(rising))
            term = moments.value(n) @ rising
            if acc.add(term):
                break
            rising = rising @ (Z + n * eye) / (n + 1)
            n += 1
        value = acc.total
        truncation = acc.error_estimate
        summed = acc.converged
        warnings = list(moments.warnings)
        if not summed:
            fit = _power_law_tail(acc.norms)
            if fit is None:
                message = f"Summation unconverged after {acc.terms} terms"
                logger.warning(message)
                warnings.append(message)
            else:
                factor, p = fit
                value = value + factor * term
                truncation = factor * frobenius(term) * p / acc.terms
                summed = True
                logger.debug("Summation tail fitted with decay exponent %.3g", p)
        logger.debug("Summation truncated at %d terms", acc.terms)
        return EvalReport(
            value=value,
            error_estimate=error + truncation,
            evaluations=moments.evaluations,
            converged=summed and all(moments.converged(k) for k in range(acc.terms)),
            warnings=warnings,
        )


def _power_law_tail(norms: list[float]) -> tuple[float, float] | None:
    """
    Fit a_n ~ n^-p to the last two term norms.

    Returns:
        (s, p) with sum over n > N of a_n close to s a_N, or None when the
        terms do not decay faster than 1/n
    """
    if len(norms) < 3 or norms[-1] <= 0.0 or norms[-2] <= 0.0:
        return None
    n = len(norms) - 1
    p = math.log(norms[-2] / norms[-1]) / math.log(n / (n - 1))
    if p <= 1.0:
        return None
    # Integral of a_N (x / N)^-p from N + 1/2 on.
    return n * (n / (n + 0.5)) ** (p - 1.0) / (p - 1.0), p
