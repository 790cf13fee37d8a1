"""
One-variable hypergeometric matrix functions.

Classical 1F1 and 2F1, the extended Gauss and Kummer functions (EGHMF,
EKHMF) and the new extended NEGHMF/NECHMF with their integral forms,
derivative formulas and transformations. Series terms are written in the
printed order (A1)_n B_Y(B1 + nI, C1 - B1) [B(B1, C1 - B1)]^-1 z^n / n!.
"""

import cmath
import logging

import numpy as np

from matspec.exceptions import DomainError
from matspec.schemas.params import HyperParams
from matspec.schemas.reports import EvalReport, SidesReport
from matspec.schemas.specs import QuadratureSpec, SeriesSpec
from matspec.services import series as classical
from matspec.services.gammabeta import GammaBetaService, Moments, expm_stack
from matspec.services.kernel import KummerKernel
from matspec.services.matcalc import complex_power, joint_spectrum, pochhammer, spectral_alpha_beta
from matspec.utils.truncation import SeriesAccumulator
from matspec.utils.validators import SquareMatrix

logger = logging.getLogger(__name__)

TRANSFORMS = ("pfaff_z_over_zm1", "euler_one_minus_z", "z_over_1pz")


def transform_argument(which: str, z: complex, printed: bool = False) -> complex:
    """Argument of the left-hand NEGHMF in each transformation formula."""
    if which == "pfaff_z_over_zm1":
        return z
    if which == "euler_one_minus_z":
        return z if printed else 1.0 - 1.0 / z
    if which == "z_over_1pz":
        return z / (1.0 + z)
    raise ValueError(f"Unknown transformation: {which}")


class HyperService:
    """NEGHMF, NECHMF and their classical and extended relatives."""

    def __init__(self, gammabeta: GammaBetaService):
        self.gammabeta = gammabeta
        self.series = gammabeta.series
        self.tolerances = gammabeta.tolerances

    # Classical

    def kummer_1f1(
        self, A: SquareMatrix, B: SquareMatrix, M: SquareMatrix, series: SeriesSpec | None = None
    ) -> EvalReport:
        return classical.kummer_1f1(A, B, M, series or self.series, self.tolerances)

    def gauss_2f1(
        self, A1: SquareMatrix, B1: SquareMatrix, C1: SquareMatrix, z: complex, series: SeriesSpec | None = None
    ) -> EvalReport:
        return classical.gauss_2f1(A1, B1, C1, z, series or self.series)

    # Roles and domains

    def _roles(self, p: HyperParams, anchor: str, gauss: bool) -> tuple[np.ndarray, ...]:
        names = ("A", "B", "A1", "B1", "C1") if gauss else ("A", "B", "B1", "C1")
        roles = p.require(*names)
        A, B = roles[0], roles[1]
        B1, C1 = roles[-2], roles[-1]
        A1 = roles[2] if gauss else None
        Y = p.Y if p.Y is not None else np.zeros_like(A)
        gb = self.gammabeta
        gb._stable("A", A, anchor)
        gb._stable("B", B, anchor)
        gb._stable("B1", B1, anchor)
        gb._stable("C1 - B1", C1 - B1, anchor)
        gb._stable_or_zero("Y", Y, anchor)
        return A, B, A1, B1, C1, Y

    def _check_gauss_domain(self, z: complex, A1: np.ndarray, B1: np.ndarray, C1: np.ndarray, anchor: str) -> None:
        radius = abs(z)
        if radius > 1.0:
            raise DomainError(f"|z| = {radius:.6g} outside the convergence region of {anchor}")
        if radius == 1.0:
            alpha = spectral_alpha_beta(A1)[0] + spectral_alpha_beta(B1)[0]
            if not alpha < spectral_alpha_beta(C1)[1]:
                raise DomainError(f"|z| = 1 requires alpha(A1) + alpha(B1) < beta(C1) ({anchor})")

    def normalizer(self, B1: np.ndarray, C1: np.ndarray, shift: int = 0, spec: QuadratureSpec | None = None) -> EvalReport:
        """[B(B1 + shift I, C1 - B1)]^-1 from the classical moment sequence."""
        return self.gammabeta.classical_moments(B1, C1 - B1, spec).report(shift).inverse()

    def _beta_series(
        self,
        label: str,
        moments: Moments,
        normalizer: EvalReport,
        z: complex,
        rising_base: np.ndarray | None,
        series: SeriesSpec,
    ) -> EvalReport:
        """
        Sum of (R)_n M_n N z^n / n! with (R)_n omitted when rising_base is None.
        """
        N = np.asarray(normalizer.value)
        order = N.shape[0]
        eye = np.eye(order)
        acc = SeriesAccumulator((order, order), series)
        rising = eye.astype(np.complex128)
        scalar = 1.0 + 0.0j
        error = 0.0
        converged = True
        n = 0
        while True:
            left = rising * scalar
            error += float(np.linalg.norm(left)) * moments.error(n) * float(np.linalg.norm(N))
            converged = converged and moments.converged(n)
            if acc.add(left @ moments.value(n) @ N):
                break
            if rising_base is not None:
                rising = rising @ (rising_base + n * eye)
            scalar = scalar * z / (n + 1)
            n += 1
        # total = S N, so a relative error in N carries over.
        n_norm = float(np.linalg.norm(N))
        if n_norm > 0.0:
            error += float(np.linalg.norm(acc.total)) * normalizer.error_estimate / n_norm
        warnings = list(moments.warnings) + [w for w in normalizer.warnings if w not in moments.warnings]
        if not acc.converged:
            message = f"{label} series unconverged after {acc.terms} terms at z = {z}"
            logger.warning(message)
            warnings.append(message)
        logger.debug("%s truncated at %d terms", label, acc.terms)
        return EvalReport(
            value=acc.total,
            error_estimate=error + acc.error_estimate,
            evaluations=moments.evaluations,
            converged=acc.converged and converged and normalizer.converged,
            warnings=warnings,
        )

    # Extended Gauss and Kummer

    def _extended_roles(self, p: HyperParams, anchor: str, gauss: bool) -> tuple[np.ndarray, ...]:
        A1 = p.require("A1")[0] if gauss else None
        B1, C1 = p.require("B1", "C1")
        X = p.X if p.X is not None else np.zeros_like(B1)
        gb = self.gammabeta
        gb._stable("B1", B1, anchor)
        gb._stable("C1", C1, anchor)
        gb._stable("C1 - B1", C1 - B1, anchor)
        gb._stable_or_zero("X", X, anchor)
        gb._commuting({"B1": B1, "C1": C1, "X": X}, anchor)
        return A1, B1, C1, X

    def _gamma_normalizer(self, B1: np.ndarray, C1: np.ndarray) -> EvalReport:
        gb = self.gammabeta
        return EvalReport.product(
            gb.gamma_matrix(C1), gb.gamma_reciprocal_report(B1, 0), gb.gamma_reciprocal_report(C1 - B1, 0)
        )

    def eghmf(self, p: HyperParams, spec: QuadratureSpec | None = None, series: SeriesSpec | None = None) -> EvalReport:
        """
        Extended Gauss hypergeometric matrix function with extension matrix X.

        Sum of (A1)_m B(B1 + mI, C1 - B1; X) z^m / m! times
        Gamma(C1) Gamma^-1(B1) Gamma^-1(C1 - B1).
        """
        anchor = "Eq. (eg1)"
        A1, B1, C1, X = self._extended_roles(p, anchor, gauss=True)
        self._check_gauss_domain(p.z, A1, B1, C1, anchor)
        moments = self.gammabeta.extended_moments(B1, C1 - B1, X, spec)
        return self._beta_series("EGHMF", moments, self._gamma_normalizer(B1, C1), p.z, A1, series or self.series)

    def ekhmf(self, p: HyperParams, spec: QuadratureSpec | None = None, series: SeriesSpec | None = None) -> EvalReport:
        """Extended Kummer hypergeometric matrix function; EGHMF without (A1)_m."""
        _, B1, C1, X = self._extended_roles(p, "Eq. (kh1)", gauss=False)
        moments = self.gammabeta.extended_moments(B1, C1 - B1, X, spec)
        return self._beta_series("EKHMF", moments, self._gamma_normalizer(B1, C1), p.z, None, series or self.series)

    # New extended series

    def neghmf_series(
        self,
        p: HyperParams,
        spec: QuadratureSpec | None = None,
        series: SeriesSpec | None = None,
        shift: int = 0,
    ) -> EvalReport:
        """
        NEGHMF 2F1^(A,B;Y)(A1 + kI, B1 + kI; C1 + kI; z) for shift k.

        Shifting B1 and C1 together leaves C1 - B1 fixed, so shifted series
        read the same moment sequence from index k.

        Raises:
            DomainError: If |z| > 1, or |z| = 1 without alpha(A1) + alpha(B1) < beta(C1)
        """
        anchor = "Eq. (4.1)"
        A, B, A1, B1, C1, Y = self._roles(p, anchor, gauss=True)
        eye = np.eye(A.shape[0])
        self._check_gauss_domain(p.z, A1 + shift * eye, B1 + shift * eye, C1 + shift * eye, anchor)
        moments = self.gammabeta.moments(A, B, Y, B1, C1 - B1, spec=spec).offset(shift)
        normalizer = self.normalizer(B1, C1, shift, spec)
        return self._beta_series("NEGHMF", moments, normalizer, p.z, A1 + shift * eye, series or self.series)

    def nechmf_series(
        self,
        p: HyperParams,
        spec: QuadratureSpec | None = None,
        series: SeriesSpec | None = None,
        shift: int = 0,
    ) -> EvalReport:
        """NECHMF 1F1^(A,B;Y)(B1 + kI; C1 + kI; z) for shift k; entire in z."""
        A, B, _, B1, C1, Y = self._roles(p, "Eq. (4.2)", gauss=False)
        moments = self.gammabeta.moments(A, B, Y, B1, C1 - B1, spec=spec).offset(shift)
        normalizer = self.normalizer(B1, C1, shift, spec)
        return self._beta_series("NECHMF", moments, normalizer, p.z, None, series or self.series)

    # Series coefficients

    def _beta_coefficients(
        self, moments: Moments, normalizer: EvalReport, rising_base: np.ndarray | None, count: int
    ) -> list[np.ndarray]:
        """(R)_n M_n N / n! for n < count, with (R)_n omitted when rising_base is None."""
        N = np.asarray(normalizer.value)
        eye = np.eye(N.shape[0])
        rising = eye.astype(np.complex128)
        coefficients: list[np.ndarray] = []
        for n in range(count):
            coefficients.append(rising @ moments.value(n) @ N)
            if rising_base is not None:
                rising = rising @ (rising_base + n * eye)
            rising = rising / (n + 1)
        return coefficients

    def neghmf_coefficients(self, p: HyperParams, count: int, spec: QuadratureSpec | None = None) -> list[np.ndarray]:
        """Coefficients of z^n, n < count, in the NEGHMF series."""
        A, B, A1, B1, C1, Y = self._roles(p, "Eq. (4.1)", gauss=True)
        moments = self.gammabeta.moments(A, B, Y, B1, C1 - B1, spec=spec)
        return self._beta_coefficients(moments, self.normalizer(B1, C1, 0, spec), A1, count)

    def nechmf_coefficients(self, p: HyperParams, count: int, spec: QuadratureSpec | None = None) -> list[np.ndarray]:
        """Coefficients of z^n, n < count, in the NECHMF series."""
        A, B, _, B1, C1, Y = self._roles(p, "Eq. (4.2)", gauss=False)
        moments = self.gammabeta.moments(A, B, Y, B1, C1 - B1, spec=spec)
        return self._beta_coefficients(moments, self.normalizer(B1, C1, 0, spec), None, count)

    # Integral forms

    def neghmf_integral(self, p: HyperParams, spec: QuadratureSpec | None = None, form: str = "unit") -> EvalReport:
        """
        NEGHMF from its Euler-type integrals.

        unit: int_0^1 (1 - zt)^-A1 1F1(A; B; -Y/(t(1-t))) t^(B1-I) (1-t)^(C1-B1-I) dt N
        halfline: int_0^inf (1 + u(1-z))^-A1 (1+u)^A1 1F1(A; B; -2Y - Y(u + 1/u))
                  u^(B1-I) (1+u)^-C1 du N, with N = [B(B1, C1 - B1)]^-1.

        z = 1 is accepted when C1 - A1 - B1 is positive stable.
        """
        anchor = "Thm 4.1, Eqs. (4.3)/(a4.4)"
        A, B, A1, B1, C1, Y = self._roles(p, anchor, gauss=True)
        z = complex(p.z)
        gb = self.gammabeta
        if abs(z) > 1.0:
            raise DomainError(f"|z| = {abs(z):.6g} outside the convergence region of {anchor}")
        if z == 1.0:
            gb._stable("C1 - A1 - B1", C1 - A1 - B1, "Eq. (4.16)")
        elif abs(z) == 1.0:
            raise DomainError(f"|z| = 1 is only supported at z = 1 for {anchor}")
        spec = gb._spec(spec)
        eye = np.eye(A.shape[0])
        spectrum = joint_spectrum([A, B, Y, B1, C1, A1], self.tolerances)
        kernel = KummerKernel(A, B, Y, self.series, self.tolerances, spectrum=spectrum)
        if form == "unit":

            def diagonal(t: np.ndarray, tc: np.ndarray) -> np.ndarray:
                _, _, _, b1, c1, a1 = spectrum.eigenvalues  # type: ignore[union-attr]
                base = tc + (1.0 - z) * t
                k = kernel.directional(np.zeros_like(t), -1.0 / (t * tc))
                logs = -np.outer(np.log(base.astype(np.complex128)), a1)
                return k * np.exp(logs + np.outer(np.log(t), b1 - 1) + np.outer(np.log(tc), c1 - b1 - 1))

            def full(t: np.ndarray, tc: np.ndarray) -> np.ndarray:
                base = (tc + (1.0 - z) * t).astype(np.complex128)
                k = kernel.matrices(np.zeros_like(t), -1.0 / (t * tc))
                return (
                    expm_stack(-A1, np.log(base))
                    @ k
                    @ expm_stack(B1 - eye, np.log(t))
                    @ expm_stack(C1 - B1 - eye, np.log(tc))
                )

            integral = gb.integrate_forms("NEGHMF (unit)", "unit", spectrum, diagonal, full, spec, kernel)
        elif form == "halfline":
            gb._commuting({"B1": B1, "C1": C1}, anchor)

            def diagonal(u: np.ndarray) -> np.ndarray:  # type: ignore[misc]
                _, _, _, b1, c1, a1 = spectrum.eigenvalues  # type: ignore[union-attr]
                lead = np.log((1.0 + u * (1.0 - z)).astype(np.complex128))
                k = kernel.directional(np.zeros_like(u), -(2.0 + u + 1.0 / u))
                exponent = -np.outer(lead, a1) + np.outer(np.log1p(u), a1 - c1) + np.outer(np.log(u), b1 - 1)
                return k * np.exp(exponent)

            def full(u: np.ndarray) -> np.ndarray:  # type: ignore[misc]
                lead = np.log((1.0 + u * (1.0 - z)).astype(np.complex128))
                k = kernel.matrices(np.zeros_like(u), -(2.0 + u + 1.0 / u))
                return (
                    expm_stack(-A1, lead)
                    @ expm_stack(A1, np.log1p(u))
                    @ k
                    @ expm_stack(B1 - eye, np.log(u))
                    @ expm_stack(-C1, np.log1p(u))
                )

            integral = gb.integrate_forms("NEGHMF (half line)", "halfline", spectrum, diagonal, full, spec, kernel)
        else:
            raise ValueError(f"Unknown NEGHMF integral form: {form}")
        return EvalReport.product(integral, self.normalizer(B1, C1, 0, spec))

    def nechmf_integral(self, p: HyperParams, spec: QuadratureSpec | None = None, form: str = "direct") -> EvalReport:
        """
        NECHMF from its integrals.

        direct: int_0^1 e^(zt) 1F1(A; B; -Y/(t(1-t))) t^(B1-I) (1-t)^(C1-B1-I) dt N
        reflected: int_0^1 e^(z(1-u)) 1F1(A; B; -Y/(u(1-u))) u^(C1-B1-I) (1-u)^(B1-I) du N
        """
        anchor = "Thm 4.2, Eqs. (4.5)/(4.6)"
        A, B, _, B1, C1, Y = self._roles(p, anchor, gauss=False)
        if form not in ("direct", "reflected"):
            raise ValueError(f"Unknown NECHMF integral form: {form}")
        reflected = form == "reflected"
        gb = self.gammabeta
        if reflected:
            gb._commuting({"B1": B1, "C1": C1}, anchor)
        z = complex(p.z)
        spec = gb._spec(spec)
        eye = np.eye(A.shape[0])
        spectrum = joint_spectrum([A, B, Y, B1, C1], self.tolerances)
        kernel = KummerKernel(A, B, Y, self.series, self.tolerances, spectrum=spectrum)

        def diagonal(t: np.ndarray, tc: np.ndarray) -> np.ndarray:
            _, _, _, b1, c1 = spectrum.eigenvalues  # type: ignore[union-attr]
            k = kernel.directional(np.zeros_like(t), -1.0 / (t * tc))
            first, second = (tc, t) if reflected else (t, tc)
            exponent = np.outer(np.log(first), b1 - 1) + np.outer(np.log(second), c1 - b1 - 1)
            return k * np.exp(exponent + (z * first)[:, None])

        def full(t: np.ndarray, tc: np.ndarray) -> np.ndarray:
            k = kernel.matrices(np.zeros_like(t), -1.0 / (t * tc))
            if reflected:
                powers = expm_stack(C1 - B1 - eye, np.log(t)) @ expm_stack(B1 - eye, np.log(tc))
                scale = np.exp(z * tc)
            else:
                powers = expm_stack(B1 - eye, np.log(t)) @ expm_stack(C1 - B1 - eye, np.log(tc))
                scale = np.exp(z * t)
            return scale[:, None, None] * (k @ powers)

        integral = gb.integrate_forms(f"NECHMF ({form})", "unit", spectrum, diagonal, full, spec, kernel)
        return EvalReport.product(integral, self.normalizer(B1, C1, 0, spec))

    # Differential formulas

    def neghmf_derivative(self, p: HyperParams, n: int, spec: QuadratureSpec | None = None) -> EvalReport:
        """
        Right-hand side (A1)_n 2F1^(A,B;Y)(A1 + nI, B1 + nI; C1 + nI; z) (B1)_n (C1)_n^-1.

        Raises:
            PreconditionError: If B1 and C1 do not commute
        """
        anchor = "Thm 4.3, Eq. (4.7)"
        if n < 1:
            raise DomainError(f"Derivative order must be positive, got {n}")
        _, _, A1, B1, C1, _ = self._roles(p, anchor, gauss=True)
        self.gammabeta._commuting({"B1": B1, "C1": C1}, anchor)
        shifted = self.neghmf_series(p, spec, shift=n)
        return EvalReport.product(
            EvalReport.exact(pochhammer(A1, n)),
            shifted,
            EvalReport.exact(pochhammer(B1, n) @ np.linalg.inv(pochhammer(C1, n))),
        )

    def nechmf_derivative(self, p: HyperParams, n: int, spec: QuadratureSpec | None = None) -> EvalReport:
        """Right-hand side 1F1^(A,B;Y)(B1 + nI; C1 + nI; z) (B1)_n (C1)_n^-1."""
        anchor = "Thm 4.4, Eq. (4.10)"
        if n < 1:
            raise DomainError(f"Derivative order must be positive, got {n}")
        _, _, _, B1, C1, _ = self._roles(p, anchor, gauss=False)
        self.gammabeta._commuting({"B1": B1, "C1": C1}, anchor)
        shifted = self.nechmf_series(p, spec, shift=n)
        return EvalReport.product(
            shifted,
            EvalReport.exact(pochhammer(B1, n) @ np.linalg.inv(pochhammer(C1, n))),
        )

    # Transformations

    def neghmf_transform(self, p: HyperParams, which: str, spec: QuadratureSpec | None = None) -> EvalReport:
        """
        Right-hand side of a transformation formula at argument z.

        pfaff_z_over_zm1: (1 - z)^-A1 2F1^(A,B;Y)(A1, C1 - B1; C1; z/(z - 1))
        euler_one_minus_z: z^A1 2F1^(A,B;Y)(A1, C1 - B1; C1; 1 - z)
        z_over_1pz: (1 + z)^A1 2F1^(A,B;Y)(A1, C1 - B1; C1; -z)

        Raises:
            DomainError: If the transformed argument leaves the unit disk
        """
        z = complex(p.z)
        if which == "pfaff_z_over_zm1":
            if z == 1.0:
                raise DomainError("Pfaff transformation undefined at z = 1")
            argument, prefactor = z / (z - 1.0), complex_power(1.0 - z, -p.require("A1")[0])
        elif which == "euler_one_minus_z":
            if z == 0.0:
                raise DomainError("Euler transformation undefined at z = 0")
            argument, prefactor = 1.0 - z, complex_power(z, p.require("A1")[0])
        elif which == "z_over_1pz":
            argument, prefactor = -z, complex_power(1.0 + z, p.require("A1")[0])
        else:
            raise ValueError(f"Unknown transformation: {which}")
        if abs(argument) >= 1.0:
            raise DomainError(f"Transformed argument {argument} lies outside the unit disk")
        B1, C1 = p.require("B1", "C1")
        swapped = p.replace(B1=C1 - B1, z=argument)
        return EvalReport.product(EvalReport.exact(prefactor), self.neghmf_series(swapped, spec))

    def neghmf_transform_sides(
        self, p: HyperParams, which: str, printed: bool = False, spec: QuadratureSpec | None = None
    ) -> SidesReport:
        """Both sides of a transformation formula; printed selects the printed Euler form."""
        argument = transform_argument(which, complex(p.z), printed)
        if abs(argument) >= 1.0:
            raise DomainError(f"Left-hand argument {argument} lies outside the unit disk")
        lhs = self.neghmf_series(p.replace(z=argument), spec)
        return SidesReport(lhs=lhs, rhs=self.neghmf_transform(p, which, spec))

    def neghmf_at_one(self, p: HyperParams, spec: QuadratureSpec | None = None) -> EvalReport:
        """
        NEGHMF at z = 1: B_Y^(A,B)(B1, C1 - A1 - B1) [B(B1, C1 - B1)]^-1.

        Raises:
            PreconditionError: If A1 does not commute with A, B, B1 and C1, or
                C1 - A1 - B1 is not positive stable
        """
        anchor = "Eq. (4.16)"
        A, B, A1, B1, C1, Y = self._roles(p, anchor, gauss=True)
        gb = self.gammabeta
        gb._commuting({"A1": A1, "A": A, "B": B, "B1": B1, "C1": C1}, anchor)
        gb._stable("C1 - A1 - B1", C1 - A1 - B1, anchor)
        value = gb.moments(A, B, Y, B1, C1 - A1 - B1, spec=spec).report(0)
        return EvalReport.product(value, self.normalizer(B1, C1, 0, spec))

    def kummer_first_theorem(self, p: HyperParams, spec: QuadratureSpec | None = None) -> SidesReport:
        """1F1^(A,B;Y)(B1; C1; z) against e^z 1F1^(A,B;Y)(C1 - B1; C1; -z)."""
        B1, C1 = p.require("B1", "C1")
        self.gammabeta._commuting({"B1": B1, "C1": C1}, "Thm 4.6")
        lhs = self.nechmf_series(p, spec)
        reflected = self.nechmf_series(p.replace(B1=C1 - B1, z=-p.z), spec)
        rhs = EvalReport.product(EvalReport.exact(cmath.exp(p.z) * np.eye(B1.shape[0])), reflected)
        return SidesReport(lhs=lhs, rhs=rhs)
