"""
New extended Appell F1, F2 and Lauricella F_D^(3) matrix functions.

Double and triple series are summed shell by shell in the total degree
N = m + n (+ p). F1 and F_D share one moment sequence keyed by N; F2 uses
two sequences keyed by m and n separately.
"""

import itertools
import logging
from collections.abc import Callable

import numpy as np

from matspec.exceptions import DomainError
from matspec.schemas.params import AppellParams
from matspec.schemas.reports import EvalReport, SidesReport
from matspec.schemas.specs import QuadratureSpec, SeriesSpec
from matspec.services.gammabeta import expm_stack
from matspec.services.hyper import HyperService
from matspec.services.kernel import KummerKernel
from matspec.services.matcalc import joint_spectrum, pochhammer
from matspec.utils.truncation import SeriesAccumulator

logger = logging.getLogger(__name__)

RECURRENCES = ("kernel_shift_566", "kernel_shift_57")

Binomials = list[tuple[np.ndarray, complex]]


class TermSequence:
    """Lazily extended sequence T(0), T(1), ... with T(k+1) from T(k)."""

    def __init__(self, first: np.ndarray, step: Callable[[np.ndarray, int], np.ndarray]):
        self._terms = [first]
        self._step = step

    def __call__(self, k: int) -> np.ndarray:
        while len(self._terms) <= k:
            self._terms.append(self._step(self._terms[-1], len(self._terms) - 1))
        return self._terms[k]


def pochhammer_powers(B: np.ndarray, x: complex) -> TermSequence:
    """(B)_k x^k / k!"""
    eye = np.eye(B.shape[0])
    return TermSequence(eye.astype(np.complex128), lambda prev, k: prev @ (B + k * eye) * (x / (k + 1)))


class ShellConvolution:
    """Sums over i_1 + ... + i_k = N of T_1(i_1) T_2(i_2) ... T_k(i_k), in that order."""

    def __init__(self, sequences: list[Callable[[int], np.ndarray]]):
        self.sequences = sequences
        self._cache: dict[tuple[int, int], np.ndarray] = {}

    def _suffix(self, i: int, total: int) -> np.ndarray:
        if i == len(self.sequences) - 1:
            return self.sequences[i](total)
        key = (i, total)
        if key not in self._cache:
            self._cache[key] = sum(
                self.sequences[i](m) @ self._suffix(i + 1, total - m) for m in range(total + 1)
            )
        return self._cache[key]

    def shell(self, total: int) -> np.ndarray:
        return self._suffix(0, total)


def _unit_minus(u: np.ndarray, uc: np.ndarray, x: complex) -> np.ndarray:
    """1 - x u, exact at x = 1."""
    return (uc + (1.0 - x) * u).astype(np.complex128)


class MultivarService:
    """Appell and Lauricella functions built from new extended beta moments."""

    def __init__(self, hyper: HyperService):
        self.hyper = hyper
        self.gammabeta = hyper.gammabeta
        self.series = hyper.series
        self.tolerances = hyper.tolerances

    # Roles

    def _lauricella_roles(self, p: AppellParams, anchor: str, variables: int) -> tuple:
        A, B, A1, C1 = p.require("A", "B", "A1", "C1")
        Y = p.Y if p.Y is not None else np.zeros_like(A)
        names = ("B1", "B2", "B3")[:variables]
        arguments = (p.z, p.w, p.v)[:variables]
        binomials = [(M, complex(x)) for M, x in zip(p.require(*names), arguments, strict=True)]
        gb = self.gammabeta
        for name, M in (("A", A), ("B", B), ("A1", A1), ("C1", C1), ("C1 - A1", C1 - A1)):
            gb._stable(name, M, anchor)
        gb._stable_or_zero("Y", Y, anchor)
        for _, x in binomials:
            if abs(x) >= 1.0:
                raise DomainError(f"|argument| = {abs(x):.6g} outside the unit disk required by {anchor}")
        return A, B, Y, A1, C1, binomials

    def _f2_roles(self, p: AppellParams, anchor: str) -> tuple:
        A, B, Aprime, Bprime, A1, B1, B2, C1, C2 = p.require("A", "B", "Aprime", "Bprime", "A1", "B1", "B2", "C1", "C2")
        Y = p.Y if p.Y is not None else np.zeros_like(A)
        gb = self.gammabeta
        for name, M in (
            ("A", A), ("B", B), ("Aprime", Aprime), ("Bprime", Bprime), ("B1", B1), ("B2", B2),
            ("C1 - B1", C1 - B1), ("C2 - B2", C2 - B2),
        ):
            gb._stable(name, M, anchor)
        gb._stable_or_zero("Y", Y, anchor)
        if abs(p.z) + abs(p.w) >= 1.0:
            raise DomainError(f"|z| + |w| = {abs(p.z) + abs(p.w):.6g} must be below 1 for {anchor}")
        return A, B, Aprime, Bprime, Y, A1, B1, B2, C1, C2

    # F1 and F_D series

    def _lauricella_series(
        self,
        label: str,
        kernel: tuple[np.ndarray, np.ndarray, np.ndarray],
        A1: np.ndarray,
        C1: np.ndarray,
        binomials: Binomials,
        spec: QuadratureSpec | None,
        series: SeriesSpec | None,
        shift: int = 0,
    ) -> EvalReport:
        """
        Sum over shells N of B_Y(A1 + (N + s)I, C1 - A1) [B(A1 + sI, C1 - A1)]^-1 P_N with
        P_N the shell sum of (B1)_m (B2)_n ... z^m w^n ... / (m! n! ...).
        """
        A, B, Y = kernel
        series = series or self.series
        moments = self.gammabeta.moments(A, B, Y, A1, C1 - A1, spec=spec).offset(shift)
        normalizer = self.hyper.normalizer(A1, C1, shift, spec)
        N_value = np.asarray(normalizer.value)
        n_norm = float(np.linalg.norm(N_value))
        shells = ShellConvolution([pochhammer_powers(M, x) for M, x in binomials])
        acc = SeriesAccumulator(N_value.shape, series)
        error = 0.0
        converged = normalizer.converged
        total = 0
        while True:
            shell = shells.shell(total)
            error += moments.error(total) * n_norm * float(np.linalg.norm(shell))
            converged = converged and moments.converged(total)
            if acc.add(moments.value(total) @ N_value @ shell):
                break
            total += 1
        if n_norm > 0.0:
            error += float(np.linalg.norm(acc.total)) * normalizer.error_estimate / n_norm
        return self._finish(label, acc, error, converged, moments.evaluations, moments.warnings + normalizer.warnings)

    def _finish(
        self, label: str, acc: SeriesAccumulator, error: float, converged: bool, evaluations: int, notes: list[str]
    ) -> EvalReport:
        warnings: list[str] = []
        warnings.extend(w for w in notes if w not in warnings)
        if not acc.converged:
            message = f"{label} series unconverged after {acc.terms} shells"
            logger.warning(message)
            warnings.append(message)
        logger.debug("%s truncated at %d shells", label, acc.terms)
        return EvalReport(
            value=acc.total,
            error_estimate=error + acc.error_estimate,
            evaluations=evaluations,
            converged=acc.converged and converged,
            warnings=warnings,
        )

    def appell_f1_series(
        self, p: AppellParams, spec: QuadratureSpec | None = None, series: SeriesSpec | None = None
    ) -> EvalReport:
        """
        F1^(A,B)(A1, B1, B2; C1; z, w; Y) as its double series.

        Raises:
            DomainError: If |z| or |w| is not below 1
        """
        A, B, Y, A1, C1, binomials = self._lauricella_roles(p, "Eq. (2eq1)", 2)
        return self._lauricella_series("F1", (A, B, Y), A1, C1, binomials, spec, series)

    def lauricella_fd3_series(
        self, p: AppellParams, spec: QuadratureSpec | None = None, series: SeriesSpec | None = None
    ) -> EvalReport:
        """F_D^(3;A,B)(A1, B1, B2, B3; C1; z, w, v) as its triple series."""
        A, B, Y, A1, C1, binomials = self._lauricella_roles(p, "Eq. (2eq3)", 3)
        return self._lauricella_series("F_D", (A, B, Y), A1, C1, binomials, spec, series)

    def lauricella_coefficients(
        self, p: AppellParams, variables: int, count: int, spec: QuadratureSpec | None = None
    ) -> dict[tuple[int, ...], np.ndarray]:
        """
        Coefficients of z^m w^n (v^q) with total degree below count.

        Two variables give F1, three give F_D^(3). The coefficient of a
        multi-index k with |k| = N is B_Y(A1 + NI, C1 - A1) [B(A1, C1 - A1)]^-1
        (B1)_m (B2)_n ... / (m! n! ...).
        """
        if variables not in (2, 3):
            raise ValueError(f"Lauricella series take 2 or 3 variables, got {variables}")
        anchor = "Eq. (2eq1)" if variables == 2 else "Eq. (2eq3)"
        A, B, Y, A1, C1, binomials = self._lauricella_roles(p, anchor, variables)
        moments = self.gammabeta.moments(A, B, Y, A1, C1 - A1, spec=spec)
        N_value = np.asarray(self.hyper.normalizer(A1, C1, 0, spec).value)
        factors = [pochhammer_powers(M, 1.0) for M, _ in binomials]
        coefficients: dict[tuple[int, ...], np.ndarray] = {}
        for index in itertools.product(range(count), repeat=variables):
            total = sum(index)
            if total >= count:
                continue
            value = moments.value(total) @ N_value
            for sequence, k in zip(factors, index, strict=True):
                value = value @ sequence(k)
            coefficients[index] = value
        return coefficients

    # F1 and F_D integrals

    def _lauricella_integral(
        self,
        label: str,
        kernel_roles: tuple[np.ndarray, np.ndarray, np.ndarray],
        A1: np.ndarray,
        C1: np.ndarray,
        binomials: Binomials,
        spec: QuadratureSpec | None,
    ) -> EvalReport:
        """int_0^1 1F1(A; B; -Y/(u(1-u))) u^(A1-I) (1-u)^(C1-A1-I) N prod (1 - x_i u)^-B_i du."""
        A, B, Y = kernel_roles
        gb = self.gammabeta
        spec = gb._spec(spec)
        normalizer = self.hyper.normalizer(A1, C1, 0, spec)
        N_value = np.asarray(normalizer.value)
        eye = np.eye(A.shape[0])
        family = [A, B, Y, A1, C1] + [M for M, _ in binomials]
        spectrum = joint_spectrum(family, self.tolerances)
        kernel = KummerKernel(A, B, Y, self.series, self.tolerances, spectrum=spectrum)

        def diagonal(u: np.ndarray, uc: np.ndarray) -> np.ndarray:
            values = spectrum.eigenvalues  # type: ignore[union-attr]
            a1, c1 = values[3], values[4]
            exponent = np.outer(np.log(u), a1 - 1) + np.outer(np.log(uc), c1 - a1 - 1)
            for i, (_, x) in enumerate(binomials):
                exponent = exponent - np.outer(np.log(_unit_minus(u, uc, x)), values[5 + i])
            return kernel.directional(np.zeros_like(u), -1.0 / (u * uc)) * np.exp(exponent)

        def full(u: np.ndarray, uc: np.ndarray) -> np.ndarray:
            k = kernel.matrices(np.zeros_like(u), -1.0 / (u * uc))
            out = k @ expm_stack(A1 - eye, np.log(u)) @ expm_stack(C1 - A1 - eye, np.log(uc)) @ N_value
            for M, x in binomials:
                out = out @ expm_stack(-M, np.log(_unit_minus(u, uc, x)))
            return out

        integral = gb.integrate_forms(label, "unit", spectrum, diagonal, full, spec, kernel)
        if spectrum is None:
            return integral
        # The eigenbasis path leaves the normalizer outside the integral.
        return EvalReport.product(integral, normalizer)

    def appell_f1_integral(self, p: AppellParams, spec: QuadratureSpec | None = None) -> EvalReport:
        """F1 from its single integral."""
        A, B, Y, A1, C1, binomials = self._lauricella_roles(p, "Thm 5.1, Eq. (i1)", 2)
        return self._lauricella_integral("F1 integral", (A, B, Y), A1, C1, binomials, spec)

    def lauricella_fd3_integral(self, p: AppellParams, spec: QuadratureSpec | None = None) -> EvalReport:
        """F_D^(3) from its single integral."""
        A, B, Y, A1, C1, binomials = self._lauricella_roles(p, "Thm 5.3, Eq. (3.12)", 3)
        return self._lauricella_integral("F_D integral", (A, B, Y), A1, C1, binomials, spec)

    # F2

    def _f2_series(
        self,
        kernels: tuple[np.ndarray, ...],
        A1: np.ndarray,
        B1: np.ndarray,
        B2: np.ndarray,
        C1: np.ndarray,
        C2: np.ndarray,
        z: complex,
        w: complex,
        spec: QuadratureSpec | None,
        series: SeriesSpec | None,
        shifts: tuple[int, int] = (0, 0),
    ) -> EvalReport:
        """
        Sum over N of (A1 + (m+n)... )_N sum_m U_m z^m/m! V_(N-m) w^(N-m)/(N-m)!,
        U_m = B_Y^(A,B)(B1 + (m+s1)I, C1 - B1) [B(B1 + s1 I, C1 - B1)]^-1, V likewise.
        """
        A, B, Aprime, Bprime, Y = kernels
        series = series or self.series
        gb = self.gammabeta
        first = gb.moments(A, B, Y, B1, C1 - B1, spec=spec).offset(shifts[0])
        second = gb.moments(Aprime, Bprime, Y, B2, C2 - B2, spec=spec).offset(shifts[1])
        n1 = self.hyper.normalizer(B1, C1, shifts[0], spec)
        n2 = self.hyper.normalizer(B2, C2, shifts[1], spec)
        N1, N2 = np.asarray(n1.value), np.asarray(n2.value)
        eye = np.eye(A.shape[0])

        def scaled(moments, N: np.ndarray, x: complex) -> TermSequence:  # type: ignore[no-untyped-def]
            factorial = [1.0 + 0.0j]

            def step(_: np.ndarray, k: int) -> np.ndarray:
                factorial.append(factorial[-1] * x / (k + 1))
                return moments.value(k + 1) @ N * factorial[-1]

            return TermSequence(moments.value(0) @ N + 0j, step)

        u_terms = scaled(first, N1, z)
        v_terms = scaled(second, N2, w)
        shells = ShellConvolution([u_terms, v_terms])
        acc = SeriesAccumulator(eye.shape, series)
        rising = eye.astype(np.complex128)
        u_norm: list[float] = []
        u_err: list[float] = []
        v_norm: list[float] = []
        v_err: list[float] = []
        weight = [1.0]
        error = 0.0
        converged = n1.converged and n2.converged
        total = 0
        while True:
            if total > 0:
                weight.append(weight[-1] / total)
            u_norm.append(float(np.linalg.norm(u_terms(total))))
            v_norm.append(float(np.linalg.norm(v_terms(total))))
            u_err.append(first.error(total) * float(np.linalg.norm(N1)) * abs(z) ** total * weight[total])
            v_err.append(second.error(total) * float(np.linalg.norm(N2)) * abs(w) ** total * weight[total])
            shell_error = float(np.dot(u_err, v_norm[::-1]) + np.dot(u_norm, v_err[::-1]))
            error += float(np.linalg.norm(rising)) * shell_error
            converged = converged and first.converged(total) and second.converged(total)
            if acc.add(rising @ shells.shell(total)):
                break
            rising = rising @ (A1 + total * eye)
            total += 1
        for report in (n1, n2):
            norm = float(np.linalg.norm(report.value))
            if norm > 0.0:
                error += float(np.linalg.norm(acc.total)) * report.error_estimate / norm
        notes = first.warnings + second.warnings + n1.warnings + n2.warnings
        return self._finish("F2", acc, error, converged, first.evaluations + second.evaluations, notes)

    def appell_f2_series(
        self, p: AppellParams, spec: QuadratureSpec | None = None, series: SeriesSpec | None = None
    ) -> EvalReport:
        """
        F2^(A,B,A',B')(A1, B1, B2; C1, C2; z, w; Y) as its double series.

        Raises:
            DomainError: If |z| + |w| is not below 1
        """
        A, B, Aprime, Bprime, Y, A1, B1, B2, C1, C2 = self._f2_roles(p, "Eq. (2eq2)")
        return self._f2_series((A, B, Aprime, Bprime, Y), A1, B1, B2, C1, C2, p.z, p.w, spec, series)

    def appell_f2_integral(self, p: AppellParams, spec: QuadratureSpec | None = None) -> EvalReport:
        """
        F2 from its double integral over the unit square:
        (1 - zu - wv)^-A1 K(u) u^(B1-I) (1-u)^(C1-B1-I) N1 K'(v) v^(B2-I) (1-v)^(C2-B2-I) N2.
        """
        A, B, Aprime, Bprime, Y, A1, B1, B2, C1, C2 = self._f2_roles(p, "Thm 5.2, Eq. (s33)")
        gb = self.gammabeta
        spec = gb._spec(spec)
        z, w = complex(p.z), complex(p.w)
        n1 = self.hyper.normalizer(B1, C1, 0, spec)
        n2 = self.hyper.normalizer(B2, C2, 0, spec)
        N1, N2 = np.asarray(n1.value), np.asarray(n2.value)
        eye = np.eye(A.shape[0])
        spectrum = joint_spectrum([A, B, Aprime, Bprime, Y, A1, B1, C1, B2, C2], self.tolerances)
        first = KummerKernel(A, B, Y, self.series, self.tolerances, spectrum=spectrum, rows=(0, 1, 4))
        second = KummerKernel(Aprime, Bprime, Y, self.series, self.tolerances, spectrum=spectrum, rows=(2, 3, 4))

        def base(u: np.ndarray, uc: np.ndarray, v: np.ndarray, vc: np.ndarray) -> np.ndarray:
            return (1.0 - z * u[:, None] - w * v[None, :]).astype(np.complex128)

        def diagonal(u: np.ndarray, uc: np.ndarray, v: np.ndarray, vc: np.ndarray) -> np.ndarray:
            values = spectrum.eigenvalues  # type: ignore[union-attr]
            a1, b1, c1, b2, c2 = values[5], values[6], values[7], values[8], values[9]
            g1 = first.directional(np.zeros_like(u), -1.0 / (u * uc)) * np.exp(
                np.outer(np.log(u), b1 - 1) + np.outer(np.log(uc), c1 - b1 - 1)
            )
            g2 = second.directional(np.zeros_like(v), -1.0 / (v * vc)) * np.exp(
                np.outer(np.log(v), b2 - 1) + np.outer(np.log(vc), c2 - b2 - 1)
            )
            lead = np.exp(-np.log(base(u, uc, v, vc))[:, :, None] * a1[None, None, :])
            return lead * g1[:, None, :] * g2[None, :, :]

        def full(u: np.ndarray, uc: np.ndarray, v: np.ndarray, vc: np.ndarray) -> np.ndarray:
            g1 = (
                first.matrices(np.zeros_like(u), -1.0 / (u * uc))
                @ expm_stack(B1 - eye, np.log(u))
                @ expm_stack(C1 - B1 - eye, np.log(uc))
                @ N1
            )
            g2 = (
                second.matrices(np.zeros_like(v), -1.0 / (v * vc))
                @ expm_stack(B2 - eye, np.log(v))
                @ expm_stack(C2 - B2 - eye, np.log(vc))
                @ N2
            )
            logs = np.log(base(u, uc, v, vc)).reshape(-1)
            lead = expm_stack(-A1, logs).reshape(u.shape[0], v.shape[0], eye.shape[0], eye.shape[0])
            return np.einsum("ijab,ibc,jcd->ijad", lead, g1, g2)

        integral = gb.integrate_forms("F2 integral", "square", spectrum, diagonal, full, spec)
        notes = [w for w in first.warnings + second.warnings if w not in integral.warnings]
        if notes:
            integral = integral.with_warnings(notes, converged=integral.converged and spectrum is not None)
        if spectrum is None:
            return integral
        return EvalReport.product(integral, n1, n2)

    # Differential formulas

    def f1_derivative_rhs(self, p: AppellParams, m: int, n: int, spec: QuadratureSpec | None = None) -> EvalReport:
        """
        (A1)_(m+n) (C1)^-1_(m+n) F1(A1 + (m+n)I, B1 + mI, B2 + nI; C1 + (m+n)I; z, w) (B1)_m (B2)_n.
        """
        if m < 0 or n < 0:
            raise DomainError(f"Derivative orders must be nonnegative, got ({m}, {n})")
        A, B, Y, A1, C1, binomials = self._lauricella_roles(p, "Thm 5.4, Eq. (5.1)", 2)
        s = m + n
        eye = np.eye(A.shape[0])
        (B1, z), (B2, w) = binomials
        shifted = self._lauricella_series(
            "F1", (A, B, Y), A1, C1, [(B1 + m * eye, z), (B2 + n * eye, w)], spec, None, shift=s
        )
        left = np.asarray(pochhammer(A1, s)) @ np.linalg.inv(np.asarray(pochhammer(C1, s)))
        right = np.asarray(pochhammer(B1, m)) @ np.asarray(pochhammer(B2, n))
        return EvalReport.product(EvalReport.exact(left), shifted, EvalReport.exact(right))

    def f2_derivative_rhs(
        self, p: AppellParams, m: int, n: int, corrected: bool = True, spec: QuadratureSpec | None = None
    ) -> EvalReport:
        """
        (A1)_(m+n) F2(A1 + (m+n)I, B1 + mI, B2 + nI; C1 + mI, C2 + nI; z, w) T.

        corrected: T = (B1)_m (C1)^-1_m (B2)_n (C2)^-1_n, from the series definition;
        otherwise the printed T = (B1)_m (B2)_n (C1)^-1_(m+n).
        """
        if m < 0 or n < 0:
            raise DomainError(f"Derivative orders must be nonnegative, got ({m}, {n})")
        A, B, Aprime, Bprime, Y, A1, B1, B2, C1, C2 = self._f2_roles(p, "Thm 5.5, Eq. (5.4)")
        s = m + n
        eye = np.eye(A.shape[0])
        shifted = self._f2_series(
            (A, B, Aprime, Bprime, Y), A1 + s * eye, B1, B2, C1, C2, p.z, p.w, spec, None, shifts=(m, n)
        )
        poch = lambda M, k: np.asarray(pochhammer(M, k))  # noqa: E731
        if corrected:
            trailing = poch(B1, m) @ np.linalg.inv(poch(C1, m)) @ poch(B2, n) @ np.linalg.inv(poch(C2, n))
        else:
            trailing = poch(B1, m) @ poch(B2, n) @ np.linalg.inv(poch(C1, s))
        return EvalReport.product(EvalReport.exact(poch(A1, s)), shifted, EvalReport.exact(trailing))

    def fd3_derivative_rhs(
        self,
        p: AppellParams,
        m: int,
        n: int,
        q: int,
        corrected: bool = True,
        spec: QuadratureSpec | None = None,
    ) -> EvalReport:
        """
        Shifted F_D^(3) with prefactor and trailing Pochhammer factors.

        corrected: (A1)_s (C1)^-1_s F_D(...) (B1)_m (B2)_n (B3)_q with s = m + n + q;
        otherwise the printed (A1)_s (C1)_s F_D(...) (B1)_m (B2)_n (B3)^-1_q.
        """
        if min(m, n, q) < 0:
            raise DomainError(f"Derivative orders must be nonnegative, got ({m}, {n}, {q})")
        A, B, Y, A1, C1, binomials = self._lauricella_roles(p, "Thm 5.6, Eq. (5.5)", 3)
        s = m + n + q
        eye = np.eye(A.shape[0])
        orders = (m, n, q)
        shifted_binomials = [(M + k * eye, x) for (M, x), k in zip(binomials, orders, strict=True)]
        shifted = self._lauricella_series("F_D", (A, B, Y), A1, C1, shifted_binomials, spec, None, shift=s)
        poch = lambda M, k: np.asarray(pochhammer(M, k))  # noqa: E731
        (B1, _), (B2, _), (B3, _) = binomials
        if corrected:
            left = poch(A1, s) @ np.linalg.inv(poch(C1, s))
            right = poch(B1, m) @ poch(B2, n) @ poch(B3, q)
        else:
            left = poch(A1, s) @ poch(C1, s)
            right = poch(B1, m) @ poch(B2, n) @ np.linalg.inv(poch(B3, q))
        return EvalReport.product(EvalReport.exact(left), shifted, EvalReport.exact(right))

    # Recurrences in the kernel parameters

    def _beta_ratio(self, P: np.ndarray, C: np.ndarray, anchor: str, spec: QuadratureSpec | None) -> EvalReport:
        """[B(P, C - P)]^-1 B(P - I, C - P - I)."""
        eye = np.eye(P.shape[0])
        gb = self.gammabeta
        gb._stable(f"{anchor} lower parameter", P - eye, anchor)
        gb._stable(f"{anchor} upper parameter", C - P - eye, anchor)
        lower = gb.classical_moments(P - eye, C - P - eye, spec).report(0)
        return EvalReport.product(self.hyper.normalizer(P, C, 0, spec), lower)

    def _lauricella_recurrence(
        self,
        label: str,
        p: AppellParams,
        which: str,
        corrected: bool,
        variables: int,
        printed_lowered_on_right: bool,
        spec: QuadratureSpec | None,
    ) -> SidesReport:
        anchor = "Thm 5.7, Eqs. (5.66)/(5.7)" if variables == 2 else "Thm 5.9"
        A, B, Y, A1, C1, binomials = self._lauricella_roles(p, anchor, variables)
        eye = np.eye(A.shape[0])

        def F(a: np.ndarray, b: np.ndarray, a1: np.ndarray = A1, c1: np.ndarray = C1) -> EvalReport:
            return self._lauricella_series(label, (a, b, Y), a1, c1, binomials, spec, None)

        exact = EvalReport.exact
        if which == "kernel_shift_566":
            lhs = EvalReport.product(exact(B - A - eye), F(A, B))
            rhs = EvalReport.combination([
                (1.0, EvalReport.product(exact(B - eye), F(A, B - eye))),
                (-1.0, EvalReport.product(exact(A), F(A + eye, B))),
            ])
            return SidesReport(lhs=lhs, rhs=rhs)
        if which != "kernel_shift_57":
            raise ValueError(f"Unknown recurrence: {which}")
        ratio = self._beta_ratio(A1, C1, anchor, spec)
        shifted = F(A, B + eye, A1 - eye, C1 - 2 * eye)
        base = F(A, B)
        lowered = F(A - eye, B)
        if printed_lowered_on_right and not corrected:
            # "B F - F^(A-I) B + Y R F'' = 0"
            lhs = EvalReport.combination([
                (1.0, EvalReport.product(exact(B), base)),
                (-1.0, EvalReport.product(lowered, exact(B))),
            ])
        else:
            lhs = EvalReport.combination([
                (1.0, EvalReport.product(exact(B), base)),
                (-1.0, EvalReport.product(exact(B), lowered)),
            ])
        if corrected or printed_lowered_on_right:
            # -Y R F''
            rhs = EvalReport.product(exact(-Y), ratio, shifted)
        else:
            # "... + R Y F'' = 0"
            rhs = EvalReport.combination([(-1.0, EvalReport.product(ratio, exact(Y), shifted))])
        return SidesReport(lhs=lhs, rhs=rhs)

    def f1_recurrence_sides(
        self, p: AppellParams, which: str, corrected: bool = True, spec: QuadratureSpec | None = None
    ) -> SidesReport:
        """
        Kernel-parameter recurrences of F1.

        kernel_shift_566: (B - (A+I)) F1^(A,B) against (B-I) F1^(A,B-I) - A F1^(A+I,B).
        kernel_shift_57: B F1^(A,B) - B F1^(A-I,B) against
        -Y [B(A1, C1-A1)]^-1 B(A1-I, C1-A1-I) F1^(A,B+I)(A1-I, B1, B2; C1-2I).
        With corrected unset the left side is the printed B F1 - F1^(A-I,B) B.

        Raises:
            PreconditionError: If A1 - I or C1 - A1 - I is not positive stable
        """
        return self._lauricella_recurrence("F1", p, which, corrected, 2, True, spec)

    def fd3_recurrence_sides(
        self, p: AppellParams, which: str, corrected: bool = True, spec: QuadratureSpec | None = None
    ) -> SidesReport:
        """
        Kernel-parameter recurrences of F_D^(3), multiplied from the left.

        The printed second relation places the beta ratio left of Y; corrected
        places Y first. Both agree when Y commutes with A1 and C1.
        """
        return self._lauricella_recurrence("F_D", p, which, corrected, 3, False, spec)

    def f2_recurrence_sides(
        self, p: AppellParams, which: str, corrected: bool = True, spec: QuadratureSpec | None = None
    ) -> SidesReport:
        """
        Kernel-parameter recurrences of F2, multiplied from the right.

        kernel_shift_566: F2 (B - (A+I)) against F2^(A,B-I) (B-I) - F2^(A+I,B) A.
        kernel_shift_57: F2^(A-I,B) B - F2 B against
        F2^(A,B+I)(A1, B1-I, B2; C1-2I, C2) [B(B1, C1-B1)]^-1 B(B1-I, C1-B1-I) Y;
        with corrected unset, the printed [B(B1, C1-B1)]^-1 B(B1-I, C1-B1-I) F2^(A,B+I) Y
        with B1 and C1 unshifted.
        """
        anchor = "Thm 5.8"
        A, B, Aprime, Bprime, Y, A1, B1, B2, C1, C2 = self._f2_roles(p, anchor)
        eye = np.eye(A.shape[0])
        exact = EvalReport.exact

        def F(a: np.ndarray, b: np.ndarray, b1: np.ndarray = B1, c1: np.ndarray = C1) -> EvalReport:
            return self._f2_series((a, b, Aprime, Bprime, Y), A1, b1, B2, c1, C2, p.z, p.w, spec, None)

        if which == "kernel_shift_566":
            lhs = EvalReport.product(F(A, B), exact(B - A - eye))
            rhs = EvalReport.combination([
                (1.0, EvalReport.product(F(A, B - eye), exact(B - eye))),
                (-1.0, EvalReport.product(F(A + eye, B), exact(A))),
            ])
            return SidesReport(lhs=lhs, rhs=rhs)
        if which != "kernel_shift_57":
            raise ValueError(f"Unknown recurrence: {which}")
        lhs = EvalReport.combination([
            (1.0, EvalReport.product(F(A - eye, B), exact(B))),
            (-1.0, EvalReport.product(F(A, B), exact(B))),
        ])
        ratio = self._beta_ratio(B1, C1, anchor, spec)
        if corrected:
            rhs = EvalReport.product(F(A, B + eye, B1 - eye, C1 - 2 * eye), ratio, exact(Y))
        else:
            rhs = EvalReport.product(ratio, F(A, B + eye), exact(Y))
        return SidesReport(lhs=lhs, rhs=rhs)


__all__ = [
    "MultivarService",
    "RECURRENCES",
    "ShellConvolution",
    "TermSequence",
    "pochhammer_powers",
]
