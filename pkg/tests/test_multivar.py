"""
Tests for the Appell and Lauricella matrix functions.
"""

import math

import mpmath
import numpy as np
import pytest

from matspec.exceptions import DomainError
from matspec.schemas.params import AppellParams, HyperParams
from matspec.services.matcalc import pochhammer
from matspec.services.multivar import ShellConvolution, pochhammer_powers
from matspec.utils.finite_diff import derivative
from matspec.utils.validators import frobenius
from tests.conftest import BASIS, conjugate, diag


def appell(y=(0.2, 0.3), z=0.3, w=-0.2, v=0.0, **overrides):
    """Diagonal roles for F1, F2 and F_D."""
    params = {
        "A": diag(1.2, 1.6),
        "B": diag(2.0, 2.5),
        "Aprime": diag(1.4, 1.1),
        "Bprime": diag(2.2, 2.8),
        "A1": diag(1.6, 1.9),
        "B1": diag(1.3, 1.5),
        "B2": diag(0.7, 0.5),
        "B3": diag(0.4, 0.9),
        "C1": diag(3.1, 3.6),
        "C2": diag(2.4, 2.2),
        "Y": diag(*y),
        "z": z,
        "w": w,
        "v": v,
    }
    params.update(overrides)
    return AppellParams(**params)


def test_shell_convolution():
    """Test shells of x^m y^n against the closed sum."""
    eye = np.eye(1)
    x, y = 0.3, -0.5
    shells = ShellConvolution([pochhammer_powers(eye, x), pochhammer_powers(eye, y)])

    for total in range(5):
        expected = sum(x**m * y ** (total - m) for m in range(total + 1))
        assert shells.shell(total)[0, 0] == pytest.approx(expected)


class TestAppellF1:
    """Tests for F1."""

    def test_scalar_values(self, multivar):
        """Test Y = 0 against mpmath per eigenvalue."""
        p = appell(y=(0.0, 0.0))
        report = multivar.appell_f1_series(p)
        expected = [
            complex(mpmath.appellf1(p.A1[i, i].real, p.B1[i, i].real, p.B2[i, i].real, p.C1[i, i].real, 0.3, -0.2))
            for i in range(2)
        ]

        assert report.converged
        assert np.allclose(report.value, diag(*expected), rtol=1e-9)

    def test_reduces_to_neghmf(self, multivar, hyper):
        """Test that w = 0 gives the NEGHMF with A1 and B1 exchanged."""
        p = appell(w=0.0)
        single = HyperParams(A=p.A, B=p.B, A1=p.B1, B1=p.A1, C1=p.C1, Y=p.Y, z=p.z)

        assert np.allclose(multivar.appell_f1_series(p).value, hyper.neghmf_series(single).value, rtol=1e-9)

    def test_integral(self, multivar):
        """Test the single integral against the double series."""
        p = appell()

        assert np.allclose(multivar.appell_f1_integral(p).value, multivar.appell_f1_series(p).value, rtol=1e-8)

    def test_domain(self, multivar):
        """Test that |z| >= 1 is rejected."""
        with pytest.raises(DomainError):
            multivar.appell_f1_series(appell(z=1.0))

    def test_derivative(self, multivar):
        """Test the z-derivative formula against finite differences."""
        p = appell()

        rhs = multivar.f1_derivative_rhs(p, 1, 0)
        numeric = derivative(lambda x: multivar.appell_f1_series(p.replace(z=x)).value, 0.3)

        assert np.allclose(rhs.value, numeric, rtol=1e-6, atol=1e-8)

    def test_negative_order(self, multivar):
        """Test that negative derivative orders are rejected."""
        with pytest.raises(DomainError):
            multivar.f1_derivative_rhs(appell(), -1, 0)


class TestRecurrences:
    """Tests for the kernel-parameter recurrences."""

    @pytest.mark.parametrize("which", ["kernel_shift_566", "kernel_shift_57"])
    def test_f1(self, multivar, which):
        """Test both F1 recurrences."""
        sides = multivar.f1_recurrence_sides(appell(), which)

        assert np.allclose(sides.lhs.value, sides.rhs.value, rtol=1e-7, atol=1e-9)

    @pytest.mark.parametrize("which", ["kernel_shift_566", "kernel_shift_57"])
    def test_fd3(self, multivar, which):
        """Test both F_D recurrences."""
        sides = multivar.fd3_recurrence_sides(appell(v=0.15), which)

        assert np.allclose(sides.lhs.value, sides.rhs.value, rtol=1e-7, atol=1e-9)

    @pytest.mark.slow
    @pytest.mark.parametrize("which", ["kernel_shift_566", "kernel_shift_57"])
    def test_f2(self, multivar, which):
        """Test both F2 recurrences."""
        sides = multivar.f2_recurrence_sides(appell(), which)

        assert np.allclose(sides.lhs.value, sides.rhs.value, rtol=1e-7, atol=1e-9)

    def test_unknown(self, multivar):
        """Test that an unknown recurrence name is rejected."""
        with pytest.raises(ValueError):
            multivar.f1_recurrence_sides(appell(), "kernel_shift_99")


class TestLauricella:
    """Tests for F_D^(3)."""

    def test_reduces_to_f1(self, multivar):
        """Test that v = 0 gives F1."""
        p = appell()

        assert np.allclose(multivar.lauricella_fd3_series(p).value, multivar.appell_f1_series(p).value, rtol=1e-9)

    def test_integral(self, multivar):
        """Test the single integral against the triple series."""
        p = appell(v=0.15)

        assert np.allclose(
            multivar.lauricella_fd3_integral(p).value, multivar.lauricella_fd3_series(p).value, rtol=1e-8
        )

    def test_derivative(self, multivar):
        """Test the v-derivative formula against finite differences."""
        p = appell(v=0.15)

        rhs = multivar.fd3_derivative_rhs(p, 0, 0, 1)
        numeric = derivative(lambda x: multivar.lauricella_fd3_series(p.replace(v=x)).value, 0.15)

        assert np.allclose(rhs.value, numeric, rtol=1e-6, atol=1e-8)


def classical_coefficient(A1, C1, binomials, index):
    """(A1)_N [(C1)_N]^-1 (B1)_m / m! (B2)_n / n! ... with N = |index|."""
    total = sum(index)
    value = pochhammer(A1, total) @ np.linalg.inv(pochhammer(C1, total))
    for M, k in zip(binomials, index, strict=True):
        value = value @ pochhammer(M, k) / math.factorial(k)
    return value


class TestLauricellaCoefficients:
    """Tests for termwise agreement of F1 and F_D^(3) with their classical series at A = B, Y = 0."""

    @staticmethod
    def params():
        A = conjugate([1.2, 1.6], BASIS)
        return AppellParams(
            A=A,
            B=A,
            A1=conjugate([1.6, 1.9], BASIS),
            B1=conjugate([1.3, 1.5], BASIS),
            B2=conjugate([0.7, 0.5], BASIS),
            B3=conjugate([0.4, 0.9], BASIS),
            C1=conjugate([3.1, 3.6], BASIS),
            Y=np.zeros((2, 2)),
        )

    @pytest.mark.parametrize("variables,count", [(2, 15), (3, 10)])
    def test_classical_limit(self, multivar, variables, count):
        """Test every coefficient of total degree below count."""
        p = self.params()
        binomials = [p.B1, p.B2, p.B3][:variables]

        coefficients = multivar.lauricella_coefficients(p, variables, count)

        assert len(coefficients) == math.comb(count - 1 + variables, variables)
        for index, ours in coefficients.items():
            expected = classical_coefficient(p.A1, p.C1, binomials, index)
            assert frobenius(ours - expected) <= 1e-8 * max(1.0, frobenius(expected)), f"index {index}"

    def test_coefficients_reproduce_f1(self, multivar):
        """Test that the F1 coefficients sum to the series value at small arguments."""
        p = appell(z=0.04, w=-0.03)
        coefficients = multivar.lauricella_coefficients(p, 2, 20)
        partial = sum(c * 0.04**m * (-0.03) ** n for (m, n), c in coefficients.items())

        assert np.allclose(partial, multivar.appell_f1_series(p).value, rtol=1e-9)

    def test_variable_count(self, multivar):
        """Test that only two or three variables are accepted."""
        with pytest.raises(ValueError, match="2 or 3 variables"):
            multivar.lauricella_coefficients(self.params(), 4, 5)


class TestAppellF2:
    """Tests for F2."""

    def test_scalar_values(self, multivar):
        """Test Y = 0 against mpmath per eigenvalue."""
        p = appell(y=(0.0, 0.0))
        report = multivar.appell_f2_series(p)
        expected = [
            complex(
                mpmath.appellf2(
                    p.A1[i, i].real, p.B1[i, i].real, p.B2[i, i].real, p.C1[i, i].real, p.C2[i, i].real, 0.3, -0.2
                )
            )
            for i in range(2)
        ]

        assert np.allclose(report.value, diag(*expected), rtol=1e-9)

    def test_reduces_to_neghmf(self, multivar, hyper, gammabeta):
        """Test that w = 0 gives the NEGHMF of the first pair times the zeroth second-pair moment."""
        p = appell(w=0.0)
        single = HyperParams(A=p.A, B=p.B, A1=p.A1, B1=p.B1, C1=p.C1, Y=p.Y, z=p.z)
        second = gammabeta.moments(p.Aprime, p.Bprime, p.Y, p.B2, p.C2 - p.B2).value(0) @ hyper.normalizer(p.B2, p.C2).value
        expected = hyper.neghmf_series(single).value @ second

        assert np.allclose(multivar.appell_f2_series(p).value, expected, rtol=1e-9)

    @pytest.mark.slow
    def test_integral(self, multivar):
        """Test the double integral against the double series."""
        p = appell()

        assert np.allclose(multivar.appell_f2_integral(p).value, multivar.appell_f2_series(p).value, rtol=1e-7)

    def test_domain(self, multivar):
        """Test that |z| + |w| >= 1 is rejected."""
        with pytest.raises(DomainError):
            multivar.appell_f2_series(appell(z=0.6, w=0.5))

    @pytest.mark.slow
    def test_derivative_corrected(self, multivar):
        """Test the mixed derivative with the corrected trailing factors."""
        p = appell()

        rhs = multivar.f2_derivative_rhs(p, 1, 1)
        h = 1e-3
        numeric = sum(
            sign * multivar.appell_f2_series(p.replace(z=0.3 + dz, w=-0.2 + dw)).value
            for sign, dz, dw in ((1, h, h), (-1, h, -h), (-1, -h, h), (1, -h, -h))
        ) / (4 * h * h)

        assert np.allclose(rhs.value, numeric, rtol=1e-4, atol=1e-6)
