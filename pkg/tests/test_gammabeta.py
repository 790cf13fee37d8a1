"""
Tests for the gamma and beta matrix functions.
"""

import math

import numpy as np
import pytest
from scipy.special import beta as scalar_beta
from scipy.special import gamma as scalar_gamma

from matspec.exceptions import DimensionError, PreconditionError, ShiftSingularityError
from matspec.schemas.params import GammaBetaParams
from tests.conftest import BASIS, conjugate, diag

SQRT_PI = math.sqrt(math.pi)


class TestGamma:
    """Tests for the classical gamma and its reciprocal."""

    def test_diagonal(self, gammabeta):
        """Test Gamma(diag(0.5, 2)) = diag(sqrt(pi), 1)."""
        report = gammabeta.gamma_matrix(diag(0.5, 2.0))

        assert report.converged
        assert np.allclose(report.value, diag(SQRT_PI, 1.0), rtol=1e-9)

    def test_conjugated(self, gammabeta):
        """Test that Gamma commutes with a change of basis."""
        report = gammabeta.gamma_matrix(conjugate([0.7, 3.2], BASIS))

        assert np.allclose(report.value, conjugate([scalar_gamma(0.7), scalar_gamma(3.2)], BASIS), rtol=1e-9)

    def test_jordan_block(self, gammabeta):
        """Test Gamma on a Jordan block: Gamma(1) I + Gamma'(1) N."""
        report = gammabeta.gamma_matrix(np.array([[1.0, 1.0], [0.0, 1.0]]))

        assert np.allclose(report.value, np.array([[1.0, -np.euler_gamma], [0.0, 1.0]]), atol=1e-8)

    def test_not_positive_stable(self, gammabeta):
        """Test the precondition on A."""
        with pytest.raises(PreconditionError, match="positive stable"):
            gammabeta.gamma_matrix(diag(-0.5, 1.0))

    def test_reciprocal_shift(self, gammabeta):
        """Test 1/Gamma(-0.5) = -1/(2 sqrt(pi)) through the shift recursion."""
        value = gammabeta.gamma_reciprocal(diag(-0.5))

        assert value[0, 0] == pytest.approx(-1 / (2 * SQRT_PI), rel=1e-9)

    def test_reciprocal_singular_shift(self, gammabeta):
        """Test that A + kI singular inside the recursion is reported."""
        with pytest.raises(ShiftSingularityError) as excinfo:
            gammabeta.gamma_reciprocal(diag(-1.0))

        assert excinfo.value.k == 1

    def test_pochhammer_via_gamma(self, gammabeta):
        """Test (A)_3 through Gamma^-1(A) Gamma(A + 3I)."""
        value = gammabeta.pochhammer_via_gamma(diag(0.5, 2.0), 3)

        assert np.allclose(value, diag(1.875, 24.0), rtol=1e-8)
        assert np.allclose(gammabeta.pochhammer_via_gamma(diag(0.5, 2.0), 0), np.eye(2))


class TestBeta:
    """Tests for the classical beta forms."""

    @pytest.mark.parametrize("form", ["unit", "halfline", "gamma_product"])
    def test_forms_agree(self, gammabeta, form):
        """Test every form against scipy."""
        report = gammabeta.beta_matrix(diag(2.0, 0.5), diag(3.0, 0.5), form=form)

        assert np.allclose(report.value, diag(1 / 12, math.pi), rtol=1e-8)

    def test_unknown_form(self, gammabeta):
        """Test that an unknown form name is rejected."""
        with pytest.raises(ValueError):
            gammabeta.beta_matrix(diag(1.0), diag(1.0), form="contour")

    def test_non_commuting(self, gammabeta):
        """Test the commuting precondition."""
        with pytest.raises(PreconditionError) as excinfo:
            gammabeta.beta_matrix(np.array([[1.0, 1.0], [0.0, 2.0]]), np.array([[1.0, 0.0], [1.0, 2.0]]))

        assert excinfo.value.hypothesis == "commuting"

    def test_moments_cached(self, gammabeta):
        """Test that moment sequences are shared between calls."""
        first = gammabeta.classical_moments(diag(1.5), diag(2.5))
        second = gammabeta.classical_moments(diag(1.5), diag(2.5))

        assert first is second
        assert first.value(2)[0, 0] == pytest.approx(scalar_beta(3.5, 2.5), rel=1e-9)
        assert first.offset(2).value(0)[0, 0] == first.value(2)[0, 0]


class TestExtended:
    """Tests for the extended gamma and beta."""

    def test_gamma_extended_value(self, gammabeta):
        """Test Gamma(1/2; 1) = sqrt(pi) e^-2."""
        report = gammabeta.gamma_extended(diag(0.5), diag(1.0))

        assert report.value[0, 0] == pytest.approx(SQRT_PI * math.exp(-2), rel=1e-9)

    def test_gamma_extended_reduces(self, gammabeta):
        """Test that X = 0 gives the classical gamma."""
        A = conjugate([0.8, 1.9], BASIS)

        assert np.allclose(
            gammabeta.gamma_extended(A, np.zeros((2, 2))).value, gammabeta.gamma_matrix(A).value, rtol=1e-9
        )

    def test_beta_extended_reduces(self, gammabeta):
        """Test that X = 0 gives the classical beta."""
        A, B = conjugate([0.8, 1.9], BASIS), conjugate([1.4, 0.6], BASIS)

        assert np.allclose(
            gammabeta.beta_extended(A, B, np.zeros((2, 2))).value, gammabeta.beta_matrix(A, B).value, rtol=1e-9
        )

    def test_factorization_sides_differ(self, gammabeta):
        """Test that the extended beta does not factor through extended gammas."""
        sides = gammabeta.beta_extended_factorization_sides(diag(1.0), diag(1.5), diag(0.5))

        assert sides.converged
        assert abs(sides.lhs.value[0, 0] - sides.rhs.value[0, 0]) > 1e-3


class TestNewExtendedGamma:
    """Tests for the new extended gamma."""

    def test_scalar_value(self, gammabeta):
        """Test A = 1, B = 2, X = 1/2, Y = 0 against -Gamma(-1/2)."""
        params = GammaBetaParams(A=diag(1.0), B=diag(2.0), X=diag(0.5), Y=diag(0.0))

        assert gammabeta.gamma_new_extended(params).value[0, 0] == pytest.approx(2 * SQRT_PI, rel=1e-8)

    def test_equal_kernel_reduces_to_extended(self, gammabeta):
        """Test that A = B gives the extended gamma of X with matrix Y."""
        A = diag(2.0, 3.0)
        X, Y = diag(0.5, 1.0), diag(0.3, 0.6)
        params = GammaBetaParams(A=A, B=A, X=X, Y=Y)

        assert np.allclose(gammabeta.gamma_new_extended(params).value, gammabeta.gamma_extended(X, Y).value, rtol=1e-8)

    def test_second_form(self, gammabeta):
        """Test the mu-integral form against the direct integral."""
        params = GammaBetaParams(A=diag(1.8), B=diag(2.6), X=diag(0.7), Y=diag(0.4))

        direct = gammabeta.gamma_new_extended(params)
        second = gammabeta.gamma_new_extended_form2(params)

        assert second.value[0, 0] == pytest.approx(direct.value[0, 0], rel=1e-6)

    def test_requires_a_minus_x_stable(self, gammabeta):
        """Test that A - X must be positive stable."""
        params = GammaBetaParams(A=diag(1.0), B=diag(2.0), X=diag(1.5), Y=diag(0.0))

        with pytest.raises(PreconditionError, match="A - X"):
            gammabeta.gamma_new_extended(params)

    def test_missing_role(self, gammabeta):
        """Test that a missing role is a dimension error."""
        with pytest.raises(DimensionError, match="X"):
            gammabeta.gamma_new_extended(GammaBetaParams(A=diag(1.0), B=diag(2.0)))


class TestNewExtendedBeta:
    """Tests for the new extended beta."""

    def test_zero_y_is_classical(self, gammabeta):
        """Test that Y = 0 gives B(X, Z)."""
        params = GammaBetaParams(A=np.eye(2), B=2 * np.eye(2), X=diag(1.5, 0.8), Z=diag(2.5, 1.2), Y=np.zeros((2, 2)))

        expected = diag(scalar_beta(1.5, 2.5), scalar_beta(0.8, 1.2))
        assert np.allclose(gammabeta.beta_new_extended(params).value, expected, rtol=1e-9)

    def test_equal_kernel_is_extended(self, gammabeta):
        """Test that A = B gives the extended beta with matrix Y."""
        A = diag(1.5, 2.0)
        X, Z, Y = diag(1.2, 0.9), diag(0.8, 1.6), diag(0.3, 0.2)
        params = GammaBetaParams(A=A, B=A, X=X, Z=Z, Y=Y)

        assert np.allclose(
            gammabeta.beta_new_extended(params).value, gammabeta.beta_extended(X, Z, Y).value, rtol=1e-9
        )

    def test_halfline_form(self, gammabeta):
        """Test the half-line form against the unit-interval form."""
        params = GammaBetaParams(
            A=conjugate([1.2, 1.7], BASIS),
            B=conjugate([2.1, 2.9], BASIS),
            X=conjugate([0.9, 1.4], BASIS),
            Z=conjugate([1.1, 0.7], BASIS),
            Y=conjugate([0.2, 0.4], BASIS),
        )

        unit = gammabeta.beta_new_extended(params)
        halfline = gammabeta.beta_new_extended_halfline(params)

        assert np.allclose(halfline.value, unit.value, rtol=1e-7)

    def test_summation_tail(self, gammabeta, series_spec):
        """Test the algebraically decaying sum for Y = 0 against B(X, I - Z)."""
        params = GammaBetaParams(A=diag(1.0), B=diag(1.0), X=diag(1.2), Z=diag(-0.7), Y=diag(0.0))
        series = series_spec.model_copy(update={"term_tol": 1e-9})

        report = gammabeta.beta_ne_summation(params, series=series)

        assert report.converged
        assert report.value[0, 0] == pytest.approx(scalar_beta(1.2, 1.7), rel=1e-5)

    def test_summation_requires_i_minus_z(self, gammabeta):
        """Test the I - Z precondition."""
        params = GammaBetaParams(A=diag(1.0), B=diag(1.0), X=diag(1.2), Z=diag(1.5), Y=diag(0.0))

        with pytest.raises(PreconditionError, match="I - Z"):
            gammabeta.beta_ne_summation(params)
