"""
Tests for the matrix functional calculus.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matspec.exceptions import DimensionError, DomainError, EvaluationError, NonDiagonalizableError, PreconditionError
from matspec.schemas.specs import SeriesSpec, Tolerances
from matspec.services.matcalc import (
    apply_scalar_function,
    binomial_series,
    commutator_norm,
    commutes,
    complex_power,
    inverse,
    is_positive_stable,
    joint_spectrum,
    pochhammer,
    real_power,
    require_commuting,
    require_positive_stable,
    spectral_alpha_beta,
    spectral_decompose,
)
from tests.conftest import BASIS, conjugate, diag

eigenvalue = st.floats(min_value=0.2, max_value=3.0, allow_nan=False)


class TestSpectralBounds:
    """Tests for spectral_alpha_beta and is_positive_stable."""

    def test_examples(self):
        """Test diagonal, identity and triangular cases."""
        assert spectral_alpha_beta(diag(1, 2)) == pytest.approx((2, 1))
        assert spectral_alpha_beta(np.eye(3)) == pytest.approx((1, 1))
        assert spectral_alpha_beta(np.array([[1.0, 1.0], [0.0, 3.0]])) == pytest.approx((3, 1))

    def test_positive_stable(self):
        """Test positive stability with margins."""
        assert is_positive_stable(diag(1, 2))
        assert not is_positive_stable(diag(-1, 2))
        assert not is_positive_stable(diag(0.5), margin=0.6)

    def test_negative_margin(self):
        """Test that a negative margin is rejected."""
        with pytest.raises(DomainError):
            is_positive_stable(diag(1), margin=-1.0)

    @given(st.lists(eigenvalue, min_size=1, max_size=3))
    @settings(max_examples=30, deadline=None)
    def test_conjugation_invariance(self, values):
        """Test that alpha/beta depend only on the spectrum."""
        r = len(values)
        P = np.eye(r) + 0.3 * np.triu(np.ones((r, r)), 1)
        A = P @ np.diag(values) @ np.linalg.inv(P)

        alpha, beta = spectral_alpha_beta(A)

        assert alpha == pytest.approx(max(values), abs=1e-9)
        assert beta == pytest.approx(min(values), abs=1e-9)
        assert is_positive_stable(A)


class TestCommutator:
    """Tests for commutator_norm and the commuting checks."""

    def test_examples(self):
        """Test diagonal, identity and nilpotent pairs."""
        A = np.array([[1.0, 2.0], [3.0, 4.0]])

        assert commutator_norm(diag(1, 2), diag(3, 4)) == 0.0
        assert commutator_norm(np.eye(2), A) == 0.0
        assert commutator_norm(np.array([[0, 1], [0, 0]]), np.array([[0, 0], [1, 0]])) == pytest.approx(math.sqrt(2))

    def test_order_mismatch(self):
        """Test that mismatched orders raise."""
        with pytest.raises(DimensionError):
            commutator_norm(np.eye(2), np.eye(3))

    @given(st.lists(eigenvalue, min_size=2, max_size=2), st.lists(eigenvalue, min_size=2, max_size=2))
    @settings(max_examples=30, deadline=None)
    def test_shared_basis_commutes(self, first, second):
        """Test that matrices built on one eigenbasis commute."""
        A, B = conjugate(first, BASIS), conjugate(second, BASIS)

        assert commutes(A, B)
        require_commuting({"A": A, "B": B}, "test")

    def test_require_commuting_names_pair(self):
        """Test the precondition error for a non-commuting pair."""
        with pytest.raises(PreconditionError) as excinfo:
            require_commuting({"X": np.array([[0, 1], [0, 0]]), "Z": np.array([[0, 0], [1, 0]])}, "Eq. (3.7)")

        assert excinfo.value.hypothesis == "commuting"
        assert excinfo.value.anchor == "Eq. (3.7)"
        assert "X and Z" in str(excinfo.value)

    def test_require_positive_stable(self):
        """Test the positive stability precondition."""
        require_positive_stable("A", diag(1, 2), "Eq. (3.2)")

        with pytest.raises(PreconditionError) as excinfo:
            require_positive_stable("Y", diag(-0.1, 1), "Eq. (3.2)")
        assert excinfo.value.hypothesis == "positive stable"


class TestPowers:
    """Tests for real_power and complex_power."""

    def test_real_power_examples(self):
        """Test t = 1, diagonal and Jordan block cases."""
        A = np.array([[1.0, 1.0], [0.0, 1.0]])

        assert np.allclose(real_power(1.0, A), np.eye(2))
        assert np.allclose(real_power(math.e, diag(1, 2)), diag(math.e, math.e**2))
        expected = np.array([[0.25, 0.25 * math.log(0.25)], [0.0, 0.25]])
        assert np.allclose(real_power(0.25, A), expected)

    def test_real_power_domain(self):
        """Test that t <= 0 is rejected."""
        for t in (0.0, -1.0):
            with pytest.raises(DomainError):
                real_power(t, np.eye(2))

    def test_complex_power(self):
        """Test the principal branch for a complex base."""
        value = complex_power(1j, diag(1, 2))

        assert np.allclose(value, diag(1j, -1))

    def test_complex_power_branch_cut(self):
        """Test that the negative real axis is rejected."""
        with pytest.raises(DomainError):
            complex_power(-0.5, np.eye(2))
        with pytest.raises(DomainError):
            complex_power(0.0, np.eye(2))

    @given(st.floats(min_value=0.1, max_value=5.0), st.floats(min_value=0.1, max_value=5.0))
    @settings(max_examples=30, deadline=None)
    def test_real_power_semigroup(self, s, t):
        """Test (st)^A = s^A t^A."""
        A = conjugate([0.7, 1.9], BASIS)

        assert np.allclose(real_power(s * t, A), real_power(s, A) @ real_power(t, A), rtol=1e-10)


class TestPochhammer:
    """Tests for the rising factorial."""

    def test_examples(self):
        """Test n = 0, identity and diagonal cases."""
        A = np.array([[1.0, 2.0], [3.0, 4.0]])

        assert np.allclose(pochhammer(A, 0), np.eye(2))
        assert np.allclose(pochhammer(np.eye(2), 4), 24 * np.eye(2))
        assert np.allclose(pochhammer(diag(0.5, 2), 3), diag(1.875, 24))

    def test_negative_index(self):
        """Test that negative indices are rejected."""
        with pytest.raises(DomainError):
            pochhammer(np.eye(2), -1)

    @given(st.integers(min_value=0, max_value=8), st.integers(min_value=0, max_value=8))
    @settings(max_examples=30, deadline=None)
    def test_shift_rule(self, m, n):
        """Test (A)_(m+n) = (A)_m (A + mI)_n."""
        A = conjugate([0.3, 1.4], BASIS)
        lhs = pochhammer(A, m + n)
        rhs = pochhammer(A, m) @ pochhammer(A + m * np.eye(2), n)

        assert np.allclose(lhs, rhs, rtol=1e-10)


class TestBinomialSeries:
    """Tests for (1 - z)^-A."""

    def test_examples(self):
        """Test z = 0, identity and diagonal cases."""
        spec = SeriesSpec()

        assert np.allclose(binomial_series(0.0, diag(1, 2), spec), np.eye(2))
        assert np.allclose(binomial_series(0.5, np.eye(2), spec), 2 * np.eye(2))
        assert np.allclose(binomial_series(0.3, diag(1, 2), spec), diag(1 / 0.7, 1 / 0.49))

    def test_agrees_with_complex_power(self):
        """Test against exp(-A Log(1 - z))."""
        A = conjugate([0.6, 1.3], BASIS)
        z = 0.2 + 0.3j

        assert np.allclose(binomial_series(z, A, SeriesSpec()), complex_power(1 - z, -A))

    def test_domain(self):
        """Test that |z| >= 1 is rejected."""
        with pytest.raises(DomainError):
            binomial_series(1.0, np.eye(2), SeriesSpec())


class TestSpectralDecompose:
    """Tests for spectral_decompose and apply_scalar_function."""

    def test_sorted_eigenvalues(self):
        """Test eigenvalue ordering and reconstruction."""
        S = spectral_decompose(diag(3, 1))

        assert np.allclose(S.eigenvalues, [1, 3])
        assert np.allclose(S.eigenvector_matrix @ np.diag(S.eigenvalues) @ S.inverse_eigenvector_matrix, diag(3, 1))

    def test_symmetric(self):
        """Test the 2x2 symmetric closed form."""
        S = spectral_decompose(np.array([[2.0, 1.0], [1.0, 2.0]]))
        v = S.eigenvector_matrix[:, 0]

        assert np.allclose(S.eigenvalues, [1, 3])
        assert abs(v[0] + v[1]) < 1e-12

    def test_defective(self):
        """Test that a Jordan block is rejected."""
        with pytest.raises(NonDiagonalizableError):
            spectral_decompose(np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_apply_scalar_function(self):
        """Test identity, constant and sqrt maps."""
        A = np.array([[2.0, 1.0], [1.0, 2.0]])

        assert np.allclose(apply_scalar_function(spectral_decompose(A), lambda x: x), A)
        assert np.allclose(apply_scalar_function(spectral_decompose(A), lambda x: 1.0), np.eye(2))
        assert np.allclose(apply_scalar_function(spectral_decompose(diag(1, 4)), np.sqrt), diag(1, 2))

    def test_apply_non_finite(self):
        """Test the evaluation error naming the eigenvalue."""
        with pytest.raises(EvaluationError) as excinfo:
            apply_scalar_function(spectral_decompose(diag(0, 1)), lambda x: 1 / x if x else float("inf"))

        assert excinfo.value.eigenvalue == 0


class TestJointSpectrum:
    """Tests for the shared eigenbasis of commuting families."""

    def test_commuting_family(self):
        """Test that one basis diagonalizes every member."""
        members = [conjugate([0.5, 1.5], BASIS), conjugate([2.0, 0.7], BASIS), np.zeros((2, 2))]
        spectrum = joint_spectrum(members)

        assert spectrum is not None
        for k, M in enumerate(members):
            assert np.allclose(spectrum.assemble(spectrum.eigenvalues[k]), M)

    def test_repeated_eigenvalue(self):
        """Test a member with a repeated eigenvalue next to a distinct one."""
        spectrum = joint_spectrum([np.eye(2) * 1.5, conjugate([0.4, 0.9], BASIS)])

        assert spectrum is not None

    def test_non_commuting(self):
        """Test that a non-commuting family has no joint spectrum."""
        assert joint_spectrum([np.array([[1.0, 1.0], [0.0, 2.0]]), np.array([[1.0, 0.0], [1.0, 2.0]])]) is None

    def test_defective(self):
        """Test that a defective member has no joint spectrum."""
        assert joint_spectrum([np.array([[1.0, 1.0], [0.0, 1.0]])], Tolerances()) is None

    def test_inverse_guard(self):
        """Test the singular inverse guard."""
        assert np.allclose(inverse(diag(2, 4)), diag(0.5, 0.25))
        with pytest.raises(EvaluationError):
            inverse(np.zeros((2, 2)))
