"""
Tests for validators module.
"""

import numpy as np
import pytest

from matspec.exceptions import DimensionError, DomainError
from matspec.utils.validators import (
    frobenius,
    identity,
    same_order,
    square_matrix,
    validate_positive,
    validate_unit_disk,
)


class TestSquareMatrix:
    """Tests for square matrix validation."""

    def test_nested_list(self):
        """Test building a matrix from nested lists."""
        m = square_matrix([[1, 2], [3, 4]])

        assert m.shape == (2, 2)
        assert m.dtype == np.complex128
        assert m[1, 0] == 3

    def test_scalar_promoted(self):
        """Test that a scalar becomes a 1x1 matrix."""
        assert square_matrix(2.5).shape == (1, 1)

    def test_read_only(self):
        """Test that validated matrices cannot be modified in place."""
        m = square_matrix([[1.0]])

        with pytest.raises(ValueError):
            m[0, 0] = 2.0

    def test_invalid_shapes(self):
        """Test rejected shapes."""
        for data in ([[1, 2, 3], [4, 5, 6]], [1, 2], [[]], np.zeros((2, 2, 2))):
            with pytest.raises(DimensionError):
                square_matrix(data)

    def test_non_finite(self):
        """Test that NaN and inf entries are rejected."""
        with pytest.raises(DimensionError):
            square_matrix([[1.0, np.nan], [0.0, 1.0]])
        with pytest.raises(DimensionError):
            square_matrix([[np.inf]])


class TestOrders:
    """Tests for order helpers."""

    def test_identity(self):
        """Test identity construction."""
        assert np.array_equal(identity(3), np.eye(3))

    def test_same_order(self):
        """Test matching orders."""
        assert same_order(identity(2), identity(2), identity(2)) == 2

    def test_order_mismatch(self):
        """Test that mismatched orders raise."""
        with pytest.raises(DimensionError):
            same_order(identity(2), identity(3))

    def test_frobenius(self):
        """Test the Frobenius norm."""
        assert frobenius([[3.0, 0.0], [0.0, 4.0]]) == pytest.approx(5.0)


class TestDomainChecks:
    """Tests for scalar domain validation."""

    def test_unit_disk(self):
        """Test the open and closed unit disk."""
        assert validate_unit_disk(0.5, "test") == 0.5
        assert validate_unit_disk(1.0, "test", closed=True) == 1.0

        with pytest.raises(DomainError):
            validate_unit_disk(1.0, "test")
        with pytest.raises(DomainError, match="Eq. \\(s11\\)"):
            validate_unit_disk(1.5j, "Eq. (s11)", closed=True)

    def test_positive(self):
        """Test positivity of settings."""
        assert validate_positive(1e-10, "abs_tol") == 1e-10

        for value in (0.0, -1.0):
            with pytest.raises(DomainError, match="abs_tol"):
                validate_positive(value, "abs_tol")
