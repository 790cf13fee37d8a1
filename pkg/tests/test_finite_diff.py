"""
Tests for finite-difference stencils.
"""

import numpy as np
import pytest

from matspec.utils.finite_diff import default_step, derivative, partial_derivative


class TestDerivative:
    """Tests for one-dimensional central differences."""

    def test_first_derivative(self):
        """Test d/dz exp(2z) at z = 0.3."""
        value = derivative(lambda z: np.exp(2 * z) * np.eye(2), 0.3)

        assert np.allclose(value, 2 * np.exp(0.6) * np.eye(2), rtol=1e-9)

    def test_second_derivative(self):
        """Test d2/dz2 of sin."""
        value = derivative(lambda z: np.array([[np.sin(z)]]), 0.7, order=2)

        assert value[0, 0] == pytest.approx(-np.sin(0.7), rel=1e-7)

    def test_order_zero(self):
        """Test that order 0 returns the function value."""
        assert derivative(lambda z: np.array([[z]]), 0.25, order=0)[0, 0] == 0.25

    def test_unsupported_order(self):
        """Test that third derivatives are rejected."""
        with pytest.raises(ValueError):
            derivative(lambda z: np.array([[z]]), 0.0, order=3)

    def test_step_scaling(self):
        """Test the default step grows with |z|."""
        assert default_step(10.0) > default_step(0.0) > 0


class TestPartialDerivative:
    """Tests for mixed partials."""

    def test_mixed_partial(self):
        """Test d2/dzdw of exp(z w) at (0.2, 0.5)."""
        z, w = 0.2, 0.5
        value = partial_derivative(lambda a, b: np.array([[np.exp(a * b)]]), (z, w), (1, 1))

        assert value[0, 0] == pytest.approx((1 + z * w) * np.exp(z * w), rel=1e-7)

    def test_zero_orders_skip_axes(self):
        """Test that a zero order leaves the coordinate untouched."""
        value = partial_derivative(lambda a, b, c: np.array([[a * a * c + b]]), (0.3, 0.1, 2.0), (1, 0, 1))

        assert value[0, 0] == pytest.approx(2 * 0.3, rel=1e-8)
