"""
Tests for random commuting families and role drawing.
"""

import numpy as np
import pytest

from matspec.exceptions import GenerationError
from matspec.schemas.catalog import CommutingFamily, RoleSpec
from matspec.services.families import (
    MAX_CONDITION,
    draw_arguments,
    draw_rng,
    draw_roles,
    random_basis,
    random_commuting_family,
)


def commutator(X, Y):
    return X @ Y - Y @ X


class TestRandomBasis:
    """Tests for random_basis."""

    def test_condition_bound(self, rng):
        """Test that drawn bases respect the condition cap."""
        for order in (2, 3, 5):
            assert np.linalg.cond(random_basis(order, rng)) <= MAX_CONDITION

    def test_order_one(self, rng):
        """Test the trivial basis."""
        assert np.array_equal(random_basis(1, rng), np.ones((1, 1)))

    def test_exhausted(self):
        """Test that a generator never meeting the cap raises."""

        class Singular:
            def normal(self, scale, size):
                return np.full(size, 1e6)

        with pytest.raises(GenerationError):
            random_basis(3, Singular())


class TestRandomCommutingFamily:
    """Tests for random_commuting_family."""

    def test_members_commute(self):
        """Test that all members commute."""
        family = random_commuting_family(3, 3, seed=11)
        matrices = list(family.matrices().values())

        for X in matrices:
            for Y in matrices:
                assert np.allclose(commutator(X, Y), 0, atol=1e-10)

    def test_deterministic(self):
        """Test that the same seed reproduces the family."""
        first = random_commuting_family(2, 2, seed=5)
        second = random_commuting_family(2, 2, seed=5)

        assert np.array_equal(first.basis, second.basis)
        assert np.array_equal(first.members["M1"], second.members["M1"])

    def test_spectrum_box(self):
        """Test that eigenvalues land in the requested box."""
        family = random_commuting_family(4, 2, spectrum_box=((1.0, 1.5), (-0.2, 0.2)), seed=3)

        for values in family.members.values():
            assert np.all((values.real >= 1.0) & (values.real <= 1.5))
            assert np.all(np.abs(values.imag) <= 0.2)

    def test_names(self):
        """Test custom member names."""
        family = random_commuting_family(2, 2, seed=1, names=["A", "B"])

        assert sorted(family.members) == ["A", "B"]
        assert family.seed == 1

    @pytest.mark.parametrize(
        ("r", "count", "names"), [(0, 1, None), (2, -1, None), (2, 2, ["A"])]
    )
    def test_invalid_arguments(self, r, count, names):
        """Test rejected orders, counts and name lists."""
        with pytest.raises(ValueError):
            random_commuting_family(r, count, names=names)


class TestDrawRoles:
    """Tests for draw_roles."""

    def test_offset_keeps_difference_in_box(self, rng):
        """Test that C1 - B1 has eigenvalues in the offset box."""
        roles = [RoleSpec(name="B1", re=(0.5, 1.0)), RoleSpec(name="C1", re=(0.8, 1.2), base="B1")]

        family, matrices = draw_roles(roles, 3, rng)
        gap = family.members["C1"] - family.members["B1"]

        assert np.all((gap.real >= 0.8) & (gap.real <= 1.2))
        assert np.allclose(commutator(matrices["B1"], matrices["C1"]), 0, atol=1e-10)

    def test_zero_and_same_as(self, rng):
        """Test zero roles and copied roles."""
        roles = [RoleSpec(name="A"), RoleSpec(name="B", same_as="A"), RoleSpec(name="Y", zero=True)]

        _, matrices = draw_roles(roles, 2, rng)

        assert np.array_equal(matrices["A"], matrices["B"])
        assert np.allclose(matrices["Y"], 0)

    def test_real_spectra_give_real_matrices(self, rng):
        """Test that real draws are returned as real arrays."""
        _, matrices = draw_roles([RoleSpec(name="A")], 3, rng)

        assert not np.iscomplexobj(matrices["A"])

    def test_independent_role(self, rng):
        """Test that an independent role gets its own eigenbasis."""
        roles = [RoleSpec(name="A", re=(1.0, 3.0)), RoleSpec(name="B", re=(1.0, 3.0), independent=True)]

        family, matrices = draw_roles(roles, 3, rng)

        assert "B" not in family.members
        assert not np.allclose(commutator(matrices["A"], matrices["B"]), 0, atol=1e-6)
        eigenvalues = np.linalg.eigvals(matrices["B"]).real
        assert np.all((eigenvalues > 1.0 - 1e-8) & (eigenvalues < 3.0 + 1e-8))

    def test_order_preserved(self, rng):
        """Test that the matrix dict follows the role order."""
        roles = [RoleSpec(name=name) for name in ("Z", "A", "M")]

        _, matrices = draw_roles(roles, 2, rng)

        assert list(matrices) == ["Z", "A", "M"]

    @pytest.mark.parametrize("field", ["base", "same_as"])
    def test_unknown_reference(self, rng, field):
        """Test that referring to an undrawn role raises."""
        with pytest.raises(GenerationError):
            draw_roles([RoleSpec(name="C1", **{field: "B1"})], 2, rng)


def test_draw_arguments_sorted(rng):
    """Test that arguments are drawn in sorted key order inside their boxes."""
    arguments = draw_arguments({"z": (-0.5, 0.5), "w": (0.1, 0.2)}, rng)

    assert list(arguments) == ["w", "z"]
    assert 0.1 <= arguments["w"] <= 0.2
    assert -0.5 <= arguments["z"] <= 0.5


def test_draw_rng_streams():
    """Test that streams depend on seed and draw index only."""
    assert draw_rng(3, 1).random() == draw_rng(3, 1).random()
    assert draw_rng(3, 1).random() != draw_rng(3, 2).random()
    assert draw_rng(-1, 0).random() == draw_rng(2**64 - 1, 0).random()


class TestCommutingFamilySchema:
    """Tests for the CommutingFamily model."""

    def test_matrix_assembly(self):
        """Test P diag(lambda) P^-1 assembly."""
        P = np.array([[1.0, 0.4], [-0.3, 1.2]])
        family = CommutingFamily(order=2, basis=P, members={"A": np.array([1.0, 2.0])})

        assert np.allclose(family.matrix("A"), P @ np.diag([1.0, 2.0]) @ np.linalg.inv(P))

    def test_shape_checks(self):
        """Test that mismatched shapes are rejected."""
        with pytest.raises(ValueError):
            CommutingFamily(order=2, basis=np.eye(3), members={})
        with pytest.raises(ValueError):
            CommutingFamily(order=2, basis=np.eye(2), members={"A": np.ones(3)})
