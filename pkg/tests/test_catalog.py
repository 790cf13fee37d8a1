"""
Tests for the function and identity catalogs.
"""

import numpy as np
import pytest

from matspec.exceptions import CatalogError
from matspec.services import catalog
from matspec.services.families import draw_arguments, draw_rng, draw_roles


class TestIds:
    """Tests for catalog ids and lookups."""

    def test_unique(self):
        """Test that function and case ids are unique."""
        assert len(set(catalog.function_ids())) == len(catalog.FUNCTIONS)
        assert len(set(catalog.case_ids())) == len(catalog.CASES)

    def test_get_function(self):
        """Test lookup of a known function."""
        assert catalog.get_function("beta_new_extended").anchor == "Eq. (3.2)"

    def test_get_case(self):
        """Test lookup of a known case."""
        assert catalog.get_case("pfaff-4.11").id == "pfaff-4.11"

    @pytest.mark.parametrize(
        ("lookup", "ids"), [(catalog.get_function, catalog.function_ids), (catalog.get_case, catalog.case_ids)]
    )
    def test_unknown_id(self, lookup, ids):
        """Test that unknown ids list the valid ones."""
        with pytest.raises(CatalogError) as excinfo:
            lookup("no-such-id")

        assert excinfo.value.valid_ids == ids()
        assert str(excinfo.value).endswith("no-such-id")
        assert excinfo.value.to_dict()["type"] == "CatalogError"


class TestCases:
    """Tests for identity case metadata."""

    def test_every_case_has_roles_and_anchor(self):
        """Test that each case names its anchor and draws at least one role."""
        for case in catalog.CASES:
            assert case.anchor
            assert case.roles

    def test_roles_reference_earlier_roles(self):
        """Test that base and same_as only point backwards."""
        for entry in [*catalog.FUNCTIONS, *catalog.CASES]:
            seen: set[str] = set()
            for role in entry.roles:
                for reference in (role.base, role.same_as):
                    assert reference is None or reference in seen, f"{entry.id}: {role.name}"
                seen.add(role.name)

    def test_printed_variants_are_paired(self):
        """Test that every printed variant has a corrected partner with the same anchor prefix."""
        printed = [c for c in catalog.CASES if c.corrected_variant is False]
        corrected = {c.anchor.split(",")[0] for c in catalog.CASES if c.corrected_variant is True}

        assert printed
        for case in printed:
            assert case.anchor.split(",")[0] in corrected

    def test_describe(self):
        """Test the JSON description of a case."""
        description = catalog.get_case("beta-recurrence-3.7").describe()

        assert description["id"] == "beta-recurrence-3.7"
        assert description["diagnostic"] is False
        assert "A: positive stable" in description["roles"]
        assert "sides" not in description


class TestIsDiagnostic:
    """Tests for is_diagnostic."""

    def test_flagged(self):
        """Test that flagged cases are always diagnostic."""
        case = catalog.get_case("xb1-factorization-diagnostic")

        assert catalog.is_diagnostic(case, corrected=True)
        assert catalog.is_diagnostic(case, corrected=False)

    def test_plain_case(self):
        """Test that an unpaired case is asserted."""
        assert not catalog.is_diagnostic(catalog.get_case("pfaff-4.11"))

    def test_printed_and_corrected(self):
        """Test that the run setting picks which variant is asserted."""
        printed = catalog.get_case("euler-e4.11-printed")
        corrected = catalog.get_case("euler-e4.11")

        assert catalog.is_diagnostic(printed, corrected=True)
        assert not catalog.is_diagnostic(corrected, corrected=True)
        assert not catalog.is_diagnostic(printed, corrected=False)
        assert catalog.is_diagnostic(corrected, corrected=False)


def test_function_describe():
    """Test the JSON description of a function entry."""
    description = catalog.get_function("neghmf_transform").describe()

    assert description["arguments"] == ["z"]
    assert description["options"] == {"which": "pfaff_z_over_zm1"}
    assert "evaluate" not in description


@pytest.mark.parametrize("case_id", ["pochhammer-gamma-ratio", "shell-reindexing", "beta-forms-gamma-product"])
def test_cheap_sides_agree(services, case_id):
    """Test that cheap identity sides agree on a seeded draw."""
    case = catalog.get_case(case_id)
    rng = draw_rng(3, 0)
    _, matrices = draw_roles(case.roles, 2, rng)
    arguments = {k: complex(v) for k, v in draw_arguments(case.arguments, rng).items()}

    sides = case.sides(services, matrices, arguments, True)

    assert sides.converged
    assert np.allclose(sides.lhs.value, sides.rhs.value, rtol=1e-8, atol=1e-10)


def test_evaluate_function_entry(services):
    """Test evaluating a function entry on drawn roles."""
    entry = catalog.get_function("gamma_matrix")
    _, matrices = draw_roles(entry.roles, 2, draw_rng(0, 0))

    report = entry.evaluate(services, matrices, {}, entry.options)

    assert report.converged
    assert report.value.shape == (2, 2)
