"""
Pytest configuration and fixtures for matspec tests.
"""

import numpy as np
import pytest

from matspec.config import Settings
from matspec.schemas.specs import QuadratureSpec, SeriesSpec, Tolerances
from matspec.services.catalog import Services
from matspec.services.gammabeta import GammaBetaService
from matspec.services.hyper import HyperService
from matspec.services.multivar import MultivarService


def diag(*values: complex) -> np.ndarray:
    """Diagonal test matrix."""
    return np.diag(np.array(values, dtype=np.complex128))


def conjugate(values: list[complex], basis: np.ndarray) -> np.ndarray:
    """P diag(values) P^-1."""
    return basis @ np.diag(np.array(values, dtype=np.complex128)) @ np.linalg.inv(basis)


# A well-conditioned non-orthogonal eigenbasis shared by commuting test matrices.
BASIS = np.array([[1.0, 0.4], [-0.3, 1.2]])


@pytest.fixture(scope="session")
def quadrature_spec():
    """Quadrature budget used by the tests."""
    return QuadratureSpec(abs_tol=1e-12, rel_tol=1e-10, max_levels=10, max_evals=100_000)


@pytest.fixture(scope="session")
def series_spec():
    """Series budget used by the tests."""
    return SeriesSpec(term_tol=1e-14, max_terms=300, tail_run=3)


@pytest.fixture(scope="function")
def test_settings():
    """Create test settings."""
    return Settings(
        abs_tol=1e-12,
        rel_tol=1e-10,
        max_levels=10,
        max_evals=100_000,
        term_tol=1e-14,
        max_terms=300,
        tail_run=3,
        draws=3,
        orders=[1, 2],
        seed=7,
        corrected=True,
        log_level="DEBUG",
    )


@pytest.fixture(scope="session")
def gammabeta(quadrature_spec, series_spec):
    """Gamma/beta service shared across a session (moment caches are reused)."""
    return GammaBetaService(quadrature_spec, series_spec, Tolerances())


@pytest.fixture(scope="session")
def hyper(gammabeta):
    """One-variable hypergeometric service."""
    return HyperService(gammabeta)


@pytest.fixture(scope="session")
def multivar(hyper):
    """Appell/Lauricella service."""
    return MultivarService(hyper)


@pytest.fixture(scope="session")
def services(quadrature_spec, series_spec):
    """Service bundle used by catalog and verify tests."""
    return Services(quadrature_spec, series_spec, Tolerances())


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(1234)
