"""
Numerical specification schemas: tolerances, quadrature and series budgets.
"""

from pydantic import BaseModel, ConfigDict, Field


class Tolerances(BaseModel):
    """Thresholds shared by precondition checks and identity suites."""

    model_config = ConfigDict(frozen=True)

    commutator_tol: float = Field(1e-12, ge=0)
    stability_margin: float = Field(1e-8, ge=0)
    residual_tol: float = Field(1e-6, ge=0)
    condition_cap: float = Field(1.0 / 1.4901161193847656e-08, gt=0)


class QuadratureSpec(BaseModel):
    """Budget and accuracy target for double-exponential quadrature."""

    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(1e-12, gt=0)
    rel_tol: float = Field(1e-10, gt=0)
    max_levels: int = Field(12, ge=3)
    max_evals: int = Field(200_000, gt=0)


class SeriesSpec(BaseModel):
    """Truncation rule for matrix power series."""

    model_config = ConfigDict(frozen=True)

    term_tol: float = Field(1e-14, gt=0)
    max_terms: int = Field(400, gt=0)
    tail_run: int = Field(3, ge=2)
    # Below this alpha(M), 1F1 of commuting arguments is summed as e^M 1F1(B - A; B; -M).
    kummer_threshold: float = Field(-2.0, le=0)


class TolerancePolicy(BaseModel):
    """
    Pass threshold for identity residuals.

    A draw passes when its residual is at most
    max(residual_tol, safety_factor * (err_lhs + err_rhs) / scale).
    """

    model_config = ConfigDict(frozen=True)

    residual_tol: float = Field(1e-6, gt=0)
    safety_factor: float = Field(10.0, ge=1)
    use_case_tolerance: bool = True
