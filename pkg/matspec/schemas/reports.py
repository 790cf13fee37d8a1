"""
Result schemas: evaluation reports, spectral data and identity reports.
"""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from matspec.utils.matrix_json import encode_matrix
from matspec.utils.validators import square_matrix


class SpectralData(BaseModel):
    """Eigen-decomposition P diag(lambda) P^-1 of a diagonalizable matrix."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenvalues: np.ndarray
    eigenvector_matrix: np.ndarray
    inverse_eigenvector_matrix: np.ndarray
    condition_estimate: float = Field(ge=0)

    @property
    def order(self) -> int:
        return int(self.eigenvalues.shape[0])


class EvalReport(BaseModel):
    """A matrix function value with its error estimate and work counters."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    value: np.ndarray
    error_estimate: float = Field(0.0, ge=0)
    evaluations: int = Field(0, ge=0)
    converged: bool = True
    warnings: list[str] = Field(default_factory=list)

    @field_validator("value", mode="before")
    @classmethod
    def validate_value(cls, v: Any) -> np.ndarray:
        """Coerce into a validated SquareMatrix."""
        return square_matrix(v)

    @classmethod
    def exact(cls, value: Any) -> "EvalReport":
        """A value known to working precision."""
        return cls(value=value)

    @staticmethod
    def _merge(reports: tuple["EvalReport", ...]) -> dict[str, Any]:
        warnings: list[str] = []
        for report in reports:
            warnings.extend(w for w in report.warnings if w not in warnings)
        return {
            "evaluations": sum(r.evaluations for r in reports),
            "converged": all(r.converged for r in reports),
            "warnings": warnings,
        }

    @classmethod
    def product(cls, *factors: "EvalReport") -> "EvalReport":
        """Left-to-right matrix product with first-order error propagation."""
        value = np.asarray(factors[0].value)
        error = factors[0].error_estimate
        for factor in factors[1:]:
            error = error * float(np.linalg.norm(factor.value)) + float(np.linalg.norm(value)) * factor.error_estimate
            value = value @ factor.value
        return cls(value=value, error_estimate=error, **cls._merge(factors))

    @classmethod
    def combination(cls, terms: list[tuple[complex, "EvalReport"]]) -> "EvalReport":
        """Linear combination sum c_i R_i of reports."""
        value = sum(c * np.asarray(r.value) for c, r in terms)
        error = sum(abs(c) * r.error_estimate for c, r in terms)
        return cls(value=value, error_estimate=float(error), **cls._merge(tuple(r for _, r in terms)))

    def inverse(self) -> "EvalReport":
        """Matrix inverse; error ||V^-1||^2 times the error of V."""
        inverse = np.linalg.inv(self.value)
        norm = float(np.linalg.norm(inverse))
        return type(self)(
            value=inverse,
            error_estimate=norm * norm * self.error_estimate,
            evaluations=self.evaluations,
            converged=self.converged,
            warnings=list(self.warnings),
        )

    def with_warnings(self, warnings: list[str], converged: bool | None = None) -> "EvalReport":
        """Copy with extra warnings appended."""
        merged = list(self.warnings) + [w for w in warnings if w not in self.warnings]
        return self.model_copy(update={
            "warnings": merged,
            "converged": self.converged if converged is None else converged,
        })

    def to_json(self) -> dict[str, Any]:
        """JSON form used by the CLI."""
        return {
            "value": encode_matrix(self.value),
            "error_estimate": self.error_estimate,
            "evaluations": self.evaluations,
            "converged": self.converged,
            "warnings": list(self.warnings),
        }


class SidesReport(BaseModel):
    """Both sides of an identity, evaluated independently."""

    model_config = ConfigDict(frozen=True)

    lhs: EvalReport
    rhs: EvalReport

    @property
    def converged(self) -> bool:
        return self.lhs.converged and self.rhs.converged

    @property
    def error_estimate(self) -> float:
        return self.lhs.error_estimate + self.rhs.error_estimate


class DrawRecord(BaseModel):
    """Outcome of one random draw of an identity case."""

    model_config = ConfigDict(frozen=True)

    draw: int
    seed: int
    order: int
    residual: float | None = None
    budget: float | None = None
    passed: bool = False
    skipped: bool = False
    note: str | None = None


class IdentityReport(BaseModel):
    """Aggregated residuals of one identity case."""

    case_id: str
    draws: int = 0
    max_residual: float = 0.0
    mean_residual: float = 0.0
    failures: int = 0
    skipped: int = 0
    diagnostic: bool = False
    records: list[DrawRecord] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_ordering(self) -> "IdentityReport":
        """Aggregates are consistent: max >= mean >= 0."""
        if self.mean_residual < 0 or self.max_residual < self.mean_residual:
            raise ValueError("IdentityReport requires max_residual >= mean_residual >= 0")
        return self

    @classmethod
    def from_records(
        cls, case_id: str, records: list[DrawRecord], diagnostic: bool = False
    ) -> "IdentityReport":
        """Aggregate per-draw records; skipped draws never count as passes."""
        measured = [r.residual for r in records if not r.skipped and r.residual is not None]
        return cls(
            case_id=case_id,
            draws=len(records),
            max_residual=max(measured, default=0.0),
            mean_residual=float(np.mean(measured)) if measured else 0.0,
            failures=sum(1 for r in records if not r.skipped and not r.passed),
            skipped=sum(1 for r in records if r.skipped),
            diagnostic=diagnostic,
            records=records,
        )

    def to_json(self) -> dict[str, Any]:
        """JSON form: {case_id, draws, max_residual, mean_residual, failures, records}."""
        return self.model_dump(mode="json")
