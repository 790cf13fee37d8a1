"""
Catalog schemas: commuting families, parameter roles, functions and identity cases.
"""

from collections.abc import Callable
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class CommutingFamily(BaseModel):
    """Matrices P diag(lambda_i) P^-1 sharing one eigenvector matrix P."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    order: int = Field(ge=1)
    basis: np.ndarray
    members: dict[str, np.ndarray]
    seed: int | None = None

    @model_validator(mode="after")
    def check_shapes(self) -> "CommutingFamily":
        if self.basis.shape != (self.order, self.order):
            raise ValueError(f"basis must be {self.order}x{self.order}, got {self.basis.shape}")
        for name, values in self.members.items():
            if values.shape != (self.order,):
                raise ValueError(f"member {name} needs {self.order} eigenvalues, got {values.shape}")
        return self

    def matrix(self, name: str) -> np.ndarray:
        """Member `name` assembled as P diag(lambda) P^-1."""
        values = self.members[name]
        return np.linalg.solve(self.basis.T, (self.basis * values[None, :]).T).T

    def matrices(self) -> dict[str, np.ndarray]:
        return {name: self.matrix(name) for name in self.members}


class RoleSpec(BaseModel):
    """
    How one parameter role is drawn.

    Eigenvalues are uniform in re x im. With `base` set they are the base
    role's eigenvalues plus that draw, which keeps differences such as
    C1 - B1 positive stable. `independent` roles get their own eigenbasis.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    re: tuple[float, float] = (0.5, 2.0)
    im: tuple[float, float] = (0.0, 0.0)
    base: str | None = None
    zero: bool = False
    same_as: str | None = None
    independent: bool = False
    requirement: str = "positive stable"

    @field_validator("re", "im")
    @classmethod
    def check_interval(cls, v: tuple[float, float]) -> tuple[float, float]:
        if v[0] > v[1]:
            raise ValueError(f"Interval bounds out of order: {v}")
        return v

    def describe(self) -> str:
        if self.zero:
            return f"{self.name} = 0"
        if self.same_as:
            return f"{self.name} = {self.same_as}"
        parts = [self.name, self.requirement]
        if self.base:
            parts.append(f"offset from {self.base}")
        if self.independent:
            parts.append("own eigenbasis")
        return ": ".join(parts[:2]) + "".join(f", {p}" for p in parts[2:])


Interval = tuple[float, float]


class FunctionEntry(BaseModel):
    """One evaluable matrix function with its scalar oracle."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    id: str
    anchor: str
    roles: list[RoleSpec]
    arguments: dict[str, Interval] = Field(default_factory=dict)
    options: dict[str, Any] = Field(default_factory=dict)
    evaluate: Callable[..., Any] = Field(exclude=True)
    oracle: bool = True

    def role_names(self) -> list[str]:
        return [role.name for role in self.roles]

    def describe(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "roles": [role.describe() for role in self.roles],
            "arguments": sorted(self.arguments),
            "options": dict(self.options),
            "oracle": self.oracle,
        }


class IdentityCase(BaseModel):
    """A stated identity turned into a measurable residual."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    id: str
    anchor: str
    title: str
    roles: list[RoleSpec]
    arguments: dict[str, Interval] = Field(default_factory=dict)
    corrected_variant: bool | None = None
    diagnostic: bool = False
    tolerance: float = Field(1e-6, gt=0)
    matrix_tolerance: float | None = Field(None, gt=0)
    orders: tuple[int, ...] | None = None
    sides: Callable[..., Any] = Field(exclude=True)

    def describe(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "title": self.title,
            "roles": [role.describe() for role in self.roles],
            "arguments": {k: list(v) for k, v in self.arguments.items()},
            "corrected_variant": self.corrected_variant,
            "diagnostic": self.diagnostic,
            "tolerance": self.tolerance,
        }
