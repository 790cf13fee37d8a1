"""
Parameter schemas for the gamma/beta, hypergeometric and Appell families.

Matrices are optional so one schema serves every operation of a family; each
operation checks the roles it needs.
"""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationInfo, field_validator, model_validator

from matspec.exceptions import DimensionError
from matspec.utils.validators import square_matrix


class _MatrixParams(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @field_validator("*", mode="before")
    @classmethod
    def coerce_matrices(cls, v: Any, info: ValidationInfo) -> Any:
        """Coerce matrix roles (capitalised names) into SquareMatrix."""
        if v is None or not (info.field_name or "x")[0].isupper():
            return v
        return square_matrix(v)

    @model_validator(mode="after")
    def check_orders(self) -> "_MatrixParams":
        """All supplied matrices share one order."""
        orders = {value.shape[0] for value in self.matrices().values()}
        if len(orders) > 1:
            raise DimensionError(f"Parameter matrices have different orders: {sorted(orders)}")
        return self

    def matrices(self) -> dict[str, np.ndarray]:
        return {
            name: value
            for name, value in self.__dict__.items()
            if isinstance(value, np.ndarray) and name[0].isupper()
        }

    @property
    def order(self) -> int:
        return next(iter(self.matrices().values())).shape[0]

    def require(self, *names: str) -> tuple[np.ndarray, ...]:
        """
        Fetch the named roles.

        Raises:
            DimensionError: If a role is missing
        """
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise DimensionError(f"Missing parameter matrices: {', '.join(missing)}")
        return tuple(getattr(self, name) for name in names)

    def replace(self, **changes: Any) -> Any:
        """Copy with some roles replaced (validated again)."""
        data = {name: getattr(self, name) for name in type(self).model_fields}
        data.update(changes)
        return type(self)(**data)


class GammaBetaParams(_MatrixParams):
    """Kernel pair A, B; beta arguments X, Z; extension matrix Y."""

    A: np.ndarray | None = None
    B: np.ndarray | None = None
    X: np.ndarray | None = None
    Z: np.ndarray | None = None
    Y: np.ndarray | None = None


class HyperParams(_MatrixParams):
    """Kernel pair A, B; hypergeometric parameters A1, B1, C1; Y; scalar z."""

    A: np.ndarray | None = None
    B: np.ndarray | None = None
    A1: np.ndarray | None = None
    B1: np.ndarray | None = None
    C1: np.ndarray | None = None
    X: np.ndarray | None = None
    Y: np.ndarray | None = None
    z: complex = 0j


class AppellParams(_MatrixParams):
    """Kernel pairs (A, B) and (Aprime, Bprime); A1, B1..B3, C1, C2; Y; z, w, v."""

    A: np.ndarray | None = None
    B: np.ndarray | None = None
    Aprime: np.ndarray | None = None
    Bprime: np.ndarray | None = None
    A1: np.ndarray | None = None
    B1: np.ndarray | None = None
    B2: np.ndarray | None = None
    B3: np.ndarray | None = None
    C1: np.ndarray | None = None
    C2: np.ndarray | None = None
    Y: np.ndarray | None = None
    z: complex = 0j
    w: complex = 0j
    v: complex = 0j
