"""
Exception hierarchy for matspec.

Budget exhaustion (quadrature levels, series terms) is not an error: those
paths return an unconverged report instead.
"""

from typing import Any


class MatspecError(Exception):
    """Base class for all matspec errors."""

    def to_dict(self) -> dict[str, Any]:
        """Machine-readable form used by the CLI error object."""
        payload: dict[str, Any] = {"type": type(self).__name__, "message": str(self)}
        for key in ("hypothesis", "anchor", "n", "k", "node", "order", "eigenvalue", "valid_ids"):
            value = getattr(self, key, None)
            if value is not None:
                payload[key] = value if not isinstance(value, complex) else [value.real, value.imag]
        return payload


class DimensionError(MatspecError, ValueError):
    """Matrix is not square, has the wrong order, or has non-finite entries."""


class DomainError(MatspecError, ValueError):
    """Argument outside the domain of the operation (t <= 0, |z| >= 1, ...)."""


class PreconditionError(DomainError):
    """A hypothesis of the invoked definition or theorem does not hold."""

    def __init__(self, message: str, hypothesis: str, anchor: str | None = None):
        super().__init__(message)
        self.hypothesis = hypothesis
        self.anchor = anchor


class ParameterPoleError(MatspecError, ArithmeticError):
    """A Pochhammer factor in a denominator is singular."""

    def __init__(self, message: str, n: int):
        super().__init__(message)
        self.n = n


class ShiftSingularityError(ParameterPoleError):
    """A + kI is singular inside the reciprocal gamma shift recursion."""

    def __init__(self, message: str, k: int):
        super().__init__(message, n=k)
        self.k = k


class NonDiagonalizableError(MatspecError, ArithmeticError):
    """Eigenbasis condition estimate exceeds the configured cap."""


class EigenFailureError(MatspecError, ArithmeticError):
    """Eigenvalue iteration did not converge."""

    def __init__(self, message: str, order: int):
        super().__init__(message)
        self.order = order


class EvaluationError(MatspecError, ArithmeticError):
    """A scalar function is not finite at an eigenvalue."""

    def __init__(self, message: str, eigenvalue: complex):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class IntegrandError(MatspecError, ArithmeticError):
    """Integrand returned a non-finite value at a quadrature node."""

    def __init__(self, message: str, node: float):
        super().__init__(message)
        self.node = node


class OracleError(MatspecError):
    """The scalar oracle could not produce a value."""


class GenerationError(MatspecError):
    """Random parameter generation exhausted its retry budget."""


class CatalogError(MatspecError, KeyError):
    """Unknown function or identity case id."""

    def __init__(self, message: str, valid_ids: list[str]):
        super().__init__(message)
        self.valid_ids = valid_ids

    def __str__(self) -> str:
        return self.args[0]
