"""
CLI request schemas.
"""

import json
from pathlib import Path
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from matspec.utils.matrix_json import decode_matrix, decode_scalar


class CliRequest(BaseModel):
    """One CLI invocation after flag parsing."""

    model_config = ConfigDict(frozen=True)

    command: Literal["eval", "verify", "list"]
    target: str | None = None
    input: str | None = None
    output: str | None = None
    json_output: bool = False

    @model_validator(mode="after")
    def check_target(self) -> "CliRequest":
        """eval needs a function id and an input; verify needs a case id or "all"."""
        if self.command in ("eval", "verify") and not self.target:
            raise ValueError(f"{self.command} requires a target id")
        if self.command == "eval" and not self.input:
            raise ValueError("eval requires --input (a JSON file path or inline JSON)")
        if self.command == "list" and self.target not in (None, "functions", "cases"):
            raise ValueError(f"list accepts 'functions' or 'cases', got {self.target!r}")
        return self


class EvalInput(BaseModel):
    """
    Input document of `matspec eval`.

    {"params": {"A": <matrix>, ...}, "args": {"z": 0.3}, "options": {"n": 2}}
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    params: dict[str, np.ndarray] = Field(default_factory=dict)
    args: dict[str, complex] = Field(default_factory=dict)
    options: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_json(cls, document: Any) -> "EvalInput":
        """
        Raises:
            DimensionError: If a matrix or scalar does not decode
            ValueError: If the document is not an object
        """
        if not isinstance(document, dict):
            raise ValueError("Input JSON must be an object with 'params', 'args' and 'options'")
        unknown = sorted(set(document) - {"params", "args", "options"})
        if unknown:
            raise ValueError(f"Unknown input fields: {', '.join(unknown)}")
        return cls(
            params={name: decode_matrix(value) for name, value in document.get("params", {}).items()},
            args={name: decode_scalar(value) for name, value in document.get("args", {}).items()},
            options=dict(document.get("options", {})),
        )


def read_input(source: str) -> Any:
    """
    Parse a path or an inline JSON document.

    Raises:
        json.JSONDecodeError: With line and column of the first syntax error
        OSError: If the path cannot be read
    """
    text = source
    if not source.lstrip().startswith(("{", "[")):
        text = Path(source).read_text()
    return json.loads(text)
