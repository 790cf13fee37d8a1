"""
Configuration management for matspec using configargparse.

Configuration precedence: CLI arguments > Environment variables > Config file > defaults
Config file location: $MATSPEC_CONFIG, else ~/.config/matspec/config.yaml when present
"""

import argparse
import os
from collections.abc import Sequence
from pathlib import Path
from typing import Literal

import configargparse
from pydantic import ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings

from matspec.schemas.specs import QuadratureSpec, SeriesSpec, TolerancePolicy, Tolerances

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def get_config_dir() -> Path:
    """Get the configuration directory (~/.config/matspec/). Never created here."""
    config_home = os.environ.get("XDG_CONFIG_HOME")
    if config_home:
        return Path(config_home) / "matspec"
    return Path.home() / ".config" / "matspec"


def get_config_files() -> list[str]:
    """
    Config files to read, at most one.

    Raises:
        FileNotFoundError: If MATSPEC_CONFIG names a missing file
    """
    explicit = os.environ.get("MATSPEC_CONFIG")
    if explicit:
        path = Path(explicit).expanduser()
        if not path.is_file():
            raise FileNotFoundError(f"MATSPEC_CONFIG points at a missing file: {path}")
        return [str(path)]
    default = get_config_dir() / "config.yaml"
    return [str(default)] if default.is_file() else []


def add_settings_arguments(parser: configargparse.ArgumentParser) -> configargparse.ArgumentParser:
    """Register every settings key as a flag with its environment variable."""
    # Quadrature
    parser.add_argument(
        "--abs-tol",
        env_var="MATSPEC_ABS_TOL",
        type=float,
        default=1e-12,
        help="Absolute quadrature tolerance",
    )
    parser.add_argument(
        "--rel-tol",
        env_var="MATSPEC_REL_TOL",
        type=float,
        default=1e-10,
        help="Relative quadrature tolerance",
    )
    parser.add_argument(
        "--max-levels",
        env_var="MATSPEC_MAX_LEVELS",
        type=int,
        default=12,
        help="Maximum tanh-sinh refinement levels",
    )
    parser.add_argument(
        "--max-evals",
        env_var="MATSPEC_MAX_EVALS",
        type=int,
        default=200_000,
        help="Maximum integrand evaluations per integral",
    )

    # Series
    parser.add_argument(
        "--term-tol",
        env_var="MATSPEC_TERM_TOL",
        type=float,
        default=1e-14,
        help="Relative term size that ends a series",
    )
    parser.add_argument(
        "--max-terms",
        env_var="MATSPEC_MAX_TERMS",
        type=int,
        default=400,
        help="Maximum series terms",
    )
    parser.add_argument(
        "--tail-run",
        env_var="MATSPEC_TAIL_RUN",
        type=int,
        default=3,
        help="Consecutive small terms required to stop a series",
    )
    parser.add_argument(
        "--kummer-threshold",
        env_var="MATSPEC_KUMMER_THRESHOLD",
        type=float,
        default=-2.0,
        help="alpha(M) below which commuting 1F1 arguments use the Kummer transformation",
    )

    # Tolerances
    parser.add_argument(
        "--commutator-tol",
        env_var="MATSPEC_COMMUTATOR_TOL",
        type=float,
        default=1e-12,
        help="Relative commutator norm accepted as commuting",
    )
    parser.add_argument(
        "--stability-margin",
        env_var="MATSPEC_STABILITY_MARGIN",
        type=float,
        default=1e-8,
        help="Smallest eigenvalue real part accepted as positive stable",
    )
    parser.add_argument(
        "--residual-tol",
        env_var="MATSPEC_RESIDUAL_TOL",
        type=float,
        default=1e-6,
        help="Residual tolerance for oracle comparisons",
    )
    parser.add_argument(
        "--condition-cap",
        env_var="MATSPEC_CONDITION_CAP",
        type=float,
        default=1.0 / 1.4901161193847656e-08,
        help="Largest eigenbasis condition number accepted",
    )

    # Verification
    parser.add_argument(
        "--draws",
        env_var="MATSPEC_DRAWS",
        type=int,
        default=30,
        help="Random draws per identity case",
    )
    parser.add_argument(
        "--orders",
        env_var="MATSPEC_ORDERS",
        type=int,
        nargs="+",
        default=[1, 2, 3],
        help="Matrix orders cycled through by the draws",
    )
    parser.add_argument(
        "--seed",
        env_var="MATSPEC_SEED",
        type=int,
        default=0,
        help="Run seed",
    )
    parser.add_argument(
        "--corrected",
        env_var="MATSPEC_CORRECTED",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="Assert the corrected variants of (e4.11), (5.4), (5.5), (5.7) and Thm 5.8",
    )

    # Application
    parser.add_argument(
        "--log-level",
        env_var="MATSPEC_LOG_LEVEL",
        choices=LOG_LEVELS,
        default="WARNING",
        help="Logging level",
    )
    return parser


def get_config_parser(
    parser_class: type[configargparse.ArgumentParser] = configargparse.ArgumentParser, **kwargs
) -> configargparse.ArgumentParser:
    """Create and configure the argument parser."""
    parser = parser_class(
        default_config_files=get_config_files(),
        description="matspec - matrix special functions and identity verification",
        config_file_parser_class=configargparse.YAMLConfigFileParser,
        args_for_setting_config_path=[],
        ignore_unknown_config_file_keys=False,
        **kwargs,
    )
    return add_settings_arguments(parser)


class Settings(BaseSettings):
    """Application settings loaded from config parser."""

    # Quadrature
    abs_tol: float = Field(1e-12, gt=0)
    rel_tol: float = Field(1e-10, gt=0)
    max_levels: int = Field(12, ge=3)
    max_evals: int = Field(200_000, gt=0)

    # Series
    term_tol: float = Field(1e-14, gt=0)
    max_terms: int = Field(400, gt=0)
    tail_run: int = Field(3, ge=2)
    kummer_threshold: float = Field(-2.0, le=0)

    # Tolerances
    commutator_tol: float = Field(1e-12, ge=0)
    stability_margin: float = Field(1e-8, ge=0)
    residual_tol: float = Field(1e-6, gt=0)
    condition_cap: float = Field(1.0 / 1.4901161193847656e-08, gt=0)

    # Verification
    draws: int = Field(30, ge=1)
    orders: list[int] = Field(default_factory=lambda: [1, 2, 3])
    seed: int = 0
    corrected: bool = True

    # Application
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"

    @field_validator("orders")
    @classmethod
    def check_orders(cls, v: list[int]) -> list[int]:
        """Orders are between 1 and 10."""
        if not v:
            raise ValueError("At least one matrix order is required")
        bad = [o for o in v if not 1 <= o <= 10]
        if bad:
            raise ValueError(f"Matrix orders must lie in 1..10, got {bad}")
        return v

    @field_validator("log_level", mode="before")
    @classmethod
    def upper_log_level(cls, v: str) -> str:
        return v.upper() if isinstance(v, str) else v

    @property
    def quadrature_spec(self) -> QuadratureSpec:
        return QuadratureSpec(
            abs_tol=self.abs_tol,
            rel_tol=self.rel_tol,
            max_levels=self.max_levels,
            max_evals=self.max_evals,
        )

    @property
    def series_spec(self) -> SeriesSpec:
        return SeriesSpec(
            term_tol=self.term_tol,
            max_terms=self.max_terms,
            tail_run=self.tail_run,
            kummer_threshold=self.kummer_threshold,
        )

    @property
    def tolerances(self) -> Tolerances:
        return Tolerances(
            commutator_tol=self.commutator_tol,
            stability_margin=self.stability_margin,
            residual_tol=self.residual_tol,
            condition_cap=self.condition_cap,
        )

    @property
    def tolerance_policy(self) -> TolerancePolicy:
        return TolerancePolicy(residual_tol=self.residual_tol)

    model_config = ConfigDict(
        env_prefix="MATSPEC_",
        case_sensitive=False,
    )


def settings_from_namespace(args: argparse.Namespace) -> Settings:
    """Keep the settings keys of a parsed namespace."""
    config_dict = {name: value for name, value in vars(args).items() if name in Settings.model_fields}
    return Settings(**config_dict)


def load_settings(argv: Sequence[str] | None = None) -> Settings:
    """Load settings from config parser; flags outside the settings keys are ignored."""
    parser = get_config_parser()
    args, _ = parser.parse_known_args(args=list(argv) if argv is not None else [])
    return settings_from_namespace(args)

