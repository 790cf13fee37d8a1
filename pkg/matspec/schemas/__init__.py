"""
Pydantic schemas for parameters, budgets, reports and the catalog.
"""

from matspec.schemas.catalog import CommutingFamily, FunctionEntry, IdentityCase, RoleSpec
from matspec.schemas.params import AppellParams, GammaBetaParams, HyperParams
from matspec.schemas.reports import DrawRecord, EvalReport, IdentityReport, SidesReport, SpectralData
from matspec.schemas.requests import CliRequest, EvalInput
from matspec.schemas.specs import QuadratureSpec, SeriesSpec, TolerancePolicy, Tolerances

__all__ = [
    "QuadratureSpec",
    "SeriesSpec",
    "Tolerances",
    "TolerancePolicy",
    "GammaBetaParams",
    "HyperParams",
    "AppellParams",
    "SpectralData",
    "EvalReport",
    "SidesReport",
    "DrawRecord",
    "IdentityReport",
    "CommutingFamily",
    "RoleSpec",
    "FunctionEntry",
    "IdentityCase",
    "CliRequest",
    "EvalInput",
]
