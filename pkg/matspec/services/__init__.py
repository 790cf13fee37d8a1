"""
Service layer for matspec: matrix functions, verification and catalog.
"""

from matspec.services.gammabeta import GammaBetaService
from matspec.services.hyper import HyperService
from matspec.services.multivar import MultivarService

__all__ = [
    "GammaBetaService",
    "HyperService",
    "MultivarService",
]
