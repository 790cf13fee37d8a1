"""
matspec - matrix special functions

Gamma, beta and hypergeometric matrix functions with a generalized Kummer
kernel, their Appell and Lauricella extensions, and a property-based
verification engine for the identities they satisfy.
"""

from matspec.version import __version__

__author__ = "matspec developers"

__all__ = ["__version__"]
