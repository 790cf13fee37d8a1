"""
Utility modules for matspec.
"""

from matspec.utils.matrix_json import decode_matrix, encode_matrix
from matspec.utils.validators import SquareMatrix, frobenius, identity, square_matrix

__all__ = [
    "SquareMatrix",
    "square_matrix",
    "identity",
    "frobenius",
    "decode_matrix",
    "encode_matrix",
]
