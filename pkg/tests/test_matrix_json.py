"""
Tests for the matrix JSON codec.
"""

import json

import numpy as np
import pytest

from matspec.exceptions import DimensionError
from matspec.utils.matrix_json import decode_matrix, decode_scalar, encode_matrix


def test_encode_canonical_form():
    """Test the canonical encoding of a complex matrix."""
    encoded = encode_matrix(np.array([[1.0, 2j], [0.0, -1.5]]))

    assert encoded["order"] == 2
    assert encoded["entries"][0][1] == [0.0, 2.0]
    assert encoded["entries"][1][1] == [-1.5, 0.0]
    json.dumps(encoded)


def test_decode_canonical_form():
    """Test decoding the canonical form."""
    m = decode_matrix({"order": 2, "entries": [[[1, 0], [0, 1]], [[0, -1], [3, 0]]]})

    assert m[0, 1] == 1j
    assert m[1, 0] == -1j
    assert m[1, 1] == 3


def test_decode_shorthand():
    """Test real nested lists and bare numbers."""
    assert np.array_equal(decode_matrix([[1, 2], [3, 4]]), np.array([[1, 2], [3, 4]]))
    assert decode_matrix(0.5).shape == (1, 1)


def test_decode_order_mismatch():
    """Test that a wrong declared order is rejected."""
    with pytest.raises(DimensionError, match="Declared order"):
        decode_matrix({"order": 3, "entries": [[1, 0], [0, 1]]})


@pytest.mark.parametrize("payload", [{"rows": [[1]]}, "1", [[1, [1, 2, 3]]], [[True]], None])
def test_decode_invalid(payload):
    """Test rejected payloads."""
    with pytest.raises(DimensionError):
        decode_matrix(payload)


def test_decode_scalar():
    """Test scalar arguments."""
    assert decode_scalar(0.3) == 0.3
    assert decode_scalar([0.1, -0.2]) == complex(0.1, -0.2)
    with pytest.raises(DimensionError):
        decode_scalar("z")
