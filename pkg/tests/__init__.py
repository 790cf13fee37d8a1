"""
Tests for matspec.
"""
