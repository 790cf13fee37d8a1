"""
Tests for version module.
"""

import subprocess
from importlib import metadata
from unittest.mock import patch

from matspec.version import (
    NUMERIC_PACKAGES,
    __version__,
    get_git_commit,
    get_package_version,
    get_provenance,
    get_version_info,
)


class TestVersionConstant:
    """Tests for __version__ constant."""

    def test_version_format(self):
        """Test that version follows semver format."""
        parts = __version__.split(".")
        assert len(parts) == 3
        assert all(part.isdigit() for part in parts)


class TestGetGitCommit:
    """Tests for get_git_commit function."""

    def test_get_git_commit(self):
        """Test getting git commit hash."""
        commit = get_git_commit()

        assert isinstance(commit, str)
        if commit != "unknown":
            assert len(commit) >= 7
            assert all(c in "0123456789abcdef" for c in commit)

    @patch("subprocess.run")
    def test_get_git_commit_not_a_repo(self, mock_run):
        """Test getting git commit when not in a git repo."""
        mock_run.side_effect = subprocess.CalledProcessError(1, "git")

        assert get_git_commit() == "unknown"

    @patch("subprocess.run")
    def test_get_git_commit_git_not_found(self, mock_run):
        """Test getting git commit when git is not installed."""
        mock_run.side_effect = FileNotFoundError()

        assert get_git_commit() == "unknown"


class TestPackageVersions:
    """Tests for get_package_version and get_provenance."""

    def test_installed_package(self):
        """Test the version of an installed dependency."""
        assert get_package_version("numpy") == metadata.version("numpy")

    def test_missing_package(self):
        """Test that an absent distribution is reported as unknown."""
        assert get_package_version("no-such-distribution-matspec") == "unknown"

    def test_provenance_keys(self):
        """Test that provenance names matspec and the numeric stack."""
        assert set(get_provenance()) == {"matspec", *NUMERIC_PACKAGES}

    @patch("matspec.version.get_git_commit")
    def test_provenance_is_reproducible(self, mock_commit):
        """Test that provenance never consults git."""
        assert get_provenance() == get_provenance()
        mock_commit.assert_not_called()


class TestGetVersionInfo:
    """Tests for get_version_info function."""

    @patch("matspec.version.get_git_commit", return_value="abc123")
    def test_get_version_info_with_mocks(self, mock_commit):
        """Test getting version info with mocked values."""
        info = get_version_info()

        assert info["version"] == __version__
        assert info["git_commit"] == "abc123"
        assert set(NUMERIC_PACKAGES) <= set(info)
