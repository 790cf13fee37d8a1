"""
Version information for matspec.
"""
import subprocess
from importlib import metadata
from pathlib import Path

__version__ = "1.0.0"

NUMERIC_PACKAGES = ("numpy", "scipy", "mpmath")


def get_git_commit() -> str:
    """Get current git commit hash."""
    try:
        result = subprocess.run(
            ["git", "rev-parse", "--short", "HEAD"],
            capture_output=True,
            text=True,
            check=True,
            cwd=Path(__file__).parent.parent,
        )
        return result.stdout.strip()
    except (subprocess.CalledProcessError, FileNotFoundError):
        return "unknown"


def get_package_version(name: str) -> str:
    """Installed version of a distribution, "unknown" if absent."""
    try:
        return metadata.version(name)
    except metadata.PackageNotFoundError:
        return "unknown"


def get_provenance() -> dict[str, str]:
    """
    Versions embedded in verify reports.

    Contains no timestamps or commit ids so reruns stay byte-identical.
    """
    info = {"matspec": __version__}
    info.update({name: get_package_version(name) for name in NUMERIC_PACKAGES})
    return info


def get_version_info() -> dict[str, str]:
    """Get complete version information."""
    return {
        "version": __version__,
        "git_commit": get_git_commit(),
        **{name: get_package_version(name) for name in NUMERIC_PACKAGES},
    }
