"""
Main entry point for matspec.
"""

import logging
import sys

from matspec import cli


def main() -> None:
    """Main entry point."""
    try:
        request, settings = cli.parse(sys.argv[1:])
    except (ValueError, OSError) as e:
        cli.emit(cli.error_payload(e), None)
        sys.exit(cli.EXIT_ERROR)

    # Logs go to stderr; stdout carries JSON only
    logging.basicConfig(
        level=getattr(logging, settings.log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    logger = logging.getLogger(__name__)
    logger.info("matspec %s %s", request.command, request.target or "")
    sys.exit(cli.execute(request, settings))


if __name__ == "__main__":
    main()
