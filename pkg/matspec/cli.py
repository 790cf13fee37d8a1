"""
Command-line front end: `matspec eval`, `matspec verify` and `matspec list`.

Exit codes: 0 success, 1 input/precondition error or identity failures,
2 unconverged evaluation.
"""

import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import configargparse
from pydantic import ValidationError

from matspec.config import Settings, get_config_parser, settings_from_namespace
from matspec.exceptions import MatspecError
from matspec.schemas.requests import CliRequest, EvalInput, read_input
from matspec.services import catalog, verify
from matspec.services.catalog import Services

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNCONVERGED = 2


class UsageError(ValueError):
    """Invalid command line."""


class CliArgumentParser(configargparse.ArgumentParser):
    """Raises instead of exiting so usage errors share exit code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> configargparse.ArgumentParser:
    """Settings flags plus the command, its target and the I/O flags."""
    parser = get_config_parser(parser_class=CliArgumentParser, prog="matspec")
    parser.add_argument("command", choices=["eval", "verify", "list"], help="Command to run")
    parser.add_argument(
        "target",
        nargs="?",
        help="Function id (eval), case id or 'all' (verify), 'functions' or 'cases' (list)",
    )
    parser.add_argument("--input", help="Eval input: JSON file path or inline JSON")
    parser.add_argument("--output", help="Write the JSON result to this path instead of stdout")
    parser.add_argument("--json", dest="json_output", action="store_true", help="Machine-readable list output")
    return parser


def parse(argv: Sequence[str] | None = None) -> tuple[CliRequest, Settings]:
    """
    Raises:
        UsageError: If the command line does not parse
        ValidationError: If a setting or request field is out of bounds
    """
    args = build_parser().parse_args(args=list(argv) if argv is not None else None)
    request = CliRequest(
        command=args.command,
        target=args.target,
        input=args.input,
        output=args.output,
        json_output=args.json_output,
    )
    return request, settings_from_namespace(args)


def error_payload(error: BaseException) -> dict[str, Any]:
    """Machine-readable error object."""
    if isinstance(error, MatspecError):
        return {"error": error.to_dict()}
    payload: dict[str, Any] = {"type": type(error).__name__, "message": str(error)}
    if isinstance(error, json.JSONDecodeError):
        payload.update({"line": error.lineno, "column": error.colno, "position": error.pos})
    if isinstance(error, ValidationError):
        payload["message"] = "; ".join(
            f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in error.errors()
        )
    return {"error": payload}


def run_eval(request: CliRequest, settings: Settings) -> tuple[int, dict[str, Any]]:
    """Evaluate one catalog function on JSON-supplied parameters."""
    entry = catalog.get_function(request.target or "")
    document = EvalInput.from_json(read_input(request.input or ""))
    options = {**entry.options, **document.options}
    logger.info("Evaluating %s (%s)", entry.id, entry.anchor)
    report = entry.evaluate(Services.from_settings(settings), document.params, document.args, options)
    for warning in report.warnings:
        logger.warning("%s: %s", entry.id, warning)
    return (EXIT_OK if report.converged else EXIT_UNCONVERGED), report.to_json()


def run_verify(request: CliRequest, settings: Settings) -> tuple[int, dict[str, Any]]:
    """Check one identity case, or every case with target "all"."""
    reports = verify.run_cases(
        [request.target or ""],
        draws=settings.draws,
        seed=settings.seed,
        policy=settings.tolerance_policy,
        orders=settings.orders,
        corrected=settings.corrected,
        services=Services.from_settings(settings),
    )
    payload = verify.suite_report(reports, settings.seed, settings.draws, settings.orders, settings.corrected)
    return (EXIT_OK if payload["failures"] == 0 else EXIT_ERROR), payload


def catalog_listing() -> dict[str, Any]:
    return {
        "functions": [entry.describe() for entry in catalog.FUNCTIONS],
        "cases": [case.describe() for case in catalog.CASES],
    }


def run_list(request: CliRequest, settings: Settings) -> tuple[int, dict[str, Any] | str]:
    """Function ids with roles and anchors, and case ids with anchors."""
    listing = catalog_listing()
    if request.target in ("functions", "cases"):
        listing = {request.target: listing[request.target]}
    if request.json_output:
        return EXIT_OK, listing
    lines: list[str] = []
    for entry in listing.get("functions", []):
        lines.append(f"{entry['id']} ({entry['anchor']}): {', '.join(entry['roles'])}")
    for case in listing.get("cases", []):
        marker = " [diagnostic]" if case["diagnostic"] else ""
        lines.append(f"{case['id']} ({case['anchor']}){marker}: {case['title']}")
    return EXIT_OK, "\n".join(lines) + "\n"


COMMANDS = {"eval": run_eval, "verify": run_verify, "list": run_list}


def emit(payload: dict[str, Any] | str, output: str | None) -> None:
    """Write JSON (sorted keys) or text to --output or stdout."""
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def execute(request: CliRequest, settings: Settings) -> int:
    """Run a parsed request; errors become an error object on stdout and exit code 1."""
    try:
        code, payload = COMMANDS[request.command](request, settings)
    except (MatspecError, ValueError, OSError) as e:
        logger.error("%s failed: %s", request.command, e)
        emit(error_payload(e), None)
        return EXIT_ERROR
    emit(payload, request.output)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    """Parse and run without touching logging configuration."""
    try:
        request, settings = parse(argv)
    except (ValueError, OSError) as e:
        emit(error_payload(e), None)
        return EXIT_ERROR
    return execute(request, settings)
