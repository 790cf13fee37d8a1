"""
Identity verification engine.

Turns catalog cases into per-draw residuals and compares matrix evaluations
against the conjugated scalar oracle. Every draw gets its own random
stream derived from (seed, draw index), so reports depend only on the
inputs.
"""

import logging
from collections.abc import Sequence
from typing import Any

import numpy as np

from matspec.exceptions import (
    DomainError,
    EigenFailureError,
    EvaluationError,
    IntegrandError,
    NonDiagonalizableError,
    OracleError,
    ParameterPoleError,
)
from matspec.schemas.catalog import CommutingFamily, IdentityCase
from matspec.schemas.reports import DrawRecord, EvalReport, IdentityReport
from matspec.schemas.specs import TolerancePolicy
from matspec.services import catalog
from matspec.services.catalog import Services
from matspec.services.families import draw_arguments, draw_rng, draw_roles
from matspec.services.oracle import scalar_oracle
from matspec.version import get_provenance

logger = logging.getLogger(__name__)

DEFAULT_ORDERS = (1, 2, 3)

# Draws hitting these are recorded as skipped, never as passes.
SKIPPED_ERRORS = (
    DomainError,
    OracleError,
    IntegrandError,
    EvaluationError,
    NonDiagonalizableError,
    EigenFailureError,
    ParameterPoleError,
    np.linalg.LinAlgError,
)


def residual(lhs: np.ndarray, rhs: np.ndarray) -> tuple[float, float]:
    """
    Relative residual of an identity.

    Returns:
        (||L - R||_F / scale, scale) with scale = max(||L||_F, ||R||_F, 1)
    """
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    scale = max(float(np.linalg.norm(lhs)), float(np.linalg.norm(rhs)), 1.0)
    return float(np.linalg.norm(lhs - rhs)) / scale, scale


def budget(tolerance: float, error_estimate: float, scale: float, policy: TolerancePolicy) -> float:
    """Pass threshold: the tolerance or the scaled propagated error, whichever is larger."""
    return max(tolerance, policy.safety_factor * error_estimate / scale)


def _case_tolerance(case: IdentityCase, order: int, policy: TolerancePolicy) -> float:
    if not policy.use_case_tolerance:
        return policy.residual_tol
    if order > 1 and case.matrix_tolerance is not None:
        return case.matrix_tolerance
    return case.tolerance


def _usable_orders(requested: Sequence[int], allowed: tuple[int, ...] | None) -> tuple[int, ...]:
    if not requested:
        raise ValueError("At least one matrix order is required")
    if allowed is None:
        return tuple(requested)
    usable = tuple(o for o in requested if o in allowed)
    return usable or allowed


def _skipped(draw: int, seed: int, order: int, note: str) -> DrawRecord:
    logger.warning("Draw %d (order %d) skipped: %s", draw, order, note)
    return DrawRecord(draw=draw, seed=seed, order=order, skipped=True, note=note)


def check_identity(
    case: IdentityCase,
    draws: int,
    seed: int = 0,
    policy: TolerancePolicy | None = None,
    orders: Sequence[int] = DEFAULT_ORDERS,
    corrected: bool = True,
    services: Services | None = None,
) -> IdentityReport:
    """
    Evaluate both sides of a catalog identity on random draws.

    Args:
        case: Catalog identity case
        draws: Number of random draws
        seed: Run seed; draw d uses the stream (seed, d)
        policy: Residual pass policy
        orders: Matrix orders cycled through by draw index
        corrected: Which of a printed/corrected pair is asserted
        services: Evaluation services, defaults to default budgets

    Raises:
        GenerationError: If a draw cannot satisfy the role requirements
    """
    policy = policy or TolerancePolicy()
    services = services or Services()
    usable = _usable_orders(orders, case.orders)
    diagnostic = catalog.is_diagnostic(case, corrected)
    logger.info("Checking %s (%s): %d draws, seed %d", case.id, case.anchor, draws, seed)

    records: list[DrawRecord] = []
    for d in range(draws):
        rng = draw_rng(seed, d)
        order = usable[d % len(usable)]
        _, matrices = draw_roles(case.roles, order, rng)
        arguments = {k: complex(v) for k, v in draw_arguments(case.arguments, rng).items()}
        try:
            sides = case.sides(services, matrices, arguments, corrected)
        except SKIPPED_ERRORS as e:
            records.append(_skipped(d, seed, order, f"{type(e).__name__}: {e}"))
            continue
        if not sides.converged:
            warnings = sides.lhs.warnings + sides.rhs.warnings
            records.append(_skipped(d, seed, order, "unconverged: " + "; ".join(warnings[:2])))
            continue
        value, scale = residual(sides.lhs.value, sides.rhs.value)
        threshold = budget(_case_tolerance(case, order, policy), sides.error_estimate, scale, policy)
        records.append(
            DrawRecord(
                draw=d,
                seed=seed,
                order=order,
                residual=value,
                budget=threshold,
                passed=value <= threshold,
            )
        )
        logger.debug("%s draw %d: residual %.3e budget %.3e", case.id, d, value, threshold)

    report = IdentityReport.from_records(case.id, records, diagnostic=diagnostic)
    logger.info(
        "%s: max residual %.3e, mean %.3e, %d failures, %d skipped%s",
        case.id,
        report.max_residual,
        report.mean_residual,
        report.failures,
        report.skipped,
        " (diagnostic)" if diagnostic else "",
    )
    return report


def oracle_matrix(
    function_id: str,
    family: CommutingFamily,
    role_assignment: dict[str, str],
    args: dict[str, complex],
    options: dict[str, Any],
) -> np.ndarray:
    """P diag(oracle(lambda_1), ..., oracle(lambda_r)) P^-1 over the family's eigenvalues."""
    values = np.array([
        scalar_oracle(
            function_id,
            {role: family.members[member][i] for role, member in role_assignment.items()},
            args,
            options,
        )
        for i in range(family.order)
    ])
    P = family.basis
    return np.linalg.solve(P.T, (P * values[None, :]).T).T


def oracle_equivalence(
    function_id: str,
    family: CommutingFamily,
    role_assignment: dict[str, str] | None = None,
    args: dict[str, complex] | None = None,
    options: dict[str, Any] | None = None,
    services: Services | None = None,
    policy: TolerancePolicy | None = None,
    draw: int = 0,
) -> IdentityReport:
    """
    Compare a matrix evaluation with the conjugated scalar oracle.

    Args:
        function_id: Catalog function id
        family: Shared-eigenbasis family holding every role
        role_assignment: Role name -> family member name; identity by default
        args: Scalar arguments z, w, v

    Raises:
        CatalogError: If function_id is unknown
    """
    entry = catalog.get_function(function_id)
    policy = policy or TolerancePolicy(use_case_tolerance=False)
    services = services or Services()
    role_assignment = role_assignment or {name: name for name in entry.role_names()}
    args = args or {}
    options = {**entry.options, **(options or {})}
    seed = family.seed or 0
    matrices = {role: family.matrix(member) for role, member in role_assignment.items()}

    try:
        result: EvalReport = entry.evaluate(services, matrices, args, options)
        expected = oracle_matrix(function_id, family, role_assignment, args, options)
    except SKIPPED_ERRORS as e:
        record = _skipped(draw, seed, family.order, f"{type(e).__name__}: {e}")
        return IdentityReport.from_records(f"oracle:{function_id}", [record])
    if not result.converged:
        record = _skipped(draw, seed, family.order, "unconverged: " + "; ".join(result.warnings[:2]))
        return IdentityReport.from_records(f"oracle:{function_id}", [record])

    value, scale = residual(result.value, expected)
    threshold = budget(policy.residual_tol, result.error_estimate, scale, policy)
    record = DrawRecord(
        draw=draw,
        seed=seed,
        order=family.order,
        residual=value,
        budget=threshold,
        passed=value <= threshold,
    )
    return IdentityReport.from_records(f"oracle:{function_id}", [record])


def oracle_sweep(
    function_id: str,
    draws: int,
    seed: int = 0,
    orders: Sequence[int] = DEFAULT_ORDERS,
    services: Services | None = None,
    policy: TolerancePolicy | None = None,
) -> IdentityReport:
    """
    Oracle equivalence over random shared-basis draws of a catalog function.

    Raises:
        CatalogError: If function_id is unknown
        GenerationError: If a draw cannot satisfy the role requirements
    """
    entry = catalog.get_function(function_id)
    services = services or Services()
    records: list[DrawRecord] = []
    logger.info("Oracle sweep for %s (%s): %d draws", function_id, entry.anchor, draws)
    for d in range(draws):
        rng = draw_rng(seed, d)
        order = orders[d % len(orders)]
        family, _ = draw_roles(entry.roles, order, rng)
        family = family.model_copy(update={"seed": seed})
        args = {k: complex(v) for k, v in draw_arguments(entry.arguments, rng).items()}
        single = oracle_equivalence(function_id, family, args=args, services=services, policy=policy, draw=d)
        records.extend(single.records)
    report = IdentityReport.from_records(f"oracle:{function_id}", records)
    logger.info(
        "oracle:%s: max residual %.3e, %d failures, %d skipped",
        function_id,
        report.max_residual,
        report.failures,
        report.skipped,
    )
    return report


def run_cases(
    case_ids: Sequence[str],
    draws: int,
    seed: int = 0,
    policy: TolerancePolicy | None = None,
    orders: Sequence[int] = DEFAULT_ORDERS,
    corrected: bool = True,
    services: Services | None = None,
) -> list[IdentityReport]:
    """
    Check several cases; "all" expands to the full catalog.

    Raises:
        CatalogError: If a case id is unknown (checked before any draw runs)
    """
    ids = catalog.case_ids() if list(case_ids) == ["all"] else list(case_ids)
    cases = [catalog.get_case(case_id) for case_id in ids]
    services = services or Services()
    return [check_identity(case, draws, seed, policy, orders, corrected, services) for case in cases]


def failure_count(reports: Sequence[IdentityReport]) -> int:
    """Failures of non-diagnostic reports."""
    return sum(r.failures for r in reports if not r.diagnostic)


def suite_report(
    reports: Sequence[IdentityReport],
    seed: int,
    draws: int,
    orders: Sequence[int],
    corrected: bool,
) -> dict[str, Any]:
    """Deterministic JSON document for a verify run."""
    return {
        "provenance": get_provenance(),
        "seed": seed,
        "draws": draws,
        "orders": list(orders),
        "corrected": corrected,
        "failures": failure_count(reports),
        "cases": [r.to_json() for r in reports],
    }
