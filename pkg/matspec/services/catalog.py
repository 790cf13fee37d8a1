"""
Catalog of evaluable functions and identity cases.

Function entries are shared by the CLI `eval` command and the scalar-oracle
sweeps; identity cases turn each stated relation into a pair of
independently evaluated sides.
"""

import logging
from collections.abc import Callable
from typing import Any

import numpy as np

from matspec.exceptions import CatalogError
from matspec.schemas.catalog import FunctionEntry, IdentityCase, RoleSpec
from matspec.schemas.params import AppellParams, GammaBetaParams, HyperParams
from matspec.schemas.reports import EvalReport, SidesReport
from matspec.schemas.specs import QuadratureSpec, SeriesSpec, Tolerances
from matspec.services.gammabeta import GammaBetaService
from matspec.services.hyper import HyperService
from matspec.services.multivar import MultivarService
from matspec.services.matcalc import binomial_series, pochhammer, real_power
from matspec.utils import finite_diff

logger = logging.getLogger(__name__)

Matrices = dict[str, np.ndarray]
Arguments = dict[str, complex]

# Algebraically decaying sums stop at this term tolerance.
SUMMATION_TERM_TOL = 1e-9


class Services:
    """The three function services wired to one set of budgets."""

    def __init__(
        self,
        quadrature_spec: QuadratureSpec | None = None,
        series_spec: SeriesSpec | None = None,
        tolerances: Tolerances | None = None,
    ):
        self.gammabeta = GammaBetaService(quadrature_spec, series_spec, tolerances)
        self.hyper = HyperService(self.gammabeta)
        self.multivar = MultivarService(self.hyper)

    @classmethod
    def from_settings(cls, settings: Any) -> "Services":
        return cls(settings.quadrature_spec, settings.series_spec, settings.tolerances)


# Parameter builders


def _pick(model: type, matrices: Matrices) -> dict[str, np.ndarray]:
    return {name: value for name, value in matrices.items() if name in model.model_fields}


def gamma_params(m: Matrices) -> GammaBetaParams:
    return GammaBetaParams(**_pick(GammaBetaParams, m))


def hyper_params(m: Matrices, a: Arguments) -> HyperParams:
    return HyperParams(**_pick(HyperParams, m), z=a.get("z", 0j))


def appell_params(m: Matrices, a: Arguments) -> AppellParams:
    return AppellParams(**_pick(AppellParams, m), z=a.get("z", 0j), w=a.get("w", 0j), v=a.get("v", 0j))


# Role sets


def role(name: str, re: tuple[float, float] = (0.5, 2.0), **kwargs: Any) -> RoleSpec:
    return RoleSpec(name=name, re=re, **kwargs)


def kernel_roles(second: bool = False, y_zero: bool = False, equal: bool = False) -> list[RoleSpec]:
    """A, B (= A + offset) and Y; second adds the pair Aprime, Bprime."""
    roles = [
        role("A", (1.2, 2.0)),
        role("B", same_as="A") if equal else role("B", (0.5, 1.5), base="A", requirement="B - A positive stable"),
    ]
    if second:
        roles += [role("Aprime", (1.2, 2.0)), role("Bprime", (0.5, 1.5), base="Aprime")]
    if y_zero:
        roles.append(role("Y", zero=True))
    else:
        roles.append(role("Y", (0.1, 0.6), requirement="positive stable or zero"))
    return roles


def gauss_roles(a1: tuple[float, float] = (0.4, 1.2), gap: tuple[float, float] = (0.8, 1.6)) -> list[RoleSpec]:
    return [
        role("A1", a1),
        role("B1", (0.6, 1.5)),
        role("C1", gap, base="B1", requirement="C1 - B1 positive stable"),
    ]


def confluent_roles() -> list[RoleSpec]:
    return [role("B1", (0.6, 1.5)), role("C1", (0.8, 1.6), base="B1", requirement="C1 - B1 positive stable")]


def f1_roles(shifted: bool = False) -> list[RoleSpec]:
    box = (1.3, 1.9) if shifted else (0.6, 1.4)
    gap = (1.3, 1.9) if shifted else (0.8, 1.6)
    requirement = "C1 - A1 - I positive stable" if shifted else "C1 - A1 positive stable"
    return [
        role("A1", box),
        role("C1", gap, base="A1", requirement=requirement),
        role("B1", (0.3, 1.0)),
        role("B2", (0.3, 1.0)),
    ]


def f2_roles(shifted: bool = False) -> list[RoleSpec]:
    box = (1.3, 1.9) if shifted else (0.6, 1.4)
    gap = (1.3, 1.9) if shifted else (0.8, 1.6)
    return [
        role("A1", (0.4, 1.0)),
        role("B1", box),
        role("C1", gap, base="B1", requirement="C1 - B1 positive stable"),
        role("B2", (0.6, 1.4)),
        role("C2", (0.8, 1.6), base="B2", requirement="C2 - B2 positive stable"),
    ]


def beta_roles() -> list[RoleSpec]:
    return [role("X", (0.6, 2.0)), role("Z", (0.6, 2.0))]


def new_gamma_roles(equal: bool = False) -> list[RoleSpec]:
    return [
        role("A", (1.6, 2.4)),
        role("B", same_as="A") if equal else role("B", (0.5, 1.5), base="A", requirement="B - A positive stable"),
        role("X", (0.4, 1.0), requirement="X and A - X positive stable"),
        role("Y", (0.1, 0.6), requirement="positive stable or zero"),
    ]


SMALL_Z = {"z": (-0.5, 0.5)}
F1_ARGS = {"z": (-0.3, 0.3), "w": (-0.3, 0.3)}
F2_ARGS = {"z": (-0.25, 0.25), "w": (-0.25, 0.25)}
FD3_ARGS = {"z": (-0.3, 0.3), "w": (-0.3, 0.3), "v": (-0.3, 0.3)}


# Function entries

Evaluator = Callable[[Services, Matrices, Arguments, dict[str, Any]], EvalReport]


def _beta_matrix(s: Services, m: Matrices, a: Arguments, o: dict[str, Any]) -> EvalReport:
    return s.gammabeta.beta_matrix(m["A"], m["B"], form=o.get("form", "unit"))


def _beta_summation(s: Services, m: Matrices, a: Arguments, o: dict[str, Any]) -> EvalReport:
    series = s.gammabeta.series.model_copy(update={"term_tol": max(s.gammabeta.series.term_tol, SUMMATION_TERM_TOL)})
    return s.gammabeta.beta_ne_summation(gamma_params(m), series=series)


def _summation_roles() -> list[RoleSpec]:
    return kernel_roles() + [
        role("X", (0.8, 2.0)),
        role("Z", (-1.5, -0.5), requirement="I - Z positive stable"),
    ]


FUNCTIONS: list[FunctionEntry] = [
    FunctionEntry(
        id="real_power",
        anchor="t^A = exp(A ln t)",
        roles=[role("A", (-1.5, 1.5), requirement="any")],
        arguments={"t": (0.2, 3.0)},
        evaluate=lambda s, m, a, o: EvalReport.exact(real_power(a["t"].real, m["A"])),
    ),
    FunctionEntry(
        id="pochhammer",
        anchor="(A)_n",
        roles=[role("A", (-1.5, 2.5), requirement="any")],
        options={"n": 3},
        evaluate=lambda s, m, a, o: EvalReport.exact(pochhammer(m["A"], int(o["n"]))),
    ),
    FunctionEntry(
        id="binomial_series",
        anchor="(1 - z)^(-A)",
        roles=[role("A", (0.5, 2.0))],
        arguments=SMALL_Z,
        evaluate=lambda s, m, a, o: EvalReport.exact(binomial_series(a["z"], m["A"], s.gammabeta.series)),
    ),
    FunctionEntry(
        id="gamma_matrix",
        anchor="Eq. (1a1.4)",
        roles=[role("A", (0.6, 3.0))],
        evaluate=lambda s, m, a, o: s.gammabeta.gamma_matrix(m["A"]),
    ),
    FunctionEntry(
        id="gamma_reciprocal",
        anchor="Eq. (eq.07)",
        roles=[role("A", (-1.5, 3.0), requirement="any")],
        evaluate=lambda s, m, a, o: s.gammabeta.gamma_reciprocal_report(m["A"], o.get("n_shift")),
    ),
    FunctionEntry(
        id="pochhammer_via_gamma",
        anchor="Eqs. (c1eq.09)/(c1eq.010)",
        roles=[role("A", (0.5, 2.5))],
        options={"n": 3},
        evaluate=lambda s, m, a, o: s.gammabeta.pochhammer_via_gamma_report(m["A"], int(o["n"])),
    ),
    FunctionEntry(
        id="beta_matrix",
        anchor="Eqs. (1ca1.4)/(1ca1.5)",
        roles=[role("A", (0.6, 2.5)), role("B", (0.6, 2.5))],
        options={"form": "unit"},
        evaluate=_beta_matrix,
    ),
    FunctionEntry(
        id="gamma_extended",
        anchor="extended gamma",
        roles=[role("A", (0.6, 2.5)), role("X", (0.1, 1.0))],
        evaluate=lambda s, m, a, o: s.gammabeta.gamma_extended(m["A"], m["X"]),
    ),
    FunctionEntry(
        id="beta_extended",
        anchor="Eq. (xb1)",
        roles=[role("A", (0.8, 2.5)), role("B", (0.8, 2.5)), role("X", (0.05, 0.5))],
        evaluate=lambda s, m, a, o: s.gammabeta.beta_extended(m["A"], m["B"], m["X"]),
    ),
    FunctionEntry(
        id="gamma_new_extended",
        anchor="Eq. (3.1)",
        roles=new_gamma_roles(),
        evaluate=lambda s, m, a, o: s.gammabeta.gamma_new_extended(gamma_params(m)),
    ),
    FunctionEntry(
        id="gamma_new_extended_form2",
        anchor="Thm 3.1, Eq. (3.3)",
        roles=new_gamma_roles(),
        evaluate=lambda s, m, a, o: s.gammabeta.gamma_new_extended_form2(gamma_params(m)),
    ),
    FunctionEntry(
        id="beta_new_extended",
        anchor="Eq. (3.2)",
        roles=kernel_roles() + beta_roles(),
        evaluate=lambda s, m, a, o: s.gammabeta.beta_new_extended(gamma_params(m)),
    ),
    FunctionEntry(
        id="beta_new_extended_halfline",
        anchor="Thm 3.2, Eq. (e3.7)",
        roles=kernel_roles() + beta_roles(),
        evaluate=lambda s, m, a, o: s.gammabeta.beta_new_extended_halfline(gamma_params(m)),
    ),
    FunctionEntry(
        id="beta_ne_summation",
        anchor="Thm 3.4, Eq. (3.10)",
        roles=_summation_roles(),
        evaluate=_beta_summation,
    ),
    FunctionEntry(
        id="kummer_1f1",
        anchor="confluent 1F1",
        roles=[role("A", (0.5, 2.0)), role("B", (0.5, 1.5), base="A"), role("M", (-2.0, 2.0), requirement="any")],
        evaluate=lambda s, m, a, o: s.hyper.kummer_1f1(m["A"], m["B"], m["M"]),
    ),
    FunctionEntry(
        id="gauss_2f1",
        anchor="Eq. (52.9)",
        roles=gauss_roles(),
        arguments=SMALL_Z,
        evaluate=lambda s, m, a, o: s.hyper.gauss_2f1(m["A1"], m["B1"], m["C1"], a["z"]),
    ),
    FunctionEntry(
        id="eghmf",
        anchor="Eq. (eg1)",
        roles=gauss_roles() + [role("X", (0.05, 0.5))],
        arguments=SMALL_Z,
        evaluate=lambda s, m, a, o: s.hyper.eghmf(hyper_params(m, a)),
    ),
    FunctionEntry(
        id="ekhmf",
        anchor="Eq. (kh1)",
        roles=confluent_roles() + [role("X", (0.05, 0.5))],
        arguments={"z": (-1.0, 1.0)},
        evaluate=lambda s, m, a, o: s.hyper.ekhmf(hyper_params(m, a)),
    ),
    FunctionEntry(
        id="neghmf_series",
        anchor="Eq. (4.1)",
        roles=kernel_roles() + gauss_roles(),
        arguments=SMALL_Z,
        evaluate=lambda s, m, a, o: s.hyper.neghmf_series(hyper_params(m, a)),
    ),
    FunctionEntry(
        id="neghmf_integral",
        anchor="Thm 4.1, Eqs. (4.3)/(a4.4)",
        roles=kernel_roles() + gauss_roles(),
        arguments=SMALL_Z,
        options={"form": "unit"},
        evaluate=lambda s, m, a, o: s.hyper.neghmf_integral(hyper_params(m, a), form=o.get("form", "unit")),
    ),
    FunctionEntry(
        id="neghmf_at_one",
        anchor="Eq. (4.16)",
        roles=kernel_roles() + gauss_roles((0.3, 0.8), (1.8, 2.6)),
        evaluate=lambda s, m, a, o: s.hyper.neghmf_at_one(hyper_params(m, a)),
    ),
    FunctionEntry(
        id="neghmf_derivative",
        anchor="Thm 4.3, Eq. (4.7)",
        roles=kernel_roles() + gauss_roles(),
        arguments=SMALL_Z,
        options={"n": 1},
        evaluate=lambda s, m, a, o: s.hyper.neghmf_derivative(hyper_params(m, a), int(o["n"])),
    ),
    FunctionEntry(
        id="neghmf_transform",
        anchor="Thm 4.5, Eqs. (4.11)/(e4.11)/(a4.11)",
        roles=kernel_roles() + gauss_roles(),
        arguments={"z": (-0.45, 0.45)},
        options={"which": "pfaff_z_over_zm1"},
        evaluate=lambda s, m, a, o: s.hyper.neghmf_transform(hyper_params(m, a), o.get("which", "pfaff_z_over_zm1")),
    ),
    FunctionEntry(
        id="nechmf_series",
        anchor="Eq. (4.2)",
        roles=kernel_roles() + confluent_roles(),
        arguments={"z": (-1.5, 1.5)},
        evaluate=lambda s, m, a, o: s.hyper.nechmf_series(hyper_params(m, a)),
    ),
    FunctionEntry(
        id="nechmf_integral",
        anchor="Thm 4.2, Eqs. (4.5)/(4.6)",
        roles=kernel_roles() + confluent_roles(),
        arguments={"z": (-1.5, 1.5)},
        options={"form": "direct"},
        evaluate=lambda s, m, a, o: s.hyper.nechmf_integral(hyper_params(m, a), form=o.get("form", "direct")),
    ),
    FunctionEntry(
        id="nechmf_derivative",
        anchor="Thm 4.4, Eq. (4.10)",
        roles=kernel_roles() + confluent_roles(),
        arguments={"z": (-1.5, 1.5)},
        options={"n": 1},
        evaluate=lambda s, m, a, o: s.hyper.nechmf_derivative(hyper_params(m, a), int(o["n"])),
    ),
    FunctionEntry(
        id="appell_f1_series",
        anchor="Eq. (2eq1)",
        roles=kernel_roles() + f1_roles(),
        arguments=F1_ARGS,
        evaluate=lambda s, m, a, o: s.multivar.appell_f1_series(appell_params(m, a)),
    ),
    FunctionEntry(
        id="appell_f1_integral",
        anchor="Thm 5.1, Eq. (i1)",
        roles=kernel_roles() + f1_roles(),
        arguments=F1_ARGS,
        evaluate=lambda s, m, a, o: s.multivar.appell_f1_integral(appell_params(m, a)),
    ),
    FunctionEntry(
        id="f1_derivative_rhs",
        anchor="Thm 5.4, Eq. (5.1)",
        roles=kernel_roles() + f1_roles(),
        arguments=F1_ARGS,
        options={"m": 1, "n": 1},
        evaluate=lambda s, m, a, o: s.multivar.f1_derivative_rhs(appell_params(m, a), int(o["m"]), int(o["n"])),
    ),
    FunctionEntry(
        id="appell_f2_series",
        anchor="Eq. (2eq2)",
        roles=kernel_roles(second=True) + f2_roles(),
        arguments=F2_ARGS,
        evaluate=lambda s, m, a, o: s.multivar.appell_f2_series(appell_params(m, a)),
    ),
    FunctionEntry(
        id="appell_f2_integral",
        anchor="Thm 5.2, Eq. (s33)",
        roles=kernel_roles(second=True) + f2_roles(),
        arguments=F2_ARGS,
        evaluate=lambda s, m, a, o: s.multivar.appell_f2_integral(appell_params(m, a)),
    ),
    FunctionEntry(
        id="f2_derivative_rhs",
        anchor="Thm 5.5, Eq. (5.4)",
        roles=kernel_roles(second=True) + f2_roles(),
        arguments=F2_ARGS,
        options={"m": 1, "n": 1, "corrected": True},
        evaluate=lambda s, m, a, o: s.multivar.f2_derivative_rhs(
            appell_params(m, a), int(o["m"]), int(o["n"]), corrected=bool(o.get("corrected", True))
        ),
    ),
    FunctionEntry(
        id="lauricella_fd3_series",
        anchor="Eq. (2eq3)",
        roles=kernel_roles() + f1_roles() + [role("B3", (0.3, 1.0))],
        arguments=FD3_ARGS,
        evaluate=lambda s, m, a, o: s.multivar.lauricella_fd3_series(appell_params(m, a)),
    ),
    FunctionEntry(
        id="lauricella_fd3_integral",
        anchor="Thm 5.3, Eq. (3.12)",
        roles=kernel_roles() + f1_roles() + [role("B3", (0.3, 1.0))],
        arguments=FD3_ARGS,
        evaluate=lambda s, m, a, o: s.multivar.lauricella_fd3_integral(appell_params(m, a)),
    ),
    FunctionEntry(
        id="fd3_derivative_rhs",
        anchor="Thm 5.6, Eq. (5.5)",
        roles=kernel_roles() + f1_roles() + [role("B3", (0.3, 1.0))],
        arguments=FD3_ARGS,
        options={"m": 1, "n": 0, "q": 1, "corrected": True},
        evaluate=lambda s, m, a, o: s.multivar.fd3_derivative_rhs(
            appell_params(m, a), int(o["m"]), int(o["n"]), int(o["q"]), corrected=bool(o.get("corrected", True))
        ),
    ),
]


# Identity sides

Sides = Callable[[Services, Matrices, Arguments, bool], SidesReport]


def _sides(lhs: EvalReport, rhs: EvalReport) -> SidesReport:
    return SidesReport(lhs=lhs, rhs=rhs)


def finite_difference(
    f: Callable[..., EvalReport], point: tuple[float, ...], orders: tuple[int, ...]
) -> EvalReport:
    """Mixed partial derivative of a report-valued function, with error scaled by the stencil."""
    errors: list[float] = []
    converged: list[bool] = []
    warnings: list[str] = []

    def value(*x: complex) -> np.ndarray:
        report = f(*x)
        errors.append(report.error_estimate)
        converged.append(report.converged)
        warnings.extend(w for w in report.warnings if w not in warnings)
        return np.asarray(report.value)

    step = finite_diff.default_step(max(abs(p) for p in point))
    result = finite_diff.partial_derivative(value, point, orders, step)
    amplification = (6.0 / step) ** sum(orders)
    return EvalReport(
        value=result,
        error_estimate=max(errors) * amplification,
        converged=all(converged),
        warnings=warnings,
    )


def _eye(m: Matrices) -> np.ndarray:
    return np.eye(next(iter(m.values())).shape[0])


# gamma and beta


def _beta_unit_halfline(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    return _sides(s.gammabeta.beta_matrix(m["A"], m["B"], "unit"), s.gammabeta.beta_matrix(m["A"], m["B"], "halfline"))


def _beta_gamma_product(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    return _sides(
        s.gammabeta.beta_matrix(m["A"], m["B"], "unit"), s.gammabeta.beta_matrix(m["A"], m["B"], "gamma_product")
    )


def _pochhammer_ratio(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    return _sides(EvalReport.exact(pochhammer(m["A"], 3)), s.gammabeta.pochhammer_via_gamma_report(m["A"], 3))


def _reciprocal_shift(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    return _sides(s.gammabeta.gamma_reciprocal_report(m["A"], 4), s.gammabeta.gamma_reciprocal_report(m["A"], 6))


def _new_gamma_equal_kernel(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    return _sides(s.gammabeta.gamma_new_extended(gamma_params(m)), s.gammabeta.gamma_extended(m["X"], m["Y"]))


def _new_beta_y_zero(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    return _sides(s.gammabeta.beta_new_extended(gamma_params(m)), s.gammabeta.beta_matrix(m["X"], m["Z"]))


def _new_beta_equal_kernel(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    return _sides(
        s.gammabeta.beta_new_extended(gamma_params(m)), s.gammabeta.beta_extended(m["X"], m["Z"], m["Y"])
    )


def _new_gamma_forms(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = gamma_params(m)
    return _sides(s.gammabeta.gamma_new_extended(p), s.gammabeta.gamma_new_extended_form2(p))


def _new_beta_forms(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = gamma_params(m)
    return _sides(s.gammabeta.beta_new_extended(p), s.gammabeta.beta_new_extended_halfline(p))


def _beta_recurrence(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = gamma_params(m)
    eye = _eye(m)
    lhs = EvalReport.combination([
        (1.0, s.gammabeta.beta_new_extended(p.replace(X=m["X"] + eye))),
        (1.0, s.gammabeta.beta_new_extended(p.replace(Z=m["Z"] + eye))),
    ])
    return _sides(lhs, s.gammabeta.beta_new_extended(p))


def _beta_summation_sides(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = gamma_params(m)
    direct = s.gammabeta.beta_new_extended(p.replace(Z=_eye(m) - m["Z"]))
    return _sides(direct, _beta_summation(s, m, a, {}))


def _beta_symmetry(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = gamma_params(m)
    return _sides(s.gammabeta.beta_new_extended(p), s.gammabeta.beta_new_extended(p.replace(X=m["Z"], Z=m["X"])))


def _xb1_factorization(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    return s.gammabeta.beta_extended_factorization_sides(m["A"], m["B"], m["X"])


# one variable


def _neghmf_y_zero(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    return _sides(s.hyper.neghmf_series(hyper_params(m, a)), s.hyper.gauss_2f1(m["A1"], m["B1"], m["C1"], a["z"]))


def _nechmf_y_zero(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    argument = a["z"] * _eye(m)
    return _sides(s.hyper.nechmf_series(hyper_params(m, a)), s.hyper.kummer_1f1(m["B1"], m["C1"], argument))


def _eghmf_x_zero(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    return _sides(s.hyper.eghmf(hyper_params(m, a)), s.hyper.gauss_2f1(m["A1"], m["B1"], m["C1"], a["z"]))


def _ekhmf_x_zero(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    argument = a["z"] * _eye(m)
    return _sides(s.hyper.ekhmf(hyper_params(m, a)), s.hyper.kummer_1f1(m["B1"], m["C1"], argument))


def _neghmf_equal_kernel(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = hyper_params(m, a)
    return _sides(s.hyper.neghmf_series(p), s.hyper.eghmf(p.replace(X=m["Y"])))


def _nechmf_equal_kernel(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = hyper_params(m, a)
    return _sides(s.hyper.nechmf_series(p), s.hyper.ekhmf(p.replace(X=m["Y"])))


def _neghmf_form(form: str) -> Sides:
    def sides(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
        p = hyper_params(m, a)
        return _sides(s.hyper.neghmf_series(p), s.hyper.neghmf_integral(p, form=form))

    return sides


def _nechmf_form(form: str) -> Sides:
    def sides(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
        p = hyper_params(m, a)
        return _sides(s.hyper.nechmf_series(p), s.hyper.nechmf_integral(p, form=form))

    return sides


def _neghmf_derivative(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = hyper_params(m, a)
    lhs = finite_difference(lambda z: s.hyper.neghmf_series(p.replace(z=z)), (a["z"].real,), (1,))
    return _sides(lhs, s.hyper.neghmf_derivative(p, 1))


def _nechmf_derivative(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = hyper_params(m, a)
    lhs = finite_difference(lambda z: s.hyper.nechmf_series(p.replace(z=z)), (a["z"].real,), (1,))
    return _sides(lhs, s.hyper.nechmf_derivative(p, 1))


def _transform(which: str, printed: bool = False) -> Sides:
    def sides(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
        return s.hyper.neghmf_transform_sides(hyper_params(m, a), which, printed=printed)

    return sides


def _neghmf_at_one(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = hyper_params(m, {"z": 1.0})
    return _sides(s.hyper.neghmf_at_one(p), s.hyper.neghmf_integral(p, form="unit"))


def _kummer_first(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    return s.hyper.kummer_first_theorem(hyper_params(m, a))


def _kernel_566(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    A, B, X = m["A"], m["B"], m["M"]
    eye = _eye(m)
    k = s.hyper.kummer_1f1
    lhs = EvalReport.product(EvalReport.exact(B - A - eye), k(A, B, X))
    rhs = EvalReport.combination([
        (1.0, EvalReport.product(EvalReport.exact(B - eye), k(A, B - eye, X))),
        (-1.0, EvalReport.product(EvalReport.exact(A), k(A + eye, B, X))),
    ])
    return _sides(lhs, rhs)


def _kernel_58(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    A, B, X = m["A"], m["B"], m["M"]
    eye = _eye(m)
    k = s.hyper.kummer_1f1
    lhs = EvalReport.combination([
        (1.0, EvalReport.product(EvalReport.exact(B), k(A, B, X))),
        (-1.0, EvalReport.product(EvalReport.exact(B), k(A - eye, B, X))),
    ])
    return _sides(lhs, EvalReport.product(EvalReport.exact(X), k(A, B + eye, X)))


# several variables


def _f1_forms(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = appell_params(m, a)
    return _sides(s.multivar.appell_f1_series(p), s.multivar.appell_f1_integral(p))


def _f2_forms(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = appell_params(m, a)
    return _sides(s.multivar.appell_f2_series(p), s.multivar.appell_f2_integral(p))


def _fd3_forms(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = appell_params(m, a)
    return _sides(s.multivar.lauricella_fd3_series(p), s.multivar.lauricella_fd3_integral(p))


def _f1_symmetry(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = appell_params(m, a)
    swapped = p.replace(B1=m["B2"], B2=m["B1"], z=a["w"], w=a["z"])
    return _sides(s.multivar.appell_f1_series(p), s.multivar.appell_f1_series(swapped))


def _fd3_to_f1(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = appell_params(m, {**a, "v": 0.0})
    return _sides(s.multivar.lauricella_fd3_series(p), s.multivar.appell_f1_series(p))


def _f1_to_neghmf(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = appell_params(m, {"z": a["z"], "w": 0.0})
    swapped = HyperParams(A=m["A"], B=m["B"], Y=m["Y"], A1=m["B1"], B1=m["A1"], C1=m["C1"], z=a["z"])
    return _sides(s.multivar.appell_f1_series(p), s.hyper.neghmf_series(swapped))


def _f2_to_neghmf(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = appell_params(m, {"z": a["z"], "w": 0.0})
    gb = s.gammabeta
    one_variable = s.hyper.neghmf_series(
        HyperParams(A=m["A"], B=m["B"], Y=m["Y"], A1=m["A1"], B1=m["B1"], C1=m["C1"], z=a["z"])
    )
    second = GammaBetaParams(A=m["Aprime"], B=m["Bprime"], Y=m["Y"], X=m["B2"], Z=m["C2"] - m["B2"])
    rhs = EvalReport.product(
        one_variable, gb.beta_new_extended(second), s.hyper.normalizer(m["B2"], m["C2"])
    )
    return _sides(s.multivar.appell_f2_series(p), rhs)


def _f1_derivative(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    p = appell_params(m, a)
    lhs = finite_difference(
        lambda z, w: s.multivar.appell_f1_series(p.replace(z=z, w=w)), (a["z"].real, a["w"].real), (1, 1)
    )
    return _sides(lhs, s.multivar.f1_derivative_rhs(p, 1, 1))


def _f2_derivative(corrected: bool) -> Sides:
    def sides(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
        p = appell_params(m, a)
        lhs = finite_difference(
            lambda z, w: s.multivar.appell_f2_series(p.replace(z=z, w=w)), (a["z"].real, a["w"].real), (1, 1)
        )
        return _sides(lhs, s.multivar.f2_derivative_rhs(p, 1, 1, corrected=corrected))

    return sides


def _fd3_derivative(corrected: bool) -> Sides:
    def sides(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
        p = appell_params(m, a)
        lhs = finite_difference(
            lambda z, w, v: s.multivar.lauricella_fd3_series(p.replace(z=z, w=w, v=v)),
            (a["z"].real, a["w"].real, a["v"].real),
            (1, 0, 1),
        )
        return _sides(lhs, s.multivar.fd3_derivative_rhs(p, 1, 0, 1, corrected=corrected))

    return sides


def _recurrence(function: str, which: str, corrected: bool) -> Sides:
    def sides(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
        method = getattr(s.multivar, f"{function}_recurrence_sides")
        return method(appell_params(m, a), which, corrected=corrected)

    return sides


def _shell_reindexing(s: Services, m: Matrices, a: Arguments, c: bool) -> SidesReport:
    """sum_N (A1)_N (z + w)^N / N! against sum_{m+n=N} (A1)_(m+n) z^m w^n / (m! n!), N <= 20."""
    A1 = m["A1"]
    z, w = a["z"], a["w"]
    lhs = np.zeros_like(A1, dtype=np.complex128)
    rhs = np.zeros_like(A1, dtype=np.complex128)
    factorial = [1.0]
    for k in range(1, 21):
        factorial.append(factorial[-1] * k)
    for N in range(21):
        rising = pochhammer(A1, N)
        lhs = lhs + rising * (z + w) ** N / factorial[N]
        shell = sum(z**i * w ** (N - i) / (factorial[i] * factorial[N - i]) for i in range(N + 1))
        rhs = rhs + rising * shell
    return _sides(EvalReport.exact(lhs), EvalReport.exact(rhs))


FD_TOL = 1e-4
FD_MATRIX_TOL = 1e-3
FORM_TOL = 1e-7

CASES: list[IdentityCase] = [
    IdentityCase(
        id="beta-forms-unit-halfline",
        anchor="Eqs. (1ca1.4)/(1ca1.5)",
        title="Beta matrix function: unit-interval and half-line integrals agree",
        roles=[role("A", (0.6, 2.5)), role("B", (0.6, 2.5))],
        tolerance=1e-8,
        sides=_beta_unit_halfline,
    ),
    IdentityCase(
        id="beta-forms-gamma-product",
        anchor="Eqs. (1ca1.4)/(1a1.4)",
        title="Beta matrix function equals Gamma(A) Gamma(B) Gamma^-1(A + B)",
        roles=[role("A", (0.6, 2.5)), role("B", (0.6, 2.5))],
        tolerance=1e-8,
        sides=_beta_gamma_product,
    ),
    IdentityCase(
        id="pochhammer-gamma-ratio",
        anchor="Eqs. (c1eq.09)/(c1eq.010)",
        title="(A)_3 equals Gamma(A + 3I) Gamma^-1(A)",
        roles=[role("A", (0.5, 2.5))],
        tolerance=1e-8,
        sides=_pochhammer_ratio,
    ),
    IdentityCase(
        id="reciprocal-gamma-shift",
        anchor="Eq. (eq.07)",
        title="Reciprocal gamma is independent of the shift length",
        roles=[role("A", (-1.5, 2.5), requirement="any")],
        tolerance=1e-8,
        sides=_reciprocal_shift,
    ),
    IdentityCase(
        id="new-gamma-reduction-a-eq-b",
        anchor="Eq. (3.1)",
        title="Gamma_Y^(A,A)(X) reduces to the extended gamma Gamma_Y(X)",
        roles=new_gamma_roles(equal=True),
        tolerance=FORM_TOL,
        sides=_new_gamma_equal_kernel,
    ),
    IdentityCase(
        id="new-beta-reduction-y-zero",
        anchor="Eq. (3.2)",
        title="B_0^(A,B)(X, Z) reduces to the beta matrix function",
        roles=kernel_roles(y_zero=True) + beta_roles(),
        tolerance=1e-8,
        sides=_new_beta_y_zero,
    ),
    IdentityCase(
        id="new-beta-reduction-a-eq-b",
        anchor="Eqs. (3.2)/(xb1)",
        title="B_Y^(A,A)(X, Z) reduces to the extended beta B(X, Z; Y)",
        roles=kernel_roles(equal=True) + beta_roles(),
        tolerance=FORM_TOL,
        sides=_new_beta_equal_kernel,
    ),
    IdentityCase(
        id="new-gamma-forms-3.3",
        anchor="Thm 3.1, Eq. (3.3)",
        title="New extended gamma: direct integral against the beta-weighted extended gamma",
        roles=new_gamma_roles(),
        tolerance=FORM_TOL,
        sides=_new_gamma_forms,
    ),
    IdentityCase(
        id="new-beta-forms-e3.7",
        anchor="Thm 3.2, Eq. (e3.7)",
        title="New extended beta: unit-interval and half-line integrals agree",
        roles=kernel_roles() + beta_roles(),
        tolerance=FORM_TOL,
        sides=_new_beta_forms,
    ),
    IdentityCase(
        id="beta-recurrence-3.7",
        anchor="Thm 3.3, Eq. (3.7)",
        title="B_Y(X + I, Z) + B_Y(X, Z + I) = B_Y(X, Z)",
        roles=kernel_roles() + beta_roles(),
        sides=_beta_recurrence,
    ),
    IdentityCase(
        id="beta-summation-3.10",
        anchor="Thm 3.4, Eq. (3.10)",
        title="B_Y(X, I - Z) as a sum of B_Y(X + nI, I) (Z)_n / n!",
        roles=_summation_roles(),
        tolerance=1e-5,
        sides=_beta_summation_sides,
    ),
    IdentityCase(
        id="beta-symmetry",
        anchor="Eq. (3.2)",
        title="B_Y^(A,B)(X, Z) = B_Y^(A,B)(Z, X) for commuting X, Z",
        roles=kernel_roles() + beta_roles(),
        tolerance=FORM_TOL,
        sides=_beta_symmetry,
    ),
    IdentityCase(
        id="xb1-factorization-diagnostic",
        anchor="Eq. (xb1)",
        title="B(A, B; X) against Gamma_X(A) Gamma_X(B) Gamma_X^-1(A + B); differs in general",
        roles=[role("A", (0.8, 2.5)), role("B", (0.8, 2.5)), role("X", (0.05, 0.5))],
        diagnostic=True,
        sides=_xb1_factorization,
    ),
    IdentityCase(
        id="noncommuting-beta-symmetry-diagnostic",
        anchor="Eq. (3.2)",
        title="Beta symmetry with X and Z drawn in separate eigenbases",
        roles=kernel_roles() + [role("X", (0.6, 2.0), independent=True), role("Z", (0.6, 2.0), independent=True)],
        diagnostic=True,
        orders=(2,),
        sides=_beta_symmetry,
    ),
    IdentityCase(
        id="noncommuting-pfaff-diagnostic",
        anchor="Thm 4.5, Eq. (4.11)",
        title="Pfaff transformation with B1 outside the shared eigenbasis",
        roles=kernel_roles() + [
            role("A1", (0.4, 1.2)),
            role("B1", (0.6, 1.2), independent=True),
            role("C1", (3.0, 4.0)),
        ],
        arguments={"z": (-0.45, 0.45)},
        diagnostic=True,
        orders=(2,),
        sides=_transform("pfaff_z_over_zm1"),
    ),
    IdentityCase(
        id="neghmf-reduction-2f1",
        anchor="Eqs. (4.1)/(52.9)",
        title="NEGHMF with Y = 0 reduces to 2F1",
        roles=kernel_roles(y_zero=True) + gauss_roles(),
        arguments=SMALL_Z,
        tolerance=1e-8,
        sides=_neghmf_y_zero,
    ),
    IdentityCase(
        id="nechmf-reduction-1f1",
        anchor="Eq. (4.2)",
        title="NECHMF with Y = 0 reduces to 1F1(B1; C1; zI)",
        roles=kernel_roles(y_zero=True) + confluent_roles(),
        arguments={"z": (-1.5, 1.5)},
        tolerance=1e-8,
        sides=_nechmf_y_zero,
    ),
    IdentityCase(
        id="eghmf-reduction-2f1",
        anchor="Eq. (eg1)",
        title="EGHMF with X = 0 reduces to 2F1",
        roles=gauss_roles() + [role("X", zero=True)],
        arguments=SMALL_Z,
        tolerance=1e-8,
        sides=_eghmf_x_zero,
    ),
    IdentityCase(
        id="ekhmf-reduction-1f1",
        anchor="Eq. (kh1)",
        title="EKHMF with X = 0 reduces to 1F1",
        roles=confluent_roles() + [role("X", zero=True)],
        arguments={"z": (-1.0, 1.0)},
        tolerance=1e-8,
        sides=_ekhmf_x_zero,
    ),
    IdentityCase(
        id="neghmf-reduction-eghmf",
        anchor="Eqs. (4.1)/(eg1)",
        title="NEGHMF with A = B equals EGHMF with X = Y",
        roles=kernel_roles(equal=True) + gauss_roles(),
        arguments=SMALL_Z,
        tolerance=FORM_TOL,
        sides=_neghmf_equal_kernel,
    ),
    IdentityCase(
        id="nechmf-reduction-ekhmf",
        anchor="Eqs. (4.2)/(kh1)",
        title="NECHMF with A = B equals EKHMF with X = Y",
        roles=kernel_roles(equal=True) + confluent_roles(),
        arguments={"z": (-1.0, 1.0)},
        tolerance=FORM_TOL,
        sides=_nechmf_equal_kernel,
    ),
    IdentityCase(
        id="neghmf-forms-4.3",
        anchor="Thm 4.1, Eq. (4.3)",
        title="NEGHMF series against its unit-interval integral",
        roles=kernel_roles() + gauss_roles(),
        arguments=SMALL_Z,
        tolerance=FORM_TOL,
        sides=_neghmf_form("unit"),
    ),
    IdentityCase(
        id="neghmf-forms-a4.4",
        anchor="Thm 4.1, Eq. (a4.4)",
        title="NEGHMF series against its half-line integral",
        roles=kernel_roles() + gauss_roles(),
        arguments=SMALL_Z,
        tolerance=FORM_TOL,
        sides=_neghmf_form("halfline"),
    ),
    IdentityCase(
        id="nechmf-forms-4.5",
        anchor="Thm 4.2, Eq. (4.5)",
        title="NECHMF series against its direct integral",
        roles=kernel_roles() + confluent_roles(),
        arguments={"z": (-1.5, 1.5)},
        tolerance=FORM_TOL,
        sides=_nechmf_form("direct"),
    ),
    IdentityCase(
        id="nechmf-forms-4.6",
        anchor="Thm 4.2, Eq. (4.6)",
        title="NECHMF series against its reflected integral",
        roles=kernel_roles() + confluent_roles(),
        arguments={"z": (-1.5, 1.5)},
        tolerance=FORM_TOL,
        sides=_nechmf_form("reflected"),
    ),
    IdentityCase(
        id="neghmf-derivative-4.7",
        anchor="Thm 4.3, Eq. (4.7)",
        title="First z-derivative of NEGHMF against finite differences",
        roles=kernel_roles() + gauss_roles(),
        arguments={"z": (-0.4, 0.4)},
        tolerance=FD_TOL,
        matrix_tolerance=FD_MATRIX_TOL,
        sides=_neghmf_derivative,
    ),
    IdentityCase(
        id="nechmf-derivative-4.10",
        anchor="Thm 4.4, Eq. (4.10)",
        title="First z-derivative of NECHMF against finite differences",
        roles=kernel_roles() + confluent_roles(),
        arguments={"z": (-1.0, 1.0)},
        tolerance=FD_TOL,
        matrix_tolerance=FD_MATRIX_TOL,
        sides=_nechmf_derivative,
    ),
    IdentityCase(
        id="pfaff-4.11",
        anchor="Thm 4.5, Eq. (4.11)",
        title="Pfaff transformation z -> z/(z - 1)",
        roles=kernel_roles() + gauss_roles(),
        arguments={"z": (-0.45, 0.45)},
        sides=_transform("pfaff_z_over_zm1"),
    ),
    IdentityCase(
        id="euler-e4.11",
        anchor="Thm 4.5, Eq. (e4.11)",
        title="Transformation to 1 - z with left argument 1 - 1/z",
        roles=kernel_roles() + gauss_roles(),
        arguments={"z": (0.6, 0.9)},
        corrected_variant=True,
        sides=_transform("euler_one_minus_z"),
    ),
    IdentityCase(
        id="euler-e4.11-printed",
        anchor="Thm 4.5, Eq. (e4.11)",
        title="Transformation to 1 - z as printed, left argument z",
        roles=kernel_roles() + gauss_roles(),
        arguments={"z": (0.6, 0.9)},
        corrected_variant=False,
        sides=_transform("euler_one_minus_z", printed=True),
    ),
    IdentityCase(
        id="z-over-1pz-a4.11",
        anchor="Thm 4.5, Eq. (a4.11)",
        title="Transformation with left argument z/(1 + z)",
        roles=kernel_roles() + gauss_roles(),
        arguments={"z": (-0.45, 0.45)},
        sides=_transform("z_over_1pz"),
    ),
    IdentityCase(
        id="neghmf-at-one-4.16",
        anchor="Eq. (4.16)",
        title="NEGHMF at z = 1 against the unit integral",
        roles=kernel_roles() + gauss_roles((0.3, 0.8), (1.8, 2.6)),
        tolerance=1e-5,
        sides=_neghmf_at_one,
    ),
    IdentityCase(
        id="kummer-first-theorem",
        anchor="Thm 4.6",
        title="1F1^(A,B;Y)(B1; C1; z) = e^z 1F1^(A,B;Y)(C1 - B1; C1; -z)",
        roles=kernel_roles() + confluent_roles(),
        arguments={"z": (-1.5, 1.5)},
        tolerance=1e-5,
        sides=_kummer_first,
    ),
    IdentityCase(
        id="kernel-contiguous-5.66",
        anchor="Thm 5.7 (proof)",
        title="(B - (A + I)) 1F1(A; B; X) = (B - I) 1F1(A; B - I; X) - A 1F1(A + I; B; X)",
        roles=[role("A", (0.5, 2.0)), role("B", (1.2, 2.0), base="A"), role("M", (-2.0, 2.0), requirement="any")],
        tolerance=1e-8,
        sides=_kernel_566,
    ),
    IdentityCase(
        id="kernel-contiguous-5.8",
        anchor="Eq. (5.8)",
        title="B 1F1(A; B; X) - B 1F1(A - I; B; X) = X 1F1(A; B + I; X)",
        roles=[role("A", (0.5, 2.0)), role("B", (1.2, 2.0), base="A"), role("M", (-2.0, 2.0), requirement="any")],
        tolerance=1e-8,
        sides=_kernel_58,
    ),
    IdentityCase(
        id="f1-forms-i1",
        anchor="Thm 5.1, Eq. (i1)",
        title="Appell F1 double series against its single integral",
        roles=kernel_roles() + f1_roles(),
        arguments=F1_ARGS,
        tolerance=FORM_TOL,
        sides=_f1_forms,
    ),
    IdentityCase(
        id="f2-forms-s33",
        anchor="Thm 5.2, Eq. (s33)",
        title="Appell F2 double series against its double integral",
        roles=kernel_roles(second=True) + f2_roles(),
        arguments=F2_ARGS,
        tolerance=FORM_TOL,
        sides=_f2_forms,
    ),
    IdentityCase(
        id="fd3-forms-3.12",
        anchor="Thm 5.3, Eq. (3.12)",
        title="Lauricella F_D triple series against its single integral",
        roles=kernel_roles() + f1_roles() + [role("B3", (0.3, 1.0))],
        arguments=FD3_ARGS,
        tolerance=FORM_TOL,
        sides=_fd3_forms,
    ),
    IdentityCase(
        id="f1-symmetry",
        anchor="Eq. (2eq1)",
        title="F1 is symmetric under (B1, z) <-> (B2, w)",
        roles=kernel_roles() + f1_roles(),
        arguments=F1_ARGS,
        tolerance=1e-10,
        sides=_f1_symmetry,
    ),
    IdentityCase(
        id="fd3-reduction-f1",
        anchor="Eqs. (2eq3)/(2eq1)",
        title="F_D with v = 0 reduces to F1",
        roles=kernel_roles() + f1_roles() + [role("B3", (0.3, 1.0))],
        arguments=F1_ARGS,
        tolerance=1e-10,
        sides=_fd3_to_f1,
    ),
    IdentityCase(
        id="f1-reduction-neghmf",
        anchor="Eqs. (2eq1)/(4.1)",
        title="F1 with w = 0 equals NEGHMF with the roles of A1 and B1 exchanged",
        roles=kernel_roles() + f1_roles(),
        arguments={"z": (-0.3, 0.3)},
        tolerance=1e-10,
        sides=_f1_to_neghmf,
    ),
    IdentityCase(
        id="f2-reduction-neghmf",
        anchor="Eqs. (2eq2)/(4.1)",
        title="F2 with w = 0 equals NEGHMF times the second beta ratio",
        roles=kernel_roles(second=True) + f2_roles(),
        arguments={"z": (-0.3, 0.3)},
        tolerance=1e-9,
        sides=_f2_to_neghmf,
    ),
    IdentityCase(
        id="f1-derivative-5.1",
        anchor="Thm 5.4, Eq. (5.1)",
        title="Mixed derivative d2F1/dzdw against finite differences",
        roles=kernel_roles() + f1_roles(),
        arguments=F1_ARGS,
        tolerance=FD_TOL,
        matrix_tolerance=FD_MATRIX_TOL,
        sides=_f1_derivative,
    ),
    IdentityCase(
        id="f2-derivative-5.4",
        anchor="Thm 5.5, Eq. (5.4)",
        title="Mixed derivative of F2 with trailing factor (B1)_m (C1)^-1_m (B2)_n (C2)^-1_n",
        roles=kernel_roles(second=True) + f2_roles(),
        arguments=F2_ARGS,
        corrected_variant=True,
        tolerance=FD_TOL,
        matrix_tolerance=FD_MATRIX_TOL,
        sides=_f2_derivative(True),
    ),
    IdentityCase(
        id="f2-derivative-5.4-printed",
        anchor="Thm 5.5, Eq. (5.4)",
        title="Mixed derivative of F2 with the printed trailing factor (B1)_m (B2)_n (C1)^-1_(m+n)",
        roles=kernel_roles(second=True) + f2_roles(),
        arguments=F2_ARGS,
        corrected_variant=False,
        tolerance=FD_TOL,
        matrix_tolerance=FD_MATRIX_TOL,
        sides=_f2_derivative(False),
    ),
    IdentityCase(
        id="fd3-derivative-5.5",
        anchor="Thm 5.6, Eq. (5.5)",
        title="Mixed derivative of F_D with (A1)_s (C1)^-1_s and (B3)_q",
        roles=kernel_roles() + f1_roles() + [role("B3", (0.3, 1.0))],
        arguments=FD3_ARGS,
        corrected_variant=True,
        tolerance=FD_TOL,
        matrix_tolerance=FD_MATRIX_TOL,
        sides=_fd3_derivative(True),
    ),
    IdentityCase(
        id="fd3-derivative-5.5-printed",
        anchor="Thm 5.6, Eq. (5.5)",
        title="Mixed derivative of F_D with the printed (C1)_s and (B3)^-1_q",
        roles=kernel_roles() + f1_roles() + [role("B3", (0.3, 1.0))],
        arguments=FD3_ARGS,
        corrected_variant=False,
        tolerance=FD_TOL,
        matrix_tolerance=FD_MATRIX_TOL,
        sides=_fd3_derivative(False),
    ),
    IdentityCase(
        id="f1-recurrence-5.66",
        anchor="Thm 5.7, Eq. (5.66)",
        title="(B - (A + I)) F1^(A,B) = (B - I) F1^(A,B-I) - A F1^(A+I,B)",
        roles=kernel_roles() + f1_roles(),
        arguments=F1_ARGS,
        tolerance=1e-5,
        sides=_recurrence("f1", "kernel_shift_566", True),
    ),
    IdentityCase(
        id="f1-recurrence-5.7",
        anchor="Thm 5.7, Eqs. (5.7)/(5.8)",
        title="B F1 - B F1^(A-I,B) = -Y [B(A1, C1-A1)]^-1 B(A1-I, C1-A1-I) F1^(A,B+I)(A1-I; C1-2I)",
        roles=kernel_roles() + f1_roles(shifted=True),
        arguments=F1_ARGS,
        corrected_variant=True,
        tolerance=1e-5,
        sides=_recurrence("f1", "kernel_shift_57", True),
    ),
    IdentityCase(
        id="f1-recurrence-5.7-printed",
        anchor="Thm 5.7, Eq. (5.7)",
        title="B F1 - F1^(A-I,B) B + Y [B(A1, C1-A1)]^-1 B(A1-I, C1-A1-I) F1^(A,B+I)(...) = 0 as printed",
        roles=kernel_roles() + f1_roles(shifted=True),
        arguments=F1_ARGS,
        corrected_variant=False,
        tolerance=1e-5,
        sides=_recurrence("f1", "kernel_shift_57", False),
    ),
    IdentityCase(
        id="f2-recurrence-5.66",
        anchor="Thm 5.8",
        title="F2 (B - (A + I)) = F2^(A,B-I) (B - I) - F2^(A+I,B) A",
        roles=kernel_roles(second=True) + f2_roles(),
        arguments=F2_ARGS,
        tolerance=1e-5,
        sides=_recurrence("f2", "kernel_shift_566", True),
    ),
    IdentityCase(
        id="f2-recurrence-thm5.8",
        anchor="Thm 5.8, Eq. (5.8)",
        title="F2^(A-I) B - F2 B = F2^(A,B+I)(B1-I; C1-2I) [B(B1, C1-B1)]^-1 B(B1-I, C1-B1-I) Y",
        roles=kernel_roles(second=True) + f2_roles(shifted=True),
        arguments=F2_ARGS,
        corrected_variant=True,
        tolerance=1e-5,
        sides=_recurrence("f2", "kernel_shift_57", True),
    ),
    IdentityCase(
        id="f2-recurrence-thm5.8-printed",
        anchor="Thm 5.8",
        title="Second F2 recurrence as printed, with B1 and C1 unshifted",
        roles=kernel_roles(second=True) + f2_roles(shifted=True),
        arguments=F2_ARGS,
        corrected_variant=False,
        tolerance=1e-5,
        sides=_recurrence("f2", "kernel_shift_57", False),
    ),
    IdentityCase(
        id="fd3-recurrence-5.66",
        anchor="Thm 5.9",
        title="(B - (A + I)) F_D^(A,B) = (B - I) F_D^(A,B-I) - A F_D^(A+I,B)",
        roles=kernel_roles() + f1_roles() + [role("B3", (0.3, 1.0))],
        arguments=FD3_ARGS,
        tolerance=1e-5,
        sides=_recurrence("fd3", "kernel_shift_566", True),
    ),
    IdentityCase(
        id="fd3-recurrence-thm5.9",
        anchor="Thm 5.9",
        title="B F_D - B F_D^(A-I) + R Y F_D^(A,B+I)(A1-I; C1-2I) = 0 as printed",
        roles=kernel_roles() + f1_roles(shifted=True) + [role("B3", (0.3, 1.0))],
        arguments=FD3_ARGS,
        tolerance=1e-5,
        sides=_recurrence("fd3", "kernel_shift_57", False),
    ),
    IdentityCase(
        id="fd3-recurrence-thm5.9-derived",
        anchor="Thm 5.9, Eq. (5.8)",
        title="Second F_D recurrence with Y left of the beta ratio",
        roles=kernel_roles() + f1_roles(shifted=True) + [role("B3", (0.3, 1.0))],
        arguments=FD3_ARGS,
        tolerance=1e-5,
        sides=_recurrence("fd3", "kernel_shift_57", True),
    ),
    IdentityCase(
        id="shell-reindexing",
        anchor="Thm 5.2 (proof)",
        title="sum_N f(N) (z + w)^N / N! = sum_(m,n) f(m + n) z^m w^n / (m! n!) for f(N) = (A1)_N",
        roles=[role("A1", (0.4, 1.5))],
        arguments={"z": (-0.3, 0.3), "w": (-0.3, 0.3)},
        tolerance=1e-12,
        sides=_shell_reindexing,
    ),
]


def function_ids() -> list[str]:
    return [entry.id for entry in FUNCTIONS]


def case_ids() -> list[str]:
    return [case.id for case in CASES]


def get_function(function_id: str) -> FunctionEntry:
    """
    Raises:
        CatalogError: If function_id is unknown
    """
    for entry in FUNCTIONS:
        if entry.id == function_id:
            return entry
    raise CatalogError(f"Unknown function: {function_id}", valid_ids=function_ids())


def get_case(case_id: str) -> IdentityCase:
    """
    Raises:
        CatalogError: If case_id is unknown
    """
    for case in CASES:
        if case.id == case_id:
            return case
    raise CatalogError(f"Unknown identity case: {case_id}", valid_ids=case_ids())


def is_diagnostic(case: IdentityCase, corrected: bool = True) -> bool:
    """
    Diagnostic cases are reported but never counted as failures.

    For paired printed/corrected cases the run's `corrected` setting picks
    which of the two is asserted.
    """
    if case.diagnostic:
        return True
    if case.corrected_variant is None:
        return False
    return case.corrected_variant != corrected
