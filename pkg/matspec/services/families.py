"""
Random commuting matrix families and per-draw parameter generation.
"""

import logging

import numpy as np

from matspec.exceptions import GenerationError
from matspec.schemas.catalog import CommutingFamily, RoleSpec

logger = logging.getLogger(__name__)

MAX_CONDITION = 50.0
MAX_REDRAWS = 100
SEED_MASK = (1 << 64) - 1


def random_basis(order: int, rng: np.random.Generator) -> np.ndarray:
    """
    Real eigenvector matrix with condition number at most MAX_CONDITION.

    Raises:
        GenerationError: If no draw qualifies within MAX_REDRAWS
    """
    if order == 1:
        return np.ones((1, 1))
    for _ in range(MAX_REDRAWS):
        P = np.eye(order) + rng.normal(scale=0.5, size=(order, order))
        if np.linalg.cond(P) <= MAX_CONDITION:
            return P
    raise GenerationError(f"No eigenvector matrix of order {order} with condition <= {MAX_CONDITION:g}")


def uniform_spectrum(
    order: int, re: tuple[float, float], im: tuple[float, float], rng: np.random.Generator
) -> np.ndarray:
    values = rng.uniform(re[0], re[1], size=order).astype(np.complex128)
    if im[1] > im[0] or im[0] != 0.0:
        values = values + 1j * rng.uniform(im[0], im[1], size=order)
    return values


def random_commuting_family(
    r: int,
    count: int,
    spectrum_box: tuple[tuple[float, float], tuple[float, float]] = ((0.5, 2.0), (0.0, 0.0)),
    seed: int = 0,
    names: list[str] | None = None,
) -> CommutingFamily:
    """
    Draw `count` matrices sharing one random eigenbasis.

    Args:
        r: Matrix order
        spectrum_box: ((re_lo, re_hi), (im_lo, im_hi)) for every eigenvalue
        names: Member names, M0..M{count-1} by default

    Raises:
        GenerationError: If the basis redraw budget is exhausted
    """
    if r < 1 or count < 0:
        raise ValueError(f"Need r >= 1 and count >= 0, got r={r}, count={count}")
    names = names or [f"M{i}" for i in range(count)]
    if len(names) != count:
        raise ValueError(f"{count} members but {len(names)} names")
    rng = np.random.default_rng(seed & SEED_MASK)
    basis = random_basis(r, rng)
    re, im = spectrum_box
    members = {name: uniform_spectrum(r, re, im, rng) for name in names}
    return CommutingFamily(order=r, basis=basis, members=members, seed=seed)


def draw_roles(
    roles: list[RoleSpec], order: int, rng: np.random.Generator
) -> tuple[CommutingFamily, dict[str, np.ndarray]]:
    """
    Draw every role of a case or function.

    Shared-basis roles go into the returned family; `independent` roles are
    conjugated by their own basis and appear only in the matrix dict.

    Raises:
        GenerationError: If a role refers to an unknown base role
    """
    basis = random_basis(order, rng)
    values: dict[str, np.ndarray] = {}
    shared: dict[str, np.ndarray] = {}
    matrices: dict[str, np.ndarray] = {}
    for role in roles:
        if role.zero:
            spectrum = np.zeros(order, dtype=np.complex128)
        elif role.same_as is not None:
            if role.same_as not in values:
                raise GenerationError(f"Role {role.name} copies unknown role {role.same_as}")
            spectrum = values[role.same_as]
        else:
            spectrum = uniform_spectrum(order, role.re, role.im, rng)
            if role.base is not None:
                if role.base not in values:
                    raise GenerationError(f"Role {role.name} is offset from unknown role {role.base}")
                spectrum = spectrum + values[role.base]
        values[role.name] = spectrum
        if role.independent:
            own = random_basis(order, rng)
            matrices[role.name] = (own * spectrum[None, :]) @ np.linalg.inv(own)
        else:
            shared[role.name] = spectrum
    family = CommutingFamily(order=order, basis=basis, members=shared)
    matrices.update(family.matrices())
    for name, matrix in matrices.items():
        if np.max(np.abs(matrix.imag)) <= 1e-14 * max(1.0, float(np.max(np.abs(matrix)))):
            matrices[name] = matrix.real
    return family, {role.name: matrices[role.name] for role in roles}


def draw_arguments(boxes: dict[str, tuple[float, float]], rng: np.random.Generator) -> dict[str, float]:
    """Scalar arguments uniform in their intervals, in sorted key order."""
    return {name: float(rng.uniform(*boxes[name])) for name in sorted(boxes)}


def draw_rng(seed: int, draw: int) -> np.random.Generator:
    """Independent stream for one draw of a seeded run."""
    return np.random.default_rng([seed & SEED_MASK, draw])
