"""
Running sums for matrix power series with a tail-based stopping rule.
"""

import numpy as np

from matspec.schemas.specs import SeriesSpec

_TINY = float(np.finfo(float).tiny)


class SeriesAccumulator:
    """
    Accumulate matrix terms until tail_run consecutive terms fall below
    term_tol times the norm of the partial sum.

    The error estimate is the geometric tail bound a_n r / (1 - r) taken from
    the last two term norms, or the sum of the trailing term norms when the
    terms are not decreasing.
    """

    def __init__(self, shape: tuple[int, ...], spec: SeriesSpec):
        self.spec = spec
        self.total = np.zeros(shape, dtype=np.complex128)
        self.terms = 0
        self.converged = False
        self._small_run = 0
        self._norms: list[float] = []

    def add(self, term: np.ndarray) -> bool:
        """
        Add one term.

        Returns:
            True once the stopping rule is met or the budget is exhausted
        """
        self.total = self.total + term
        self.terms += 1
        norm = float(np.linalg.norm(term))
        self._norms.append(norm)
        if norm <= self.spec.term_tol * max(float(np.linalg.norm(self.total)), _TINY):
            self._small_run += 1
        else:
            self._small_run = 0
        if self._small_run >= self.spec.tail_run:
            self.converged = True
            return True
        return self.terms >= self.spec.max_terms

    @property
    def norms(self) -> list[float]:
        """Frobenius norms of the terms added so far."""
        return list(self._norms)

    @property
    def error_estimate(self) -> float:
        """Estimated norm of the neglected tail."""
        if not self._norms:
            return 0.0
        tail = self._norms[-self.spec.tail_run:]
        fallback = float(sum(tail))
        if len(self._norms) < 2:
            return fallback
        previous, last = self._norms[-2], self._norms[-1]
        if previous <= 0.0 or last <= 0.0:
            return fallback
        ratio = last / previous
        if ratio >= 1.0:
            return fallback
        return max(fallback, last * ratio / (1.0 - ratio))
