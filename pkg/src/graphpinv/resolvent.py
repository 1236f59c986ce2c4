"""
The regularised normal-equations matrix ``R = (1/lam) I + A^2`` of a graph.

The primary assembly is combinatorial: the diagonal holds ``deg v_i + 1/lam``
and the off-diagonal entries are common-neighbour counts. The algebraic form
``(1/lam) I + A @ A`` is kept only as a cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .graph import (
    DenseSymMatrix,
    Graph,
    GraphError,
    _count_common,
    adjacency_matrix,
    degrees,
)

# 1/lam is below any meaningful resolution next to integer degrees past this.
MAX_LAMBDA = 1e15


class ConditioningError(ArithmeticError):
    """The SPD factorisation of ``R`` broke down numerically."""


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not np.isfinite(lam) or lam <= 0:
        raise ValueError(f"lambda must be positive and finite, got {lam}")
    if lam > MAX_LAMBDA:
        raise ValueError(f"lambda {lam:g} exceeds the supported maximum {MAX_LAMBDA:g}")
    return lam


def combinatorial_matrix(g: Graph, lam: float) -> DenseSymMatrix:
    """Assemble ``R`` from degrees and common-neighbour counts."""
    lam = _check_lambda(lam)
    n = g.order
    r = np.zeros((n, n))
    nbrs = g._nbrs
    for i in range(n):
        for j in range(i + 1, n):
            c = _count_common(nbrs[i], nbrs[j])
            if c:
                r[i, j] = r[j, i] = c
    r[np.diag_indices(n)] = degrees(g) + 1.0 / lam
    return r


def algebraic_matrix(g: Graph, lam: float) -> DenseSymMatrix:
    """``(1/lam) I + A @ A`` computed by dense multiplication."""
    lam = _check_lambda(lam)
    a = adjacency_matrix(g)
    return np.eye(g.order) / lam + a @ a


@dataclass(frozen=True, eq=False)
class Resolvent:
    """``R`` for one value of ``lam`` with its cached lower Cholesky factor."""

    lam: float
    matrix: DenseSymMatrix
    factor: np.ndarray

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


def build_resolvent(g: Graph, lam: float) -> Resolvent:
    """Assemble and factor ``R`` for graph `g`.

    Raises
    ------
    ValueError
        If `lam` is not in ``(0, MAX_LAMBDA]``.
    ConditioningError
        If the Cholesky factorisation fails. ``R`` is positive definite in
        exact arithmetic, so this only happens when rounding dominates.
    """
    r = combinatorial_matrix(g, lam)
    try:
        c, _ = cho_factor(r, lower=True, check_finite=False)
    except LinAlgError as exc:
        raise ConditioningError(
            f"Cholesky factorisation failed at lambda={lam:g}: {exc}"
        ) from exc
    factor = np.tril(c)
    factor.setflags(write=False)
    r.setflags(write=False)
    return Resolvent(lam=float(lam), matrix=r, factor=factor)


def solve(res: Resolvent, b) -> np.ndarray:
    """Solve ``R x = b``. `b` may be a vector or an ``(n, k)`` block of columns."""
    b = np.asarray(b, dtype=float)
    if b.shape[0] != res.order or b.ndim > 2:
        raise GraphError(
            f"right-hand side of shape {b.shape} does not match order {res.order}"
        )
    return cho_solve((res.factor, True), b, check_finite=False)


def resolvent_identity_check(g: Graph, lam: float) -> float:
    """Max-abs difference between the combinatorial and algebraic ``R``."""
    return float(np.max(np.abs(combinatorial_matrix(g, lam) - algebraic_matrix(g, lam))))
