"""
Pseudoinverse of an adjacency matrix along the Tikhonov regularisation path.

For ``lam > 0`` the iterate ``X(lam) = R(lam)^-1 A`` is the matrix mapping
``y`` to the minimiser of ``(1/lam) ||x||^2 + ||A x - y||^2``. It tends to the
Moore-Penrose inverse ``A+`` as ``lam -> inf``. On a nonzero eigenvalue ``mu``
of ``A`` the iterate acts as ``mu / (1/lam + mu^2)``, so

    X(lam) = A+ - (1/lam) (A+)^3 + O(1/lam^2)

and the two-point Richardson combination ``(r X(r lam) - X(lam)) / (r - 1)``
cancels the leading term.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .graph import DenseSymMatrix, Graph, GraphError, adjacency_matrix, symmetrize
from .resolvent import MAX_LAMBDA, build_resolvent, solve
from .verification import mp_check

log = logging.getLogger(__name__)

# Default cap for `trace_path`. Beyond it rounding hides the 1/lam decay on
# singular graphs.
TRACE_LAMBDA_CAP = 1e8


@dataclass(frozen=True)
class PathConfig:
    """Schedule ``lam_k = lambda_start * lambda_ratio**k`` capped at `lambda_cap`.

    The cap only bites on slowly converging graphs: those whose smallest
    nonzero adjacency eigenvalue is tiny. Rounding in ``R^-1`` grows like
    ``lam * eps`` only along the null space of ``A``, and singular graphs
    with a healthy spectral gap stop long before that matters.

    `tol` bounds the max-entry change between consecutive estimates. The
    regularisation weight of the classical ``alpha ||x||^2`` formulation is
    ``alpha = 1/lam``.
    """

    lambda_start: float = 1.0
    lambda_ratio: float = 10.0
    lambda_cap: float = 1e12
    tol: float = 1e-9
    extrapolate: bool = True

    def __post_init__(self):
        if not self.lambda_start > 0:
            raise ValueError(f"lambda_start must be positive, got {self.lambda_start}")
        if not self.lambda_ratio > 1:
            raise ValueError(f"lambda_ratio must exceed 1, got {self.lambda_ratio}")
        if not self.lambda_start <= self.lambda_cap <= MAX_LAMBDA:
            raise ValueError(
                f"need lambda_start <= lambda_cap <= {MAX_LAMBDA:g}, "
                f"got {self.lambda_start:g} and {self.lambda_cap:g}"
            )
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")

    def schedule(self) -> Iterator[float]:
        k = 0
        while True:
            lam = self.lambda_start * self.lambda_ratio**k
            if lam > self.lambda_cap * (1 + 1e-12):
                return
            yield lam
            k += 1


@dataclass(frozen=True)
class PinvResult:
    pinv: DenseSymMatrix
    final_lambda: float
    iterations: int
    mp_residuals: tuple[float, float, float, float]
    rank_estimate: int
    converged: bool = True
    last_change: float = 0.0
    extrapolated: bool = False
    # plain (unextrapolated) iterate at final_lambda
    last_iterate: DenseSymMatrix | None = None


class NonConvergence(RuntimeError):
    """The schedule hit `lambda_cap` before consecutive iterates agreed to `tol`."""

    def __init__(self, last_iterate, change, final_lambda, tol):
        super().__init__(
            f"no convergence by lambda={final_lambda:g}: "
            f"last change {change:.3e} > tol {tol:.3e}"
        )
        self.last_iterate = last_iterate
        self.change = change
        self.final_lambda = final_lambda


def path_iterate(g: Graph, lam: float, threads: int = 1) -> DenseSymMatrix:
    """``R(lam)^-1 A`` assembled column by column from ``solve(R, f_j)``.

    Column ``j`` of ``A`` is the neighbour vector ``f_j``, so entry ``(i, j)``
    of the result is ``<R^-1 e_j, f_i>``. The result is symmetrised.
    `threads` splits the column solves across a thread pool; every solve
    shares the same immutable factorisation.
    """
    res = build_resolvent(g, lam)
    a = adjacency_matrix(g)
    n = g.order
    if threads <= 1 or n < 2:
        x = solve(res, a)
    else:
        blocks = np.array_split(np.arange(n), min(threads, n))
        x = np.empty((n, n))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for cols, part in zip(blocks, pool.map(lambda c: solve(res, a[:, c]), blocks)):
                x[:, cols] = part
    return symmetrize(x)


def richardson(x_lo: np.ndarray, x_hi: np.ndarray, ratio: float) -> np.ndarray:
    """Cancel the ``1/lam`` term from iterates at ``lam`` and ``ratio * lam``."""
    return (ratio * x_hi - x_lo) / (ratio - 1.0)


def _max_entry(a: np.ndarray) -> float:
    return float(np.max(np.abs(a), initial=0.0))


def pinv(g: Graph, cfg: PathConfig | None = None, threads: int = 1) -> PinvResult:
    """Moore-Penrose inverse of the adjacency matrix of `g`.

    Walks the geometric schedule of `cfg`. With extrapolation enabled the
    estimate at each step (from the second on) is the Richardson combination
    of the last two iterates, and convergence is declared once two
    consecutive estimates differ by at most ``cfg.tol`` in max-entry norm.
    Reaching the cap with extrapolation enabled returns the estimate with
    the smallest consecutive change (``converged=False``); with
    extrapolation disabled it raises.

    Raises
    ------
    NonConvergence
        Cap reached without convergence and ``cfg.extrapolate`` is false.
    """
    cfg = cfg or PathConfig()
    prev_iter = prev_est = None
    change = np.inf
    converged = False
    # (change, estimate, plain iterate, lambda, step) at the smallest change seen
    best = None
    for k, lam in enumerate(cfg.schedule(), start=1):
        x = path_iterate(g, lam, threads=threads)
        est = x
        if cfg.extrapolate and prev_iter is not None:
            est = symmetrize(richardson(prev_iter, x, cfg.lambda_ratio))
        if prev_est is not None:
            change = _max_entry(est - prev_est)
            log.debug("lambda=%g change=%.3e", lam, change)
            if best is None or change < best[0]:
                best = (change, est, x, lam, k)
            if change <= cfg.tol:
                converged = True
                break
        prev_iter, prev_est = x, est

    if not converged:
        if not cfg.extrapolate:
            raise NonConvergence(est, change, lam, cfg.tol)
        if best is not None:
            # past this point rounding noise grew faster than the bias shrank
            change, est, x, lam, _ = best
        log.warning(
            "lambda cap %g reached without convergence; returning the estimate "
            "at lambda=%g (change %.3e > tol %.3e)", cfg.lambda_cap, lam, change, cfg.tol,
        )

    a = adjacency_matrix(g)
    rep = mp_check(a, est, tol=100 * cfg.tol)
    return PinvResult(
        pinv=est,
        final_lambda=lam,
        iterations=k,
        mp_residuals=rep.residuals,
        rank_estimate=rank_from_projector(a, est),
        converged=converged,
        last_change=float(change),
        extrapolated=cfg.extrapolate and k >= 2,
        last_iterate=x,
    )


def rank_from_projector(a: np.ndarray, x: np.ndarray) -> int:
    """``trace(A X)`` rounded; ``A A+`` projects onto the range of ``A``."""
    return int(round(float(np.trace(a @ x))))


@dataclass(frozen=True)
class TracePoint:
    lam: float
    change: float | None
    error: float | None
    extrapolated_error: float | None = None


def trace_path(
    g: Graph, cfg: PathConfig | None = None, reference: np.ndarray | None = None
) -> list[TracePoint]:
    """Plain iterates over the full schedule with errors against `reference`.

    No early stopping; every schedule point up to the cap is recorded.
    Without `cfg` the schedule stops at `TRACE_LAMBDA_CAP`.
    """
    cfg = cfg or PathConfig(lambda_cap=TRACE_LAMBDA_CAP)
    out = []
    prev = None
    for lam in cfg.schedule():
        x = path_iterate(g, lam)
        change = None if prev is None else _max_entry(x - prev)
        err = xerr = None
        if reference is not None:
            err = _max_entry(x - reference)
            if prev is not None:
                xerr = _max_entry(richardson(prev, x, cfg.lambda_ratio) - reference)
        out.append(TracePoint(lam, change, err, xerr))
        prev = x
    return out


def _check_vec(g: Graph, v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (g.order,):
        raise GraphError(f"{name} has shape {v.shape}, expected ({g.order},)")
    return v


def tikhonov_objective(g: Graph, lam: float, x, y) -> float:
    """``(1/lam) ||x||^2 + ||A x - y||^2``."""
    x = _check_vec(g, x, "x")
    y = _check_vec(g, y, "y")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    r = adjacency_matrix(g) @ x - y
    return float(x @ x / lam + r @ r)


def stationarity_residual(g: Graph, lam: float, x, y) -> float:
    """``||R x - A y||_inf``, half the sup-norm of the objective's gradient."""
    x = _check_vec(g, x, "x")
    y = _check_vec(g, y, "y")
    res = build_resolvent(g, lam)
    a = adjacency_matrix(g)
    return _max_entry(res.matrix @ x - a @ y)


def tikhonov_solution(g: Graph, lam: float, y) -> np.ndarray:
    """Unique minimiser of `tikhonov_objective` for fixed `y`."""
    y = _check_vec(g, y, "y")
    return solve(build_resolvent(g, lam), adjacency_matrix(g) @ y)
