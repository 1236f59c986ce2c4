"""
Certificates for candidate pseudoinverses of adjacency matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError, adjacency_matrix
from .oracle import null_space_basis
from .resolvent import build_resolvent, solve


@dataclass(frozen=True)
class MpReport:
    """Max-entry residuals of the four Moore-Penrose equations.

    ``AXA = A``, ``XAX = X``, ``(AX)^T = AX`` and ``(XA)^T = XA``.
    """

    residual_axiom1: float
    residual_axiom2: float
    residual_axiom3: float
    residual_axiom4: float
    tol: float

    @property
    def residuals(self) -> tuple[float, float, float, float]:
        return (
            self.residual_axiom1,
            self.residual_axiom2,
            self.residual_axiom3,
            self.residual_axiom4,
        )

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals)

    def __str__(self):
        lines = [
            f"AXA = A      residual {self.residual_axiom1:.3e}",
            f"XAX = X      residual {self.residual_axiom2:.3e}",
            f"(AX)^T = AX  residual {self.residual_axiom3:.3e}",
            f"(XA)^T = XA  residual {self.residual_axiom4:.3e}",
            f"{'PASS' if self.passed else 'FAIL'} at tol {self.tol:.1e}",
        ]
        return "\n".join(lines)


def _max_entry(a):
    return float(np.max(np.abs(a), initial=0.0))


def mp_check(a, x, tol: float = 1e-6) -> MpReport:
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or x.shape != a.shape:
        raise GraphError(f"shape mismatch: A is {a.shape}, X is {x.shape}")
    ax = a @ x
    xa = x @ a
    return MpReport(
        residual_axiom1=_max_entry(ax @ a - a),
        residual_axiom2=_max_entry(x @ ax - x),
        residual_axiom3=_max_entry(ax.T - ax),
        residual_axiom4=_max_entry(xa.T - xa),
        tol=tol,
    )


def variational_check(g: Graph, x, trials: int = 10, seed: int = 0) -> bool:
    """Probe the least-squares and minimal-norm properties of ``X`` for `g`.

    For each of `trials` random right-hand sides ``y``:

    * ``||A X y - y|| <= ||A w - y|| + 1e-9`` for `trials` random vectors
      ``w`` and `trials` small perturbations ``w = X y + s z``;
    * the component of ``X y`` in the null space of ``A`` (taken from the
      spectral oracle) has norm at most ``1e-8 ||X y||``.
    """
    a = adjacency_matrix(g)
    x = np.asarray(x, dtype=float)
    if x.shape != a.shape:
        raise GraphError(f"shape mismatch: A is {a.shape}, X is {x.shape}")
    null = null_space_basis(a)
    rng = np.random.default_rng(seed)
    n = g.order
    for _ in range(trials):
        y = rng.standard_normal(n)
        xy = x @ y
        best = np.linalg.norm(a @ xy - y)
        scale = max(np.linalg.norm(xy), 1.0)
        probes = [rng.standard_normal(n) * scale for _ in range(trials)]
        probes += [xy + 10.0 ** -rng.uniform(1, 4) * scale * rng.standard_normal(n)
                   for _ in range(trials)]
        for w in probes:
            if best > np.linalg.norm(a @ w - y) + 1e-9:
                return False
        if np.linalg.norm(null.T @ xy) > 1e-8 * np.linalg.norm(xy):
            return False
    return True


@dataclass(frozen=True)
class RankTestResult:
    nonsingular: bool
    witness: float
    lam: float

    @property
    def label(self) -> str:
        return "nonsingular" if self.nonsingular else "singular"


def nonsingularity_test(g: Graph, lambda_cap: float = 1e8, tol: float = 1e-3) -> RankTestResult:
    """Decide whether ``A`` is invertible from ``M = R^-1 A^2`` at ``lam = lambda_cap``.

    Entry ``(i, j)`` of ``M`` is ``<R^-1 f_j, f_i>``. As ``lam`` grows ``M``
    tends to the orthogonal projector onto the range of ``A``, which is the
    identity exactly when ``A`` is nonsingular. The witness is
    ``max |M - I|``.

    Along an eigenvalue ``mu`` of ``A``, ``M`` differs from the projector by
    ``1 / (1 + lam mu^2)``, so the default cap separates eigenvalues down to
    roughly ``|mu| ~ 3e-3`` from zero at the default `tol`.
    """
    if not lambda_cap >= 1:
        raise ValueError(f"lambda_cap must be >= 1, got {lambda_cap}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    res = build_resolvent(g, lambda_cap)
    a = adjacency_matrix(g)
    # columns A f_j
    m = solve(res, a @ a)
    witness = _max_entry(m - np.eye(g.order))
    return RankTestResult(nonsingular=witness <= tol, witness=witness, lam=float(lambda_cap))
