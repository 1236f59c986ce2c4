"""
Reference pseudoinverses that share no code with the regularisation path.

`spectral_pinv` reciprocates the nonzero eigenvalues of a cyclic Jacobi
eigendecomposition. `rational_pinv` works in exact rational arithmetic from a
full-rank factorisation ``A = F G^T`` obtained by row reduction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, adjacency_matrix

RATIONAL_MAX_ORDER = 30


class EigenNonConvergence(ArithmeticError):
    pass


@dataclass(frozen=True)
class SpectralDecomposition:
    """``A = Q diag(eigenvalues) Q^T`` with orthogonal `eigenvectors` ``Q``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.T


def jacobi_eigh(a, max_sweeps: int = 100) -> SpectralDecomposition:
    """Cyclic Jacobi eigendecomposition of a real symmetric matrix.

    Sweeps over all ``(p, q)`` pairs above the diagonal, annihilating each
    off-diagonal entry with a plane rotation. After the first few sweeps an
    entry too small to change either diagonal entry in floating point is set
    to zero instead of rotated; iteration stops once the strict upper
    triangle is exactly zero.

    Parameters
    ----------
    a : (n, n) array_like
        Symmetric matrix.
    max_sweeps : int
        Sweep cap; `EigenNonConvergence` is raised when it is exhausted.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(1.0, np.abs(a).max(initial=0))):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    iu = np.triu_indices(n, 1)

    for sweep in range(1, max_sweeps + 1):
        if not np.any(a[iu]):
            return SpectralDecomposition(np.diag(a).copy(), v, sweep - 1)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                small = 100.0 * abs(apq)
                if sweep > 4 and abs(a[p, p]) + small == abs(a[p, p]) \
                        and abs(a[q, q]) + small == abs(a[q, q]):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                # smaller root of t^2 + 2 t theta - 1 = 0
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c

                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :]
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    if not np.any(a[iu]):
        return SpectralDecomposition(np.diag(a).copy(), v, max_sweeps)
    raise EigenNonConvergence(
        f"Jacobi iteration did not converge in {max_sweeps} sweeps"
    )


def default_zero_tol(eigenvalues: np.ndarray) -> float:
    """``1e-8`` times the spectral radius (with a floor for the zero matrix)."""
    return 1e-8 * max(float(np.max(np.abs(eigenvalues), initial=0.0)), 1.0)


def spectral_pinv(a, zero_tol: float | None = None, max_sweeps: int = 100) -> np.ndarray:
    """Pseudoinverse ``Q diag(1/mu) Q^T`` over eigenvalues ``|mu| > zero_tol``."""
    dec = jacobi_eigh(a, max_sweeps=max_sweeps)
    mu = dec.eigenvalues
    if zero_tol is None:
        zero_tol = default_zero_tol(mu)
    keep = np.abs(mu) > zero_tol
    inv = np.zeros_like(mu)
    inv[keep] = 1.0 / mu[keep]
    q = dec.eigenvectors
    x = (q * inv) @ q.T
    return 0.5 * (x + x.T)


def spectral_rank(a, zero_tol: float | None = None) -> int:
    mu = jacobi_eigh(a).eigenvalues
    if zero_tol is None:
        zero_tol = default_zero_tol(mu)
    return int(np.sum(np.abs(mu) > zero_tol))


def null_space_basis(a, zero_tol: float | None = None) -> np.ndarray:
    """Orthonormal columns spanning the eigenvectors with ``|mu| <= zero_tol``."""
    dec = jacobi_eigh(a)
    if zero_tol is None:
        zero_tol = default_zero_tol(dec.eigenvalues)
    return dec.eigenvectors[:, np.abs(dec.eigenvalues) <= zero_tol]


# exact arithmetic ---------------------------------------------------------

Matrix = list[list[Fraction]]


def _rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; works on a copy."""
    m = [row[:] for row in m]
    rows, cols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(rows):
            f = m[i][c]
            if i != r and f != 0:
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def _transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def _inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def rational_matmul(a: Matrix, b: Matrix) -> Matrix:
    return _matmul(a, b)


def rational_pinv(g: Graph) -> Matrix:
    """Exact pseudoinverse of the adjacency matrix as nested `Fraction` lists.

    With ``rank r`` and pivot columns ``P`` of the reduced row echelon form
    ``E`` of ``A``, ``A = A[:, P] @ E[:r]``. Taking ``F = A[:, P]`` and
    ``G = E[:r]^T`` gives ``A+ = G (G^T G)^-1 (F^T F)^-1 F^T``.

    Raises
    ------
    ValueError
        If the graph has more than ``RATIONAL_MAX_ORDER`` vertices.
    """
    n = g.order
    if n > RATIONAL_MAX_ORDER:
        raise ValueError(f"rational oracle limited to order <= {RATIONAL_MAX_ORDER}, got {n}")
    a = [[Fraction(int(x)) for x in row] for row in adjacency_matrix(g)]
    e, pivots = _rref(a)
    r = len(pivots)
    if r == 0:
        return [[Fraction(0)] * n for _ in range(n)]
    f = [[a[i][c] for c in pivots] for i in range(n)]
    gt = e[:r]
    gmat = _transpose(gt)
    ft = _transpose(f)
    left = _matmul(gmat, _inverse(_matmul(gt, gmat)))
    right = _matmul(_inverse(_matmul(ft, f)), ft)
    return _matmul(left, right)


def rational_to_float(m: Matrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in m])
