"""
Undirected simple graphs and the combinatorial quantities built from them.

Vertices are 1-indexed everywhere in the public API (``v_1 .. v_n``).
Internally adjacency lists and arrays are 0-indexed; the conversion happens
only inside this module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

# Dense symmetric matrices are plain float64 ndarrays. Symmetry is established
# by construction and checked with `is_symmetric`.
DenseSymMatrix = np.ndarray


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertex indices."""


@dataclass(frozen=True)
class Graph:
    """Undirected graph without loops or parallel edges.

    Parameters
    ----------
    order : int
        Number of vertices ``n >= 1``.
    edges : iterable of pairs
        Unordered vertex pairs ``(i, j)`` with ``1 <= i, j <= n`` and
        ``i != j``. Duplicates (in either orientation) are rejected.
    """

    order: int
    edges: tuple[tuple[int, int], ...] = ()
    _nbrs: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __init__(self, order: int, edges: Iterable[tuple[int, int]] = ()):
        if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
            raise GraphError(f"order must be an integer, got {order!r}")
        order = int(order)
        if order < 1:
            raise GraphError(f"order must be positive, got {order}")

        seen = set()
        for e in edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            for v in (i, j):
                if not 1 <= v <= order:
                    raise GraphError(f"vertex {v} out of range 1..{order}")
            key = (i, j) if i < j else (j, i)
            if key in seen:
                raise GraphError(f"duplicate edge {{{key[0]}, {key[1]}}}")
            seen.add(key)

        nbrs: list[list[int]] = [[] for _ in range(order)]
        for i, j in seen:
            nbrs[i - 1].append(j - 1)
            nbrs[j - 1].append(i - 1)

        object.__setattr__(self, "order", order)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "_nbrs", tuple(tuple(sorted(a)) for a in nbrs))

    @property
    def size(self) -> int:
        """Number of edges ``m``."""
        return len(self.edges)

    def _index(self, i: int) -> int:
        if not 1 <= i <= self.order:
            raise GraphError(f"vertex {i} out of range 1..{self.order}")
        return i - 1

    def neighbors(self, i: int) -> tuple[int, ...]:
        """Sorted 1-indexed neighbourhood ``N_G(v_i)``."""
        return tuple(k + 1 for k in self._nbrs[self._index(i)])


@dataclass(frozen=True)
class NeighborVector:
    """Indicator vector of the neighbourhood of ``vertex``.

    Entry ``j`` (0-indexed position ``j - 1``) is 1 exactly when
    ``{vertex, j}`` is an edge. It equals column ``vertex`` of the adjacency
    matrix.
    """

    vertex: int
    values: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __len__(self):
        return len(self.values)


def adjacency_matrix(g: Graph) -> DenseSymMatrix:
    """Dense 0/1 adjacency matrix of `g` as float64."""
    a = np.zeros((g.order, g.order))
    if g.edges:
        idx = np.asarray(g.edges) - 1
        a[idx[:, 0], idx[:, 1]] = 1.0
        a[idx[:, 1], idx[:, 0]] = 1.0
    return a


def neighbor_vector(g: Graph, i: int) -> NeighborVector:
    values = np.zeros(g.order)
    values[list(g._nbrs[g._index(i)])] = 1.0
    return NeighborVector(vertex=i, values=values)


def degree(g: Graph, i: int) -> int:
    return len(g._nbrs[g._index(i)])


def degrees(g: Graph) -> np.ndarray:
    """Integer degree sequence, position ``k`` holding ``deg v_{k+1}``."""
    return np.array([len(a) for a in g._nbrs], dtype=np.int64)


def _count_common(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    # merge of two sorted lists, O(len(a) + len(b))
    p = q = count = 0
    while p < len(a) and q < len(b):
        if a[p] == b[q]:
            count += 1
            p += 1
            q += 1
        elif a[p] < b[q]:
            p += 1
        else:
            q += 1
    return count


def common_neighbors(g: Graph, i: int, j: int) -> int:
    """``|N_G(v_i) ∩ N_G(v_j)|``; for ``i == j`` this is the degree."""
    return _count_common(g._nbrs[g._index(i)], g._nbrs[g._index(j)])


def apply_adjacency(g: Graph, x) -> np.ndarray:
    """Compute ``A_G x`` from the edge list without forming ``A_G``.

    Each edge ``{i, j}`` contributes ``x_j`` to row ``i`` and ``x_i`` to
    row ``j``.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (g.order,):
        raise GraphError(
            f"vector of shape {x.shape} does not match graph order {g.order}"
        )
    y = np.zeros(g.order)
    if g.edges:
        idx = np.asarray(g.edges) - 1
        np.add.at(y, idx[:, 0], x[idx[:, 1]])
        np.add.at(y, idx[:, 1], x[idx[:, 0]])
    return y


def is_symmetric(a: np.ndarray) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and np.array_equal(a, a.T)


def symmetrize(a: np.ndarray) -> DenseSymMatrix:
    """Average with the transpose; the result is exactly symmetric."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a + a.T)
