"""
Standard graph families.

All constructors use 1-indexed vertices; the star's centre is ``v_1``.

Random graphs follow G(n, p) with a pinned generator: a
``numpy.random.Generator`` over ``PCG64`` seeded with
``numpy.random.SeedSequence(seed)``. Candidate pairs ``(i, j)``, ``i < j``,
are visited in lexicographic order and one double is drawn per pair with
``Generator.random()``; the edge is kept when the draw is ``< p``.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import Graph


def _check_n(n, low, family):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < low:
        raise ValueError(f"{family} graph needs n >= {low}, got {n!r}")
    return int(n)


def gen_star(n: int) -> Graph:
    n = _check_n(n, 1, "star")
    return Graph(n, [(1, i) for i in range(2, n + 1)])


def gen_complete(n: int) -> Graph:
    n = _check_n(n, 1, "complete")
    return Graph(n, combinations(range(1, n + 1), 2))


def gen_path(n: int) -> Graph:
    n = _check_n(n, 1, "path")
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def gen_cycle(n: int) -> Graph:
    n = _check_n(n, 3, "cycle")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def gen_petersen() -> Graph:
    """Petersen graph: outer 5-cycle 1..5, inner pentagram 6..10, spokes i -- i+5."""
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    return Graph(10, outer + inner + spokes)


def gen_empty(n: int) -> Graph:
    n = _check_n(n, 1, "empty")
    return Graph(n)


def gen_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    n = _check_n(n, 1, "Erdos-Renyi")
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    edges = [(i, j) for i, j in combinations(range(1, n + 1), 2) if rng.random() < p]
    return Graph(n, edges)


FAMILIES = {
    "star": gen_star,
    "complete": gen_complete,
    "path": gen_path,
    "cycle": gen_cycle,
    "petersen": gen_petersen,
    "empty": gen_empty,
    "erdos-renyi": gen_erdos_renyi,
}
