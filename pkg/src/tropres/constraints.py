"""Difference-constraint systems ``x_j - x_k <= c`` and their shortest-path closure.

A closed region of the type decomposition is the solution set of such a
system.  Feasibility is the absence of a negative cycle, the tightest implied
bounds are all-pairs shortest paths, and coordinates forced to move together
are the pairs joined by a zero-weight cycle.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf
from typing import Iterable, Sequence

__all__ = [
    "ConstraintSystem",
    "InfeasibleError",
    "closure",
    "add_edges",
    "lex_feasible",
    "lex_potentials",
]


class InfeasibleError(ValueError):
    """Raised when an operation needs a nonempty region but the system has none."""


def closure(n: int, edges: Iterable[tuple[int, int, object]]) -> list[list] | None:
    """All-pairs tightest bounds via Floyd-Warshall.

    ``D[k][j]`` is the least upper bound on ``x_j - x_k`` implied by the
    edges (``inf`` when unbounded).  Returns ``None`` on a negative cycle.
    """
    D = [[0 if k == j else inf for j in range(n)] for k in range(n)]
    for k, j, c in edges:
        if c < D[k][j]:
            D[k][j] = c
    for m in range(n):
        Dm = D[m]
        for a in range(n):
            dam = D[a][m]
            if dam == inf:
                continue
            Da = D[a]
            for b in range(n):
                t = dam + Dm[b]
                if t < Da[b]:
                    Da[b] = t
        if Dm[m] < 0:
            return None
    if any(D[k][k] < 0 for k in range(n)):
        return None
    return D


def add_edges(D: list[list], edges: Iterable[tuple[int, int, object]]) -> list[list] | None:
    """Incrementally add edges to a closed matrix (copying it first).

    Returns the new closure, or ``None`` if a negative cycle appears.
    """
    D = [row[:] for row in D]
    n = len(D)
    for u, v, w in edges:
        if w >= D[u][v]:
            continue
        if D[v][u] + w < 0:
            return None
        Dv = D[v]
        for a in range(n):
            dau = D[a][u]
            if dau == inf:
                continue
            base = dau + w
            Da = D[a]
            for b in range(n):
                t = base + Dv[b]
                if t < Da[b]:
                    Da[b] = t
    return D


class ConstraintSystem:
    """Bounds ``x_j - x_k <= c[k][j]`` on ``d`` unknowns.

    Bounds are intersected by taking minima; absent bounds are ``inf``.
    """

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("need at least one unknown")
        self.d = d
        self.bounds: list[list] = [[inf] * d for _ in range(d)]
        self._closed = None
        self._dirty = True

    def add_bound(self, k: int, j: int, c) -> None:
        """Require ``x_j - x_k <= c``."""
        if k == j:
            if c < 0:
                # x_k - x_k <= c < 0 is unsatisfiable; encode as a negative loop.
                self.bounds[k][k] = min(self.bounds[k][k], c)
                self._dirty = True
            return
        if c < self.bounds[k][j]:
            self.bounds[k][j] = c
            self._dirty = True

    def edges(self):
        for k in range(self.d):
            for j in range(self.d):
                c = self.bounds[k][j]
                if c != inf:
                    yield k, j, c

    def closed(self) -> list[list] | None:
        """The all-pairs tightest bounds, or ``None`` if infeasible."""
        if self._dirty:
            self._closed = closure(self.d, self.edges())
            self._dirty = False
        return self._closed

    def feasible(self) -> bool:
        return self.closed() is not None

    def forced_classes(self) -> list[list[int]]:
        """Groups of unknowns whose pairwise differences are constant on the region."""
        D = self.closed()
        if D is None:
            raise InfeasibleError("empty region")
        return forced_classes(D)

    def __repr__(self):
        items = [f"x{j}-x{k}<={c}" for k, j, c in self.edges()]
        return "ConstraintSystem(" + ", ".join(items) + ")"


def forced_classes(D: Sequence[Sequence]) -> list[list[int]]:
    n = len(D)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in range(n):
        for j in range(k + 1, n):
            if D[k][j] != inf and D[j][k] != inf and D[k][j] + D[j][k] == 0:
                parent[find(j)] = find(k)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


# -- lexicographic weights (c, s): s counts strictness, x_j - x_k <= c - s*eps --


def _lex_closure(n: int, edges) -> list[list] | None:
    INF = None
    D = [[(0, 0) if k == j else INF for j in range(n)] for k in range(n)]
    for k, j, w in edges:
        if D[k][j] is INF or w < D[k][j]:
            D[k][j] = w
    for m in range(n):
        for a in range(n):
            dam = D[a][m]
            if dam is INF:
                continue
            for b in range(n):
                dmb = D[m][b]
                if dmb is INF:
                    continue
                t = (dam[0] + dmb[0], dam[1] + dmb[1])
                if D[a][b] is INF or t < D[a][b]:
                    D[a][b] = t
    if any(D[k][k] < (0, 0) for k in range(n)):
        return None
    return D


def lex_feasible(n: int, edges: Iterable[tuple[int, int, tuple]]) -> bool:
    """Feasibility of a mixed strict/weak difference system.

    Each edge ``(k, j, (c, s))`` encodes ``x_j - x_k <= c`` when ``s == 0`` and
    ``x_j - x_k < c`` when ``s == -1``.
    """
    return _lex_closure(n, list(edges)) is not None


def lex_potentials(n: int, edges: Sequence[tuple[int, int, tuple]]) -> list[Fraction] | None:
    """A concrete solution of a mixed strict/weak difference system, or ``None``.

    Shortest paths from a virtual source give symbolic potentials ``a + b*eps``;
    ``eps`` is then chosen small enough that every constraint holds for real.
    """
    edges = list(edges)
    src = n
    full = edges + [(src, j, (0, 0)) for j in range(n)]
    D = _lex_closure(n + 1, full)
    if D is None:
        return None
    pot = D[src][:n]
    eps = Fraction(1)
    for k, j, (c, s) in edges:
        da = pot[j][0] - pot[k][0]
        db = pot[j][1] - pot[k][1]
        gap = c - da
        if gap > 0 and db - s > 0:
            eps = min(eps, Fraction(gap) / (2 * (db - s)))
    return [Fraction(a) + eps * b for a, b in pot]
