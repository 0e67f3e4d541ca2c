"""The type decomposition of the tropical torus induced by an arrangement.

Cells are identified by their canonical (saturated) fine type.  Maximal
cells are found by a depth-first search over sector choices, one hyperplane
at a time, pruning prefixes whose region is not full-dimensional.  Lower
cells are reached by repeatedly intersecting a cell with one additional
closed sector, which always yields a face.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import inf
from typing import Iterable, Sequence

from .constraints import (
    ConstraintSystem,
    InfeasibleError,
    add_edges,
    closure,
    forced_classes,
    lex_feasible,
    lex_potentials,
)
from .tropical import Arrangement, TypeMatrix, column_sums, fine_type, normalize

__all__ = [
    "Cell",
    "TropicalComplex",
    "ResourceLimitError",
    "constraint_system_of",
    "feasible",
    "saturate",
    "cell_dimension",
    "maximal_cells",
    "enumerate_cells",
    "bounded_subcomplex",
    "relative_interior_point",
    "dual_subdivision",
    "is_fine",
    "envelope_is_face",
    "dual_dimension",
    "crosscut_complex",
    "join",
]

DEFAULT_NODE_LIMIT = 2_000_000


class ResourceLimitError(RuntimeError):
    """The enumeration exceeded its configured work limit."""


def _check_type(arr: Arrangement, T: TypeMatrix):
    if len(T) != arr.n or any(len(row) != arr.d for row in T):
        raise ValueError(f"type matrix must be {arr.n} x {arr.d}")
    for i, row in enumerate(T):
        if not any(row):
            raise ValueError(f"invalid type: row {i} is empty")


def _type_edges(V, T):
    # Sector (i, k): v_ik - p_k <= v_ij - p_j for all j, i.e. p_j - p_k <= v_ij - v_ik.
    for i, row in enumerate(T):
        vi = V[i]
        for k, x in enumerate(row):
            if x:
                for j in range(len(row)):
                    if j != k:
                        yield k, j, vi[j] - vi[k]


def constraint_system_of(arr: Arrangement, T: TypeMatrix) -> ConstraintSystem:
    """The difference constraints cutting out the closed cell of type ``T``."""
    _check_type(arr, T)
    cs = ConstraintSystem(arr.d)
    for i, row in enumerate(T):
        vi = arr.apices[i]
        for k, x in enumerate(row):
            if x:
                for j in range(arr.d):
                    if j != k:
                        cs.add_bound(k, j, vi[j] - vi[k])
    return cs


def feasible(cs: ConstraintSystem) -> bool:
    return cs.feasible()


def _closure_of(arr: Arrangement, T: TypeMatrix):
    return closure(arr.d, _type_edges(arr.scaled, T))


def _saturate_closed(V, D, n: int, d: int) -> TypeMatrix:
    rows = []
    for i in range(n):
        vi = V[i]
        row = []
        for k in range(d):
            Dk = D[k]
            vik = vi[k]
            row.append(1 if all(Dk[j] <= vi[j] - vik for j in range(d)) else 0)
        rows.append(tuple(row))
    return tuple(rows)


def _dim_closed(D) -> int:
    return len(forced_classes(D)) - 1


def saturate(arr: Arrangement, T: TypeMatrix) -> TypeMatrix:
    """The type shared by every point of the closed cell ``C_T``.

    Entry ``(i, k)`` is set iff sector ``k`` of hyperplane ``i`` contains the
    whole region, i.e. every implied bound ``D(k, j)`` is at most
    ``v_ij - v_ik``.
    """
    _check_type(arr, T)
    D = _closure_of(arr, T)
    if D is None:
        raise InfeasibleError("the region of this type is empty")
    return _saturate_closed(arr.scaled, D, arr.n, arr.d)


def cell_dimension(arr: Arrangement, T: TypeMatrix) -> int:
    """Number of forced-equality classes of coordinates, minus one."""
    _check_type(arr, T)
    D = _closure_of(arr, T)
    if D is None:
        raise InfeasibleError("the region of this type is empty")
    return _dim_closed(D)


def relative_interior_point(arr: Arrangement, T: TypeMatrix):
    """A point in the relatively open cell of the saturated type ``T``.

    Every bound not forced to equality is made strict, and a solution of the
    resulting mixed system is produced exactly.
    """
    _check_type(arr, T)
    V = arr.as_rows()
    D = closure(arr.d, _type_edges(V, T))
    if D is None:
        raise InfeasibleError("the region of this type is empty")
    classes = forced_classes(D)
    cls = {x: c for c, group in enumerate(classes) for x in group}
    edges = []
    for k, j, c in _type_edges(V, T):
        s = 0 if cls[k] == cls[j] else -1
        edges.append((k, j, (c, s)))
    pot = lex_potentials(arr.d, edges)
    if pot is None:  # pragma: no cover - relative interiors are nonempty
        raise InfeasibleError("no relative-interior point")
    return normalize(pot)


def join(S: TypeMatrix, T: TypeMatrix) -> TypeMatrix:
    """Entrywise maximum of two type matrices."""
    return tuple(tuple(a | b for a, b in zip(r, s)) for r, s in zip(S, T))


@dataclass(frozen=True, order=True)
class Cell:
    """A closed cell of the decomposition, keyed by its saturated fine type."""

    dim: int
    type: TypeMatrix
    coarse: tuple[int, ...] = field(compare=False)
    bounded: bool = field(compare=False)

    @classmethod
    def from_type(cls, T: TypeMatrix, dim: int) -> "Cell":
        coarse = column_sums(T)
        return cls(dim=dim, type=T, coarse=coarse, bounded=all(c >= 1 for c in coarse))

    @property
    def cotype(self) -> TypeMatrix:
        return tuple(tuple(1 - x for x in row) for row in self.type)

    @property
    def coarse_cotype(self) -> tuple[int, ...]:
        n = len(self.type)
        return tuple(n - c for c in self.coarse)


@dataclass(frozen=True)
class TropicalComplex:
    """Cells plus cover relations of the face poset.

    ``covers`` holds index pairs ``(face, cofacet)`` into ``cells`` with the
    face one dimension lower.  Faces have entrywise larger types.
    """

    arrangement: Arrangement
    cells: tuple[Cell, ...]
    covers: frozenset[tuple[int, int]]

    @cached_property
    def index(self) -> dict[TypeMatrix, int]:
        return {c.type: i for i, c in enumerate(self.cells)}

    @cached_property
    def facets(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.cells]
        for f, c in self.covers:
            out[c].append(f)
        return tuple(tuple(sorted(x)) for x in out)

    @cached_property
    def cofacets(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.cells]
        for f, c in self.covers:
            out[f].append(c)
        return tuple(tuple(sorted(x)) for x in out)

    @property
    def ambient_dim(self) -> int:
        return self.arrangement.d - 1

    def f_vector(self) -> tuple[int, ...]:
        f = [0] * (self.ambient_dim + 1)
        for c in self.cells:
            f[c.dim] += 1
        return tuple(f)

    def cells_of_dim(self, k: int) -> list[int]:
        return [i for i, c in enumerate(self.cells) if c.dim == k]

    def maximal(self) -> list[int]:
        """Cells with no cofacet (inclusion-maximal)."""
        return [i for i, cof in enumerate(self.cofacets) if not cof]

    def minimal(self) -> list[int]:
        """Cells with no facet (inclusion-minimal)."""
        return [i for i, fac in enumerate(self.facets) if not fac]

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self.cells)

    def locate(self, p) -> int:
        """Index of the cell whose relatively open region contains ``p``."""
        return self.index[fine_type(self.arrangement, p)]

    def subcomplex(self, keep: Iterable[int]) -> "TropicalComplex":
        keep = sorted(set(keep))
        remap = {old: new for new, old in enumerate(keep)}
        cells = tuple(self.cells[i] for i in keep)
        covers = frozenset(
            (remap[f], remap[c]) for f, c in self.covers if f in remap and c in remap
        )
        return TropicalComplex(self.arrangement, cells, covers)

    def vertex_point(self, i: int):
        """Coordinates of a 0-cell."""
        if self.cells[i].dim != 0:
            raise ValueError("not a vertex")
        return relative_interior_point(self.arrangement, self.cells[i].type)


def maximal_cells(arr: Arrangement, node_limit: int = DEFAULT_NODE_LIMIT) -> list[TypeMatrix]:
    """Saturated types of all full-dimensional cells, in lexicographic order.

    Depth-first over sector choices ``sigma in [d]^n``; a prefix survives only
    while its region stays full-dimensional.
    """
    V = arr.scaled
    n, d = arr.n, arr.d
    found = []
    nodes = 0
    start = [[0 if k == j else inf for j in range(d)] for k in range(d)]

    def full_dim(D):
        return all(D[k][j] + D[j][k] > 0 for k in range(d) for j in range(k + 1, d))

    def rec(i, D, sigma):
        nonlocal nodes
        if i == n:
            found.append(tuple(sigma))
            return
        vi = V[i]
        for k in range(d):
            nodes += 1
            if nodes > node_limit:
                raise ResourceLimitError(
                    f"maximal-cell search exceeded {node_limit} nodes"
                )
            edges = [(k, j, vi[j] - vi[k]) for j in range(d) if j != k]
            D2 = add_edges(D, edges)
            if D2 is None or not full_dim(D2):
                continue
            sigma.append(k)
            rec(i + 1, D2, sigma)
            sigma.pop()

    rec(0, start, [])
    out = []
    for sigma in found:
        T = tuple(tuple(1 if k == s else 0 for k in range(d)) for s in sigma)
        out.append(saturate(arr, T))
    return sorted(set(out))


def enumerate_cells(arr: Arrangement, node_limit: int = DEFAULT_NODE_LIMIT) -> TropicalComplex:
    """All cells of the type decomposition with their cover relations."""
    V = arr.scaled
    n, d = arr.n, arr.d
    tops = maximal_cells(arr, node_limit=node_limit)
    info: dict[TypeMatrix, tuple[int, list]] = {}
    queue = []
    for T in tops:
        D = closure(d, _type_edges(V, T))
        info[T] = (d - 1, D)
        queue.append(T)
    covers = set()
    work = 0
    while queue:
        T = queue.pop()
        dim, D = info[T]
        if dim == 0:
            continue
        for i in range(n):
            vi = V[i]
            for k in range(d):
                if T[i][k]:
                    continue
                work += 1
                if work > node_limit:
                    raise ResourceLimitError(f"face enumeration exceeded {node_limit} steps")
                edges = [(k, j, vi[j] - vi[k]) for j in range(d) if j != k]
                D2 = add_edges(D, edges)
                if D2 is None:
                    continue
                S = _saturate_closed(V, D2, n, d)
                if S not in info:
                    info[S] = (_dim_closed(D2), D2)
                    queue.append(S)
                if info[S][0] == dim - 1:
                    covers.add((S, T))
    cells = sorted(Cell.from_type(T, dim) for T, (dim, _) in info.items())
    index = {c.type: i for i, c in enumerate(cells)}
    cover_idx = frozenset((index[a], index[b]) for a, b in covers)
    return TropicalComplex(arr, tuple(cells), cover_idx)


def bounded_subcomplex(tc: TropicalComplex) -> TropicalComplex:
    """Cells whose coarse type is positive in every coordinate."""
    return tc.subcomplex(i for i, c in enumerate(tc.cells) if c.bounded)


# -- the dual regular subdivision of a product of two simplices --

DualCell = frozenset  # of (i, j) pairs, 0-based


def support(T: TypeMatrix) -> frozenset[tuple[int, int]]:
    return frozenset((i, k) for i, row in enumerate(T) for k, x in enumerate(row) if x)


def dual_subdivision(tc: TropicalComplex) -> dict[frozenset, int]:
    """Dual cell of each tropical cell, mapped to the tropical cell's index."""
    return {support(c.type): i for i, c in enumerate(tc.cells)}


def dual_dimension(cell: frozenset, n: int, d: int) -> int:
    """Affine dimension of ``conv{(e_i, e_j)}``: touched nodes minus components minus one."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in cell:
        a, b = ("r", i), ("c", j)
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    comps = len({find(x) for x in parent})
    return len(parent) - comps - 1


def is_fine(tc: TropicalComplex) -> bool:
    """Whether every maximal dual cell (dual to a vertex) is a simplex."""
    n, d = tc.arrangement.n, tc.arrangement.d
    return all(sum(map(sum, tc.cells[i].type)) == n + d - 1 for i in tc.cells_of_dim(0))


def envelope_is_face(arr: Arrangement, cell: Iterable[tuple[int, int]]) -> bool:
    """Independent check that ``cell`` is a face of the lower envelope.

    Decides whether some ``(y, z)`` satisfies ``y_i + z_j <= v_ij`` with
    equality exactly on ``cell``.  Unknowns: ``u_i = -y_i`` (nodes 0..n-1) and
    ``z_j`` (nodes n..n+d-1), so each inequality is ``z_j - u_i <= v_ij``.
    """
    cell = set(cell)
    V = arr.scaled
    n, d = arr.n, arr.d
    edges = []
    for i in range(n):
        for j in range(d):
            v = V[i][j]
            if (i, j) in cell:
                edges.append((i, n + j, (v, 0)))
                edges.append((n + j, i, (-v, 0)))
            else:
                edges.append((i, n + j, (v, -1)))
    return lex_feasible(n + d, edges)


def crosscut_complex(subdivision: Iterable[frozenset]) -> list[frozenset]:
    """Facets of the crosscut complex: inclusion-maximal dual cells, sorted."""
    cells = sorted(set(subdivision), key=lambda s: (-len(s), sorted(s)))
    facets: list[frozenset] = []
    for c in cells:
        if not any(c < f for f in facets):
            facets.append(c)
    return sorted(facets, key=sorted)
