"""Mixed subdivisions of dilated simplices obtained through the Cayley trick.

A cell of type ``T`` in the decomposition of the torus becomes the mixed cell
``I_1 + ... + I_n`` of ``n * simplex`` with ``I_j`` the support of row ``j``.
Inclusions are reversed on the way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .complex import TropicalComplex, enumerate_cells
from .tropical import Arrangement

__all__ = [
    "MixedCell",
    "MixedSubdivision",
    "CalibrationError",
    "from_tropical_complex",
    "coarse_type_mixed",
    "dual_coarse_type",
    "staircase_cells",
    "staircase_subdivision",
    "cyclic_arrangement",
    "hypersimplex_vertices",
    "hypersimplex_orbit_types",
    "embed_mixed_cell",
    "lattice_points",
]


class CalibrationError(RuntimeError):
    """The cyclic arrangement did not reproduce the staircase cells for either sign."""


@dataclass(frozen=True, order=True)
class MixedCell:
    """A Minkowski sum of simplex faces, one part per hyperplane (0-based indices)."""

    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        if any(not p for p in self.parts):
            raise ValueError("mixed cell parts must be nonempty")

    @classmethod
    def from_type(cls, T) -> "MixedCell":
        return cls(tuple(frozenset(k for k, x in enumerate(row) if x) for row in T))

    @cached_property
    def dim(self) -> int:
        """Affine dimension of the Minkowski sum of the parts."""
        parent: dict[int, int] = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for part in self.parts:
            items = sorted(part)
            for x in items:
                parent.setdefault(x, x)
            for x in items[1:]:
                ra, rb = find(items[0]), find(x)
                if ra != rb:
                    parent[rb] = ra
        return len(parent) - len({find(x) for x in parent})

    @property
    def fine_dim(self) -> int:
        """``sum(|I_j| - 1)``; equals ``dim`` iff the cell is fine."""
        return sum(len(p) - 1 for p in self.parts)

    def __repr__(self):
        return " + ".join("{" + ",".join(str(k + 1) for k in sorted(p)) + "}" for p in self.parts)


def coarse_type_mixed(tau: MixedCell, d: int) -> tuple[int, ...]:
    """Number of parts containing each index."""
    return tuple(sum(1 for p in tau.parts if k in p) for k in range(d))


def dual_coarse_type(tau: MixedCell) -> tuple[int, ...]:
    return tuple(len(p) for p in tau.parts)


@dataclass(frozen=True)
class MixedSubdivision:
    """Mixed cells of ``n * simplex_{d-1}`` with covers ``(face, cofacet)``."""

    n: int
    d: int
    cells: tuple[MixedCell, ...]
    covers: frozenset[tuple[int, int]]

    @cached_property
    def cofacets(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.cells]
        for f, c in self.covers:
            out[f].append(c)
        return tuple(tuple(sorted(x)) for x in out)

    def maximal(self) -> list[int]:
        return [i for i, cof in enumerate(self.cofacets) if not cof]

    def vertices(self) -> list[int]:
        return [i for i, c in enumerate(self.cells) if c.dim == 0]

    @property
    def fine(self) -> bool:
        return all(self.cells[i].dim == self.cells[i].fine_dim for i in self.maximal())

    def f_vector(self) -> tuple[int, ...]:
        f = [0] * self.d
        for c in self.cells:
            f[c.dim] += 1
        return tuple(f)

    def labels(self) -> list[tuple[int, ...]]:
        """Coarse-type labels, the lcm of vertex labels on each cell."""
        return [coarse_type_mixed(c, self.d) for c in self.cells]


def from_tropical_complex(tc: TropicalComplex) -> MixedSubdivision:
    """Transport a type decomposition to its mixed subdivision (reversing inclusions)."""
    arr = tc.arrangement
    cells = tuple(MixedCell.from_type(c.type) for c in tc.cells)
    covers = frozenset((c, f) for f, c in tc.covers)
    return MixedSubdivision(arr.n, arr.d, cells, covers)


def staircase_cells(n: int, d: int) -> list[MixedCell]:
    """Maximal cells from monotone sequences ``1 = b_1 <= ... <= b_{n+1} = d``."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    out = []
    for mid in itertools.combinations_with_replacement(range(d), n - 1):
        b = (0,) + mid + (d - 1,)
        out.append(MixedCell(tuple(frozenset(range(b[i], b[i + 1] + 1)) for i in range(n))))
    return sorted(out)


def _maximal_mixed(tc: TropicalComplex) -> list[MixedCell]:
    return sorted(MixedCell.from_type(tc.cells[i].type) for i in tc.cells_of_dim(0))


def cyclic_arrangement(n: int, d: int, return_sign: bool = False):
    """Apices ``v_ij = i * j`` (or the negated heights) realizing the staircase.

    The sign is calibrated: the one whose dual maximal cells coincide with
    :func:`staircase_cells` is used.
    """
    want = staircase_cells(n, d)
    for sign in (1, -1):
        arr = Arrangement.from_points(
            [[sign * i * j for j in range(1, d + 1)] for i in range(1, n + 1)]
        )
        if _maximal_mixed(enumerate_cells(arr)) == want:
            return (arr, sign) if return_sign else arr
    raise CalibrationError(f"no sign of i*j reproduces the staircase for n={n}, d={d}")


def staircase_subdivision(n: int, d: int) -> MixedSubdivision:
    """The staircase mixed subdivision with its face poset taken from the cyclic arrangement."""
    return from_tropical_complex(enumerate_cells(cyclic_arrangement(n, d)))


def hypersimplex_vertices(k: int, n: int) -> Arrangement:
    """All 0/1 vectors of length ``n`` with exactly ``k`` zeros, as apices."""
    if not 1 <= k <= n - 1:
        raise ValueError("need 1 <= k <= n - 1")
    pts = []
    for zeros in itertools.combinations(range(n), k):
        pts.append([0 if j in zeros else 1 for j in range(n)])
    return Arrangement.from_points(pts)


def hypersimplex_orbit_types(k: int, n: int) -> list[tuple[int, ...]]:
    """Coarse types of maximal cells up to symmetry, one per class ``alpha``.

    The first entry is ``C(n-alpha, k) + C(n-1, k-1)``, followed by
    ``C(n-2, k-1), ..., C(n-alpha, k-1)`` and ``n - alpha`` zeros.
    """
    from math import comb

    if not 2 <= k < n:
        raise ValueError("need 2 <= k < n")
    out = []
    for alpha in range(1, n - k + 2):
        head = comb(n - alpha, k) + comb(n - 1, k - 1)
        middle = [comb(n - m, k - 1) for m in range(2, alpha + 1)]
        out.append(tuple([head] + middle + [0] * (n - alpha)))
    return out


def embed_mixed_cell(tau: MixedCell, d: int) -> list[tuple[int, ...]]:
    """Distinct points ``sum_j e_{c_j}`` with ``c_j in I_j`` (lattice points in ``sum x = n``)."""
    sums = {(0,) * d}
    for part in tau.parts:
        sums = {s[:k] + (s[k] + 1,) + s[k + 1:] for s in sums for k in part}
    return sorted(sums)


def lattice_points(n: int, d: int) -> list[tuple[int, ...]]:
    """Lattice points of ``n * simplex_{d-1}``."""
    return sorted(
        tuple(c.count(k) for k in range(d))
        for c in itertools.combinations_with_replacement(range(d), n)
    )
