"""Monomial ideals attached to an arrangement, Alexander duality and coarsening.

Monomials are exponent tuples.  A :class:`VariableSpace` says how to name
them: ``d`` coarse variables ``x1..xd`` or an ``n x d`` grid ``x_{ij}``
ordered row-major.  Ideals always store a minimal generating set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .complex import TropicalComplex

__all__ = [
    "VariableSpace",
    "MonomialIdeal",
    "minimalize",
    "divides",
    "lcm",
    "format_monomial",
    "parse_monomial",
    "fine_type_ideal",
    "coarse_type_ideal",
    "cotype_ideal",
    "alexander_dual",
    "coarsen",
    "stable_betti",
    "maximal_ideal_power",
]

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class VariableSpace:
    """Either ``d`` coarse variables (``rows is None``) or an ``rows x cols`` grid."""

    cols: int
    rows: int | None = None

    @classmethod
    def coarse(cls, d: int) -> "VariableSpace":
        return cls(d)

    @classmethod
    def grid(cls, n: int, d: int) -> "VariableSpace":
        return cls(d, n)

    @property
    def is_grid(self) -> bool:
        return self.rows is not None

    @property
    def nvars(self) -> int:
        return self.cols * (self.rows or 1)

    def name(self, v: int) -> str:
        if not self.is_grid:
            return f"x{v + 1}"
        i, j = divmod(v, self.cols)
        if self.rows < 10 and self.cols < 10:
            return f"x{i + 1}{j + 1}"
        return f"x{i + 1}_{j + 1}"


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _minimal(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    # Sorting by degree first means a divisor is always seen before its multiples.
    out: list[Monomial] = []
    for g in sorted(set(gens), key=lambda m: (sum(m), m)):
        if not any(divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out))


class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    The zero ideal has no generators; the unit ideal has the single
    generator ``(0, ..., 0)``.
    """

    __slots__ = ("space", "gens")

    def __init__(self, gens: Iterable[Sequence[int]], space: VariableSpace):
        gens = [tuple(int(x) for x in g) for g in gens]
        for g in gens:
            if len(g) != space.nvars:
                raise ValueError(
                    f"monomial of length {len(g)} in a space of {space.nvars} variables"
                )
            if any(x < 0 for x in g):
                raise ValueError("negative exponent")
        self.space = space
        self.gens = _minimal(gens)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.space == other.space and self.gens == other.gens

    def __hash__(self):
        return hash((self.space, self.gens))

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, m) -> bool:
        m = tuple(m)
        return any(divides(g, m) for g in self.gens)

    def __repr__(self):
        return f"MonomialIdeal({self.to_text()})"

    @property
    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def degrees(self) -> list[int]:
        return sorted(sum(g) for g in self.gens)

    def is_artinian(self) -> bool:
        """Whether some power of every variable lies in the ideal."""
        m = self.space.nvars
        for v in range(m):
            if not any(all(g[w] == 0 for w in range(m) if w != v) for g in self.gens):
                return False
        return True

    def without(self, predicate) -> "MonomialIdeal":
        return MonomialIdeal((g for g in self.gens if not predicate(g)), self.space)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.space != other.space:
            raise ValueError("ideals live in different variable spaces")
        return MonomialIdeal((lcm(f, g) for f in self.gens for g in other.gens), self.space)

    def to_text(self) -> str:
        """Canonical rendering: sorted generator list, e.g. ``<x1^2, x1*x2>``."""
        if self.is_zero:
            return "<0>"
        parts = sorted(self.gens, key=lambda g: (sum(g), tuple(-x for x in g)))
        return "<" + ", ".join(format_monomial(g, self.space) for g in parts) + ">"


def minimalize(gens: Iterable[Sequence[int]], space: VariableSpace) -> MonomialIdeal:
    """Drop every generator divisible by another one."""
    return MonomialIdeal(gens, space)


def format_monomial(m: Monomial, space: VariableSpace) -> str:
    factors = []
    for v, e in enumerate(m):
        if e == 1:
            factors.append(space.name(v))
        elif e > 1:
            factors.append(f"{space.name(v)}^{e}")
    return "*".join(factors) if factors else "1"


def parse_monomial(text: str, space: VariableSpace) -> Monomial:
    """Inverse of :func:`format_monomial`."""
    names = {space.name(v): v for v in range(space.nvars)}
    exps = [0] * space.nvars
    text = text.strip()
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        name, _, e = factor.strip().partition("^")
        if name not in names:
            raise ValueError(f"unknown variable {name!r}")
        exps[names[name]] += int(e) if e else 1
    return tuple(exps)


def _flatten(T) -> Monomial:
    return tuple(x for row in T for x in row)


def fine_type_ideal(tc: TropicalComplex) -> MonomialIdeal:
    """Generated by the fine types of the inclusion-maximal cells."""
    arr = tc.arrangement
    space = VariableSpace.grid(arr.n, arr.d)
    return MonomialIdeal((_flatten(tc.cells[i].type) for i in tc.maximal()), space)


def coarse_type_ideal(tc: TropicalComplex) -> MonomialIdeal:
    """Generated by the coarse types of the inclusion-maximal cells."""
    space = VariableSpace.coarse(tc.arrangement.d)
    return MonomialIdeal((tc.cells[i].coarse for i in tc.maximal()), space)


def cotype_ideal(tc: TropicalComplex, granularity: str = "fine") -> MonomialIdeal:
    """Generated by the (fine or coarse) cotypes of the vertices.

    With a single hyperplane the only vertex lies in every sector, so the
    result is the unit ideal.
    """
    arr = tc.arrangement
    verts = [tc.cells[i] for i in tc.cells_of_dim(0)]
    if granularity == "fine":
        space = VariableSpace.grid(arr.n, arr.d)
        return MonomialIdeal((_flatten(c.cotype) for c in verts), space)
    if granularity == "coarse":
        space = VariableSpace.coarse(arr.d)
        return MonomialIdeal((c.coarse_cotype for c in verts), space)
    raise ValueError(f"granularity must be 'fine' or 'coarse', not {granularity!r}")


def _irreducible(a: Sequence[int], b: Monomial, space: VariableSpace) -> MonomialIdeal:
    # m^{a \ b} = < x_i^(a_i + 1 - b_i) : b_i >= 1 >
    gens = []
    for i, bi in enumerate(b):
        if bi >= 1:
            e = [0] * len(b)
            e[i] = a[i] + 1 - bi
            gens.append(e)
    return MonomialIdeal(gens, space)


def alexander_dual(I: MonomialIdeal, a: Sequence[int]) -> MonomialIdeal:
    """The Alexander dual of ``I`` with respect to the exponent vector ``a``.

    Intersects the irreducible ideals ``m^{a \\ b}`` over the minimal
    generators ``b``, minimalizing after every step.
    """
    a = tuple(int(x) for x in a)
    if len(a) != I.space.nvars:
        raise ValueError("exponent vector has the wrong length")
    for b in I.gens:
        if not divides(b, a):
            raise ValueError(f"generator {format_monomial(b, I.space)} does not divide x^a")
    result = MonomialIdeal([(0,) * len(a)], I.space)
    for b in I.gens:
        result = result.intersect(_irreducible(a, b, I.space))
        if result.is_zero:
            break
    return result


def coarsen(I: MonomialIdeal) -> MonomialIdeal:
    """Image under ``x_ij -> x_j``."""
    if not I.space.is_grid:
        raise ValueError("coarsening needs an n x d grid of variables")
    d = I.space.cols
    space = VariableSpace.coarse(d)
    gens = []
    for g in I.gens:
        gens.append(tuple(sum(g[r * d + j] for r in range(I.space.rows)) for j in range(d)))
    return MonomialIdeal(gens, space)


def maximal_ideal_power(n: int, d: int) -> MonomialIdeal:
    """``<x_1, ..., x_d>^n``: all monomials of degree ``n``."""
    gens = [
        tuple(c.count(k) for k in range(d))
        for c in itertools.combinations_with_replacement(range(d), n)
    ]
    return MonomialIdeal(gens, VariableSpace.coarse(d))


def stable_betti(n: int, d: int, i: int) -> int:
    """Total ``i``-th Betti number of ``<x_1, ..., x_d>^n`` (strongly stable formula)."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if not 0 <= i <= d - 1:
        raise ValueError(f"homological index {i} outside 0..{d - 1}")
    return sum(comb(n - 2 + l, n - 1) * comb(l - 1, i) for l in range(1, d + 1))
