"""Exact arithmetic on the tropical torus.

Points live in R^d modulo the all-ones line and are stored by their
canonical representative with first coordinate zero.  Every computation
here is exact over :class:`fractions.Fraction`; sector membership depends
on ties, so floating point is never used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

__all__ = [
    "TropicalPoint",
    "Arrangement",
    "normalize",
    "sector_contains",
    "fine_type",
    "coarse_type",
    "cotype",
    "coarse_cotype",
    "column_sums",
    "type_from_rows",
    "type_rows",
    "is_generic_point",
    "trop_segment_point",
    "distance",
    "trop_poly_eval",
]

# A type matrix is an n x d tuple of 0/1 tuples.
TypeMatrix = tuple[tuple[int, ...], ...]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite coordinate {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class TropicalPoint:
    """A point of the tropical torus, normalized so that ``coords[0] == 0``."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) == 0:
            raise ValueError("a tropical point needs at least one coordinate")
        if self.coords[0] != 0:
            raise ValueError("coords must be normalized; use normalize()")

    @property
    def dim(self) -> int:
        """Ambient number of coordinates ``d``."""
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __repr__(self):
        return "TropicalPoint(" + ", ".join(str(c) for c in self.coords) + ")"


def normalize(raw: Sequence) -> TropicalPoint:
    """Return the canonical representative ``raw - raw[0] * (1, ..., 1)``.

    >>> normalize([1, 6, 1])
    TropicalPoint(0, 5, 0)
    """
    if isinstance(raw, TropicalPoint):
        return raw
    coords = [_as_fraction(x) for x in raw]
    if not coords:
        raise ValueError("ambient dimension must be at least 1 (empty coordinate list)")
    first = coords[0]
    return TropicalPoint(tuple(c - first for c in coords))


@dataclass(frozen=True)
class Arrangement:
    """An ordered list of apices of max-tropical hyperplanes.

    The order matters: row ``i`` of every fine type refers to ``apices[i]``.
    """

    apices: tuple[TropicalPoint, ...]
    # Coordinates as given, before normalization.  Only the tropical
    # polynomial value and serialization depend on the representative.
    raw: tuple[tuple[Fraction, ...], ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.apices) == 0:
            raise ValueError("an arrangement needs at least one hyperplane")
        d = self.apices[0].dim
        if any(a.dim != d for a in self.apices):
            raise ValueError("all apices must share the ambient dimension")
        if self.raw is None:
            object.__setattr__(self, "raw", tuple(a.coords for a in self.apices))

    @classmethod
    def from_points(cls, points: Iterable[Sequence]) -> "Arrangement":
        raw = tuple(tuple(_as_fraction(x) for x in p) for p in points)
        return cls(tuple(normalize(p) for p in raw), raw=raw)

    @property
    def n(self) -> int:
        return len(self.apices)

    @property
    def d(self) -> int:
        return self.apices[0].dim

    @cached_property
    def scaled(self) -> tuple[tuple[int, ...], ...]:
        """Apex matrix multiplied by the common denominator, as Python ints.

        Sector and cell computations are invariant under positive scaling,
        so the combinatorial routines work on this integer copy.
        """
        den = 1
        for a in self.apices:
            for c in a:
                den = lcm(den, c.denominator)
        return tuple(tuple(int(c * den) for c in a) for a in self.apices)

    def as_rows(self) -> list[list[Fraction]]:
        return [list(a.coords) for a in self.apices]


def _check_dims(a: TropicalPoint, b: TropicalPoint):
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")


def sector_contains(apex, k: int, p, convention: str = "max") -> bool:
    """Whether ``p`` lies in the closed ``k``-th sector of the hyperplane at ``apex``.

    ``k`` is 0-based.  For the max convention this holds iff ``k`` attains
    ``min_i(apex_i - p_i)``; the min convention uses the maximum instead.
    """
    apex, p = normalize(apex), normalize(p)
    _check_dims(apex, p)
    if not 0 <= k < apex.dim:
        raise IndexError(f"sector index {k} out of range for d={apex.dim}")
    diffs = [a - x for a, x in zip(apex, p)]
    if convention == "max":
        return diffs[k] == min(diffs)
    if convention == "min":
        return diffs[k] == max(diffs)
    raise ValueError(f"unknown convention {convention!r}")


def _argmin_row(apex: Sequence, p: Sequence) -> tuple[int, ...]:
    diffs = [a - x for a, x in zip(apex, p)]
    m = min(diffs)
    return tuple(1 if x == m else 0 for x in diffs)


def fine_type(arr: Arrangement, p) -> TypeMatrix:
    """The n x d incidence matrix of closed sectors containing ``p``."""
    p = normalize(p)
    if p.dim != arr.d:
        raise ValueError(f"dimension mismatch: point has {p.dim}, arrangement {arr.d}")
    return tuple(_argmin_row(a, p) for a in arr.apices)


def column_sums(T: TypeMatrix) -> tuple[int, ...]:
    if not T:
        return ()
    return tuple(sum(col) for col in zip(*T))


def coarse_type(arr: Arrangement, p) -> tuple[int, ...]:
    return column_sums(fine_type(arr, p))


def cotype(T: TypeMatrix) -> TypeMatrix:
    """Entrywise complement of a type matrix."""
    return tuple(tuple(1 - x for x in row) for row in T)


def coarse_cotype(T: TypeMatrix) -> tuple[int, ...]:
    return column_sums(cotype(T))


def type_rows(T: TypeMatrix) -> tuple[frozenset[int], ...]:
    """Row supports of ``T`` (0-based sector indices)."""
    return tuple(frozenset(k for k, x in enumerate(row) if x) for row in T)


def type_from_rows(rows: Sequence[Iterable[int]], d: int) -> TypeMatrix:
    out = []
    for r in rows:
        s = set(r)
        if any(not 0 <= k < d for k in s):
            raise IndexError("sector index out of range")
        out.append(tuple(1 if k in s else 0 for k in range(d)))
    return tuple(out)


def is_generic_point(arr: Arrangement, p) -> bool:
    """True iff every per-hyperplane argmin is a singleton."""
    return all(sum(row) == 1 for row in fine_type(arr, p))


def trop_segment_point(p, q, lam, mu, variant: str = "max") -> TropicalPoint:
    """The point ``(lam (.) p) (+) (mu (.) q)`` of a tropical segment."""
    p, q = normalize(p), normalize(q)
    _check_dims(p, q)
    lam, mu = _as_fraction(lam), _as_fraction(mu)
    if variant == "max":
        op = max
    elif variant == "min":
        op = min
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return normalize([op(lam + a, mu + b) for a, b in zip(p, q)])


def distance(p, q) -> Fraction:
    """``max_{i<j} |p_i - p_j + q_j - q_i|``; zero iff the points coincide."""
    p, q = normalize(p), normalize(q)
    _check_dims(p, q)
    d = p.dim
    best = Fraction(0)
    for i in range(d):
        for j in range(i + 1, d):
            best = max(best, abs(p[i] - p[j] + q[j] - q[i]))
    return best


def trop_poly_eval(arr: Arrangement, p) -> tuple[Fraction, set[tuple[int, ...]]]:
    """Evaluate the max-tropicalized product of the linear forms at ``p``.

    The i-th factor is ``max_k (p_k - v_ik)`` with ``v_i`` taken as given
    (not normalized), matching the coefficients ``z^(-v_ik)``.  The returned set holds every
    exponent vector whose tropical monomial attains the maximum, i.e. all
    counts obtained by picking one maximizing index per factor.
    """
    p = [_as_fraction(x) for x in p]
    if len(p) != arr.d:
        raise ValueError("dimension mismatch")
    d = arr.d
    value = Fraction(0)
    exponents = {(0,) * d}
    for a in arr.raw:
        terms = [x - v for x, v in zip(p, a)]
        m = max(terms)
        value += m
        best = [k for k, t in enumerate(terms) if t == m]
        exponents = {e[:k] + (e[k] + 1,) + e[k + 1:] for e in exponents for k in best}
    return value, exponents
