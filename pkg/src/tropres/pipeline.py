"""End-to-end pipelines: face poset of the tropical complex, generators, full checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from .complex import (
    TropicalComplex,
    bounded_subcomplex,
    crosscut_complex,
    dual_dimension,
    dual_subdivision,
    enumerate_cells,
    envelope_is_face,
    is_fine,
    relative_interior_point,
    saturate,
)
from .ideals import (
    MonomialIdeal,
    VariableSpace,
    alexander_dual,
    coarse_type_ideal,
    coarsen,
    cotype_ideal,
    format_monomial,
    fine_type_ideal,
    maximal_ideal_power,
    stable_betti,
)
from .io import ArrangementDocument
from .mixed import from_tropical_complex, lattice_points, embed_mixed_cell
from .resolutions import (
    betti_table,
    check_boundary_squared,
    check_minimality,
    fvector_from_betti,
    generic_fvector,
    labeled_complex,
    resolve,
    verify_resolution,
)
from .tropical import Arrangement, fine_type

__all__ = [
    "ConsistencyError",
    "FacePosetReport",
    "stanley_reisner_from_crosscut",
    "face_poset_from_points",
    "generate_random_generic",
    "verify_all",
    "RUNNING_EXAMPLE",
    "NONGENERIC_EXAMPLE",
]

RUNNING_EXAMPLE = [[0, 3, 6], [0, 5, 2], [0, 0, 1], [1, 5, 0]]
NONGENERIC_EXAMPLE = [[0, 1, 1], [0, 0, 1], [0, 1, 0]]

LABELINGS = ("fine_type", "coarse_type", "fine_cotype", "coarse_cotype")


class ConsistencyError(RuntimeError):
    """Two independent routes to the same object disagree."""

    def __init__(self, message, left=None, right=None):
        super().__init__(message)
        self.left = left
        self.right = right


def stanley_reisner_from_crosscut(
    facets: Iterable[Iterable[tuple[int, int]]], n: int, d: int
) -> MonomialIdeal:
    """Minimal non-faces of the simplicial complex with the given facets.

    Vertices are the pairs ``(i, j)`` of an ``n x d`` grid.  Candidates of size
    ``k + 1`` are grown from faces of size ``k`` and kept as minimal non-faces
    when every ``k``-subset is a face but no facet contains them.
    """
    nv = n * d
    masks = [sum(1 << (i * d + j) for i, j in f) for f in facets]

    def is_face(m):
        return any(m & f == m for f in masks)

    nonfaces = []
    level = []
    for v in range(nv):
        m = 1 << v
        (level if is_face(m) else nonfaces).append(m)
    while level:
        faces = set(level)
        nxt = set()
        for m in level:
            top = m.bit_length()
            for v in range(top, nv):
                cand = m | (1 << v)
                # every subset dropping one vertex must be a face
                ok = True
                rest = cand
                while rest:
                    low = rest & -rest
                    rest ^= low
                    if low != (1 << v) and (cand ^ low) not in faces:
                        ok = False
                        break
                if not ok:
                    continue
                if is_face(cand):
                    nxt.add(cand)
                else:
                    nonfaces.append(cand)
        level = sorted(nxt)
    space = VariableSpace.grid(n, d)
    gens = [tuple((m >> v) & 1 for v in range(nv)) for m in set(nonfaces)]
    return MonomialIdeal(gens, space)


@dataclass
class FacePosetReport:
    """Face poset of the bounded complex plus its algebraic invariants."""

    cells: list[dict]
    covers: list[tuple[int, int]]
    betti_fine: list[tuple[int, tuple[int, ...], int]]
    betti_coarse: list[tuple[int, int, int]]
    f_vector: tuple[int, ...]
    bounded_f_vector: tuple[int, ...]
    stanley_reisner: MonomialIdeal
    cotype_ideal: MonomialIdeal
    resolution_ranks: tuple[int, ...]
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "cells": self.cells,
            "covers": [list(c) for c in self.covers],
            "betti_fine": [
                [i, format_monomial(deg, self.cotype_ideal.space), m] for i, deg, m in self.betti_fine
            ],
            "betti_coarse": [list(r) for r in self.betti_coarse],
            "f_vector": list(self.f_vector),
            "bounded_f_vector": list(self.bounded_f_vector),
            "stanley_reisner_ideal": self.stanley_reisner.to_text(),
            "fine_cotype_ideal": self.cotype_ideal.to_text(),
            "resolution_ranks": list(self.resolution_ranks),
            "notes": self.notes,
        }


def _rows(T):
    return [[k + 1 for k, x in enumerate(row) if x] for row in T]


def face_poset_from_points(doc, tc: TropicalComplex | None = None) -> FacePosetReport:
    """Face poset of the bounded complex, computed along two independent routes.

    Route one: dual subdivision, its crosscut complex, the Stanley-Reisner
    ideal of minimal non-faces and its Alexander dual.  Route two: the fine
    cotypes of the enumerated vertices.  They must agree; the bounded
    complex then has to resolve that ideal minimally.
    """
    arr = doc.arrangement() if isinstance(doc, ArrangementDocument) else doc
    if tc is None:
        tc = enumerate_cells(arr)
    n, d = arr.n, arr.d
    facets = crosscut_complex(dual_subdivision(tc))
    sr = stanley_reisner_from_crosscut(facets, n, d)
    via_crosscut = alexander_dual(sr, (1,) * (n * d))
    direct = cotype_ideal(tc, "fine")
    if via_crosscut != direct:
        raise ConsistencyError(
            "cotype ideal from the crosscut complex differs from direct enumeration: "
            f"{via_crosscut.to_text()} vs {direct.to_text()}",
            via_crosscut,
            direct,
        )
    ac, ideal = resolve(tc, "fine_cotype")
    report = verify_resolution(ac, ideal)
    if not report.ok or not check_minimality(ac):
        raise ConsistencyError(f"bounded complex does not minimally resolve the cotype ideal: {report.failures[:3]}")
    bt = betti_table(ac)
    bc = bounded_subcomplex(tc)
    notes = []
    if direct.is_unit:
        notes.append("degenerate: the cotype ideal is the unit ideal (single vertex in every sector)")
    cells = [
        {
            "dim": c.dim,
            "fine_type": _rows(c.type),
            "coarse_type": list(c.coarse),
            "bounded": c.bounded,
        }
        for c in bc.cells
    ]
    return FacePosetReport(
        cells=cells,
        covers=sorted(bc.covers),
        betti_fine=bt.rows(),
        betti_coarse=sorted((i, deg, m) for (i, deg), m in bt.coarse.items()),
        f_vector=tc.f_vector(),
        bounded_f_vector=bc.f_vector(),
        stanley_reisner=sr,
        cotype_ideal=direct,
        resolution_ranks=ac.ranks,
        notes=notes,
    )


def generate_random_generic(
    n: int, d: int, seed: int, low: int = -10**6, high: int = 10**6, max_tries: int = 200
) -> ArrangementDocument:
    """Seeded integer apices, resampled until the dual subdivision is fine."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        pts = [[rng.randint(low, high) for _ in range(d)] for _ in range(n)]
        arr = Arrangement.from_points(pts)
        if is_fine(enumerate_cells(arr)):
            return ArrangementDocument(
                [list(r) for r in arr.raw], name=f"random-{n}-{d}-{seed}", seed=seed, generic=True
            )
    raise RuntimeError(f"no generic arrangement found in {max_tries} tries")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def _check(checks, name, fn):
    try:
        res = fn()
    except Exception as exc:  # a crashing check is a failed check
        checks.append(Check(name, False, f"{type(exc).__name__}: {exc}"))
        return
    if isinstance(res, tuple):
        ok, detail = res
    else:
        ok, detail = bool(res), ""
    checks.append(Check(name, ok, detail))


def verify_all(doc, primes=(2, 3), tc: TropicalComplex | None = None) -> tuple[int, list[Check]]:
    """Run every invariant suite; status 1 iff some check fails."""
    arr = doc.arrangement() if isinstance(doc, ArrangementDocument) else doc
    n, d = arr.n, arr.d
    checks: list[Check] = []
    if len(set(arr.apices)) < n:
        checks.append(Check("note: duplicate apices (degenerate input)", True, "reported"))
    if tc is None:
        tc = enumerate_cells(arr)
    generic = is_fine(tc)
    checks.append(Check(f"note: arrangement is {'generic' if generic else 'not generic'}", True))

    def witnesses():
        for c in tc.cells:
            p = relative_interior_point(arr, c.type)
            if fine_type(arr, p) != c.type or saturate(arr, c.type) != c.type:
                return False, f"cell {c.type}"
        return True

    _check(checks, "relative-interior witnesses have the cell's type", witnesses)
    _check(
        checks,
        "alternating face count equals (-1)^(d-1)",
        lambda: (tc.euler_characteristic() == (-1) ** (d - 1), str(tc.f_vector())),
    )

    def colabel():
        for i, c in enumerate(tc.cells):
            cof = tc.cofacets[i]
            if cof:
                acc = tc.cells[cof[0]].type
                for j in cof[1:]:
                    acc = tuple(tuple(a | b for a, b in zip(r, s)) for r, s in zip(acc, tc.cells[j].type))
                if acc != c.type:
                    return False, f"type of cell {i}"
            fac = tc.facets[i]
            if c.dim >= 1 and c.bounded:
                acc = tc.cells[fac[0]].cotype
                for j in fac[1:]:
                    acc = tuple(tuple(a | b for a, b in zip(r, s)) for r, s in zip(acc, tc.cells[j].cotype))
                if acc != c.cotype:
                    return False, f"cotype of cell {i}"
        return True

    _check(checks, "types colabel and cotypes label the complex", colabel)
    _check(
        checks,
        "coarse types differ across every cover",
        lambda: all(tc.cells[a].coarse != tc.cells[b].coarse for a, b in tc.covers),
    )

    def injective():
        tops = [tc.cells[i].coarse for i in tc.cells_of_dim(d - 1)]
        return len(set(tops)) == len(tops) and all(sum(t) == n for t in tops)

    _check(checks, "coarse type is injective on maximal cells", injective)
    _check(
        checks,
        "dual cell dimensions complement cell dimensions",
        lambda: all(
            dual_dimension(s, n, d) + tc.cells[i].dim == n + d - 2
            for s, i in dual_subdivision(tc).items()
        ),
    )
    _check(
        checks,
        "every dual cell is a face of the lower envelope",
        lambda: all(envelope_is_face(arr, s) for s in dual_subdivision(tc)),
    )

    for lab in LABELINGS:
        def res_check(lab=lab):
            lc = labeled_complex(tc, lab)
            if not check_boundary_squared(lc.dims, lc.covers, lc.eps):
                return False, "boundary squared is nonzero"
            ac, ideal = resolve(tc, lab)
            if not ac.composition_vanishes():
                return False, "differentials do not compose to zero"
            for p in (None, *primes):
                rep = verify_resolution(ac, ideal, p)
                if not rep.ok:
                    return False, f"{rep.field}: {rep.failures[:2]}"
            if not check_minimality(ac):
                return False, "not minimal"
            return True, f"ranks {ac.ranks}"

        _check(checks, f"{lab} complex is a minimal resolution", res_check)

    def betti_f():
        ac, _ = resolve(tc, "coarse_type")
        f, fb = fvector_from_betti(betti_table(ac), n, d)
        return f == tc.f_vector() and fb == bounded_subcomplex(tc).f_vector(), f"{f} {fb}"

    _check(checks, "f-vector equals coarse Betti numbers", betti_f)
    _check(
        checks,
        "coarsening the fine ideals gives the coarse ideals",
        lambda: coarsen(fine_type_ideal(tc)) == coarse_type_ideal(tc)
        and coarsen(cotype_ideal(tc, "fine")) == cotype_ideal(tc, "coarse"),
    )

    def alexander():
        I = coarse_type_ideal(tc).without(lambda g: max(g) == n)
        dual = alexander_dual(I, (n - 1,) * d)
        return dual == cotype_ideal(tc, "coarse"), dual.to_text()

    _check(checks, "coarse cotype ideal is the Alexander dual of the coarse type ideal", alexander)
    _check(
        checks,
        "crosscut route reproduces the fine cotype ideal",
        lambda: face_poset_from_points(arr, tc=tc) is not None,
    )

    def mixed():
        ms = from_tropical_complex(tc)
        if any(ms.cells[i].dim != d - 1 - tc.cells[i].dim for i in range(len(tc.cells))):
            return False, "dimension mismatch"
        if ms.fine != generic:
            return False, "fineness disagrees"
        if generic:
            pts = sorted(embed_mixed_cell(ms.cells[i], d)[0] for i in ms.vertices())
            if pts != lattice_points(n, d):
                return False, "vertex cells are not the lattice points"
        return True

    _check(checks, "mixed subdivision is consistent", mixed)

    if generic:
        _check(
            checks,
            "generic f-vector formula",
            lambda: (tc.f_vector() == generic_fvector(n, d), str(generic_fvector(n, d))),
        )
        _check(
            checks,
            "generic coarse type ideal is the n-th power of the maximal ideal",
            lambda: coarse_type_ideal(tc) == maximal_ideal_power(n, d),
        )

        def stable():
            ac, _ = resolve(tc, "coarse_type")
            bt = betti_table(ac)
            return all(bt.total(i) == stable_betti(n, d, i) for i in range(d))

        _check(checks, "generic Betti numbers match the strongly stable formula", stable)
    status = 0 if all(c.passed for c in checks) else 1
    return status, checks
