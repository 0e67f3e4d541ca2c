"""Acceptance criteria, one test per criterion.

Each test records a one-line verdict; the lines are printed as they happen
(visible with ``-s``) and again in the terminal summary.
"""

import contextlib
import itertools
import random
import time
from collections import Counter
from fractions import Fraction
from math import comb

import pytest

from tropres.complex import bounded_subcomplex, crosscut_complex, dual_subdivision, enumerate_cells, is_fine
from tropres.ideals import (
    MonomialIdeal,
    VariableSpace,
    alexander_dual,
    coarse_type_ideal,
    cotype_ideal,
    maximal_ideal_power,
    parse_monomial,
    stable_betti,
)
from tropres.mixed import embed_mixed_cell, from_tropical_complex, hypersimplex_orbit_types, hypersimplex_vertices, lattice_points
from tropres.pipeline import NONGENERIC_EXAMPLE, RUNNING_EXAMPLE, generate_random_generic, stanley_reisner_from_crosscut
from tropres.resolutions import betti_table, check_minimality, generic_fvector, resolve, verify_resolution
from tropres.tropical import Arrangement, coarse_type, fine_type, trop_segment_point, type_from_rows

from strategies import small_arrangements

RESULTS: dict[int, str] = {}

GRID = [(n, d) for n in range(1, 6) for d in range(1, 5)]
SEEDS = (0, 1, 2)
LABELINGS = ("fine_type", "coarse_type", "fine_cotype", "coarse_cotype")


@contextlib.contextmanager
def criterion(k, text):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        line = f"criterion {k}: FAIL  {text} ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        RESULTS[k] = line
        print(line)
        raise
    line = f"criterion {k}: PASS  {text} [{time.perf_counter() - start:.2f}s]"
    RESULTS[k] = line
    print(line)


def grid_ideal(text, n, d):
    space = VariableSpace.grid(n, d)
    return MonomialIdeal([parse_monomial(t, space) for t in text.split(",")], space)


_generic_cache: dict = {}


def generic(n, d, seed):
    key = (n, d, seed)
    if key not in _generic_cache:
        arr = generate_random_generic(n, d, seed).arrangement()
        _generic_cache[key] = enumerate_cells(arr)
    return _generic_cache[key]


def test_criterion_1_running_example():
    with criterion(1, "running example: 15 two-cells, 3 bounded, one maximal bounded edge at v1, types at (0,1,0)"):
        start = time.perf_counter()
        arr = Arrangement.from_points(RUNNING_EXAMPLE)
        tc = enumerate_cells(arr)
        twos = [tc.cells[i] for i in tc.cells_of_dim(2)]
        assert len(twos) == 15
        assert sum(c.bounded for c in twos) == 3
        bc = bounded_subcomplex(tc)
        max_edges = [i for i in bc.maximal() if bc.cells[i].dim == 1]
        assert len(max_edges) == 1
        # v1 is the vertex lying in every sector of the first hyperplane
        ends = [bc.cells[f] for f in bc.facets[max_edges[0]]]
        assert any(all(c.type[0]) for c in ends)
        assert fine_type(arr, [0, 1, 0]) == type_from_rows([[0], [0], [1], [2]], 3)
        assert coarse_type(arr, [0, 1, 0]) == (2, 1, 1)
        assert time.perf_counter() - start < 1.0


def test_criterion_2_worked_example():
    with criterion(2, "worked non-generic example: 7 quadrics, 4 dual generators, ranks (4,4,1), coarse Betti"):
        start = time.perf_counter()
        tc = enumerate_cells(Arrangement.from_points(NONGENERIC_EXAMPLE))
        sr = stanley_reisner_from_crosscut(crosscut_complex(dual_subdivision(tc)), 3, 3)
        assert sr == grid_ideal("x12*x21, x12*x23, x13*x31, x23*x31, x13*x32, x21*x32, x23*x32", 3, 3)
        dual = alexander_dual(sr, (1,) * 9)
        assert dual == grid_ideal("x13*x21*x23, x12*x13*x23*x32, x12*x31*x32, x21*x23*x31*x32", 3, 3)
        assert dual == cotype_ideal(tc, "fine")
        ac, I = resolve(tc, "fine_cotype")
        assert ac.ranks == (4, 4, 1)
        assert verify_resolution(ac, I).ok
        assert dict(betti_table(ac).coarse) == {(0, 3): 2, (0, 4): 2, (1, 5): 4, (2, 6): 1}
        assert time.perf_counter() - start < 1.0


def test_criterion_3_generic_formula():
    with criterion(3, "generic f-vector, coarse type ideal m^n and stable Betti numbers, n<=5, d<=4, 3 seeds"):
        start = time.perf_counter()
        for n, d in GRID:
            for seed in SEEDS:
                tc = generic(n, d, seed)
                assert is_fine(tc), (n, d, seed)
                assert tc.f_vector() == generic_fvector(n, d), (n, d, seed)
                assert coarse_type_ideal(tc) == maximal_ideal_power(n, d), (n, d, seed)
                ac, _ = resolve(tc, "coarse_type")
                bt = betti_table(ac)
                assert bt.totals() == tuple(stable_betti(n, d, i) for i in range(d)), (n, d, seed)
        assert time.perf_counter() - start < 60.0


def _test_arrangements():
    out = [enumerate_cells(Arrangement.from_points(pts)) for pts in small_arrangements()]
    out += [generic(n, d, 0) for n, d in GRID]
    return out


def test_criterion_4_resolutions_verified():
    with criterion(4, "all four (co)cellular complexes exact over QQ, GF(2), GF(3) and minimal on every test arrangement"):
        failures = []
        for tc in _test_arrangements():
            for lab in LABELINGS:
                ac, I = resolve(tc, lab)
                for p in (None, 2, 3):
                    rep = verify_resolution(ac, I, p)
                    if not rep.ok:
                        failures.append((tc.arrangement.as_rows(), lab, rep.field, rep.failures[:1]))
                if not check_minimality(ac):
                    failures.append((tc.arrangement.as_rows(), lab, "minimality"))
        assert not failures, failures[:3]


def test_criterion_5_alexander_duality():
    with criterion(5, "coarse cotype ideal is the Alexander dual of the coarse type ideal minus pure powers"):
        for tc in _test_arrangements():
            n, d = tc.arrangement.n, tc.arrangement.d
            I = coarse_type_ideal(tc).without(lambda g: max(g) == n)
            assert alexander_dual(I, (n - 1,) * d) == cotype_ideal(tc, "coarse"), tc.arrangement.as_rows()


def test_criterion_6_lattice_points():
    with criterion(6, "vertex cells of fine mixed subdivisions are the lattice points of n*simplex, n<=5, d<=4"):
        for n, d in GRID:
            for seed in SEEDS:
                ms = from_tropical_complex(generic(n, d, seed))
                assert ms.fine
                pts = sorted(embed_mixed_cell(ms.cells[i], d)[0] for i in ms.vertices())
                assert pts == lattice_points(n, d)
                assert len(pts) == comb(n + d - 1, d - 1)


def test_criterion_7_hypersimplex():
    with criterion(7, "hypersimplex maximal coarse types match the orbit formula; maximal cells unbounded"):
        for k, n in [(2, 4), (2, 5), (3, 5)]:
            start = time.perf_counter()
            tc = enumerate_cells(hypersimplex_vertices(k, n))
            tops = [tc.cells[i] for i in tc.cells_of_dim(n - 1)]
            orbits = {tuple(sorted(c.coarse, reverse=True)) for c in tops}
            assert orbits == set(hypersimplex_orbit_types(k, n)), (k, n, orbits)
            assert time.perf_counter() - start < 120.0
        for k, n in [(2, 3), (2, 4), (3, 4), (2, 5), (3, 5), (4, 5)]:
            tc = enumerate_cells(hypersimplex_vertices(k, n))
            assert all(not tc.cells[i].bounded for i in tc.cells_of_dim(n - 1)), (k, n)


def _coarse_multisets(tc):
    d = tc.arrangement.d
    return [Counter(tc.cells[i].coarse for i in tc.cells_of_dim(k)) for k in range(d)]


def test_criterion_8_invariance():
    with criterion(8, "independent generic seeds give identical per-dimension coarse type multisets"):
        for n, d in GRID:
            ref = _coarse_multisets(generic(n, d, 0))
            for seed in SEEDS[1:]:
                assert _coarse_multisets(generic(n, d, seed)) == ref, (n, d, seed)


def test_criterion_9_segments():
    with criterion(9, "1000 random max-segments per (n,d) respect the type sandwich and the coarse bound"):
        rng = random.Random(20240601)
        violations = []
        for n, d in GRID:
            if d < 2:
                continue
            # small integer apices and half-integer points so that ties are common
            arr = Arrangement.from_points([[rng.randint(-2, 2) for _ in range(d)] for _ in range(n)])
            for _ in range(1000):
                p = [Fraction(rng.randint(-6, 6), 2) for _ in range(d)]
                q = [Fraction(rng.randint(-6, 6), 2) for _ in range(d)]
                lam = Fraction(rng.randint(-6, 6), 2)
                mu = Fraction(rng.randint(-6, 6), 2)
                r = trop_segment_point(p, q, lam, mu)
                Tp, Tq, Tr = fine_type(arr, p), fine_type(arr, q), fine_type(arr, r)
                for rp, rq, rr in zip(Tp, Tq, Tr):
                    for a, b, c in zip(rp, rq, rr):
                        if not min(a, b) <= c <= max(a, b):
                            violations.append((n, d, p, q, lam, mu))
                cp, cq, cr = coarse_type(arr, p), coarse_type(arr, q), coarse_type(arr, r)
                if any(c > max(a, b) for a, b, c in zip(cp, cq, cr)):
                    violations.append((n, d, p, q, lam, mu, "coarse"))
        assert not violations, violations[:3]
