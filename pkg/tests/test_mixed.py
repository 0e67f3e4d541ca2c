from math import comb

import pytest

from tropres.complex import enumerate_cells, is_fine
from tropres.ideals import coarse_type_ideal, maximal_ideal_power
from tropres.mixed import (
    MixedCell,
    coarse_type_mixed,
    cyclic_arrangement,
    dual_coarse_type,
    embed_mixed_cell,
    from_tropical_complex,
    hypersimplex_orbit_types,
    hypersimplex_vertices,
    lattice_points,
    staircase_cells,
    staircase_subdivision,
)
from tropres.resolutions import generic_fvector
from tropres.tropical import Arrangement


def cell(*parts):
    return MixedCell(tuple(frozenset(k - 1 for k in p) for p in parts))


def staircase_oracle(n, d):
    """Maximal staircase cells grown recursively: step right or step up."""
    if n == 1:
        return {(tuple(range(d)),)}
    out = set()
    for first in range(1, d + 1):
        for rest in staircase_oracle(n - 1, d - first + 1):
            shifted = tuple(tuple(k + first - 1 for k in part) for part in rest)
            out.add((tuple(range(first)),) + shifted)
    return {c for c in out}


class TestCells:
    def test_coarse_and_dual_types(self):
        tau = cell({1}, {1}, {2}, {3})
        assert coarse_type_mixed(tau, 3) == (2, 1, 1)
        assert dual_coarse_type(tau) == (1, 1, 1, 1)
        assert tau.dim == 0

    def test_simplex(self):
        tau = cell({1, 2, 3})
        assert coarse_type_mixed(tau, 3) == (1, 1, 1)
        assert dual_coarse_type(tau) == (3,)
        assert tau.dim == tau.fine_dim == 2

    def test_embedding(self):
        assert embed_mixed_cell(cell({1}, {1}, {2}, {3}), 3) == [(2, 1, 1)]
        assert embed_mixed_cell(cell({1, 2}), 2) == [(0, 1), (1, 0)]

    def test_repr(self):
        assert repr(cell({1, 2}, {3})) == "{1,2} + {3}"

    def test_empty_part(self):
        with pytest.raises(ValueError):
            MixedCell((frozenset(),))


class TestStaircase:
    def test_two_by_two(self):
        assert staircase_cells(2, 2) == sorted([cell({1}, {1, 2}), cell({1, 2}, {2})])

    def test_single_row(self):
        assert staircase_cells(1, 4) == [cell({1, 2, 3, 4})]

    @pytest.mark.parametrize("n,d", [(2, 3), (3, 3), (4, 3), (3, 4), (2, 5)])
    def test_matches_recursive_oracle(self, n, d):
        got = {tuple(tuple(sorted(p)) for p in c.parts) for c in staircase_cells(n, d)}
        assert got == staircase_oracle(n, d)
        assert len(got) == comb(n + d - 2, n - 1)

    @pytest.mark.parametrize("n,d", [(2, 2), (1, 3), (4, 3), (3, 4)])
    def test_cyclic_calibration(self, n, d):
        arr, sign = cyclic_arrangement(n, d, return_sign=True)
        assert sign in (1, -1)
        ms = from_tropical_complex(enumerate_cells(arr))
        assert sorted(ms.cells[i] for i in ms.maximal()) == staircase_cells(n, d)

    def test_four_by_three(self):
        ms = staircase_subdivision(4, 3)
        assert ms.fine
        assert len(ms.vertices()) == 15
        assert ms.f_vector() == tuple(reversed(generic_fvector(4, 3)))


class TestTransport:
    def test_running_example(self, running_tc):
        ms = from_tropical_complex(running_tc)
        assert ms.fine
        pts = sorted(embed_mixed_cell(ms.cells[i], 3)[0] for i in ms.vertices())
        assert pts == lattice_points(4, 3)
        assert len(pts) == 15

    def test_inclusions_reverse(self, running_tc):
        ms = from_tropical_complex(running_tc)
        for f, c in ms.covers:
            assert ms.cells[f].dim + 1 == ms.cells[c].dim

    def test_single_hyperplane(self):
        ms = from_tropical_complex(enumerate_cells(Arrangement.from_points([[0, 0, 0]])))
        assert ms.fine
        assert [ms.cells[i] for i in ms.maximal()] == [cell({1, 2, 3})]

    def test_nongeneric_is_coarse(self, nongeneric_tc):
        assert not from_tropical_complex(nongeneric_tc).fine

    def test_labels_are_coarse_types(self, running_tc):
        ms = from_tropical_complex(running_tc)
        assert ms.labels() == [c.coarse for c in running_tc.cells]


class TestHypersimplex:
    def test_single_zero_three(self):
        tc = enumerate_cells(hypersimplex_vertices(1, 3))
        assert is_fine(tc)
        assert coarse_type_ideal(tc) == maximal_ideal_power(3, 3)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_single_zero_orbits(self, n):
        # every maximal cell meets n hyperplanes, so generators have degree n;
        # the orbit of (j, 1, ..., 1, 0, ..., 0) occurs for each 1 <= j <= n
        I = coarse_type_ideal(enumerate_cells(hypersimplex_vertices(1, n)))
        assert set(I.degrees()) == {n}
        want = {(j,) + (1,) * (n - j) + (0,) * (j - 1) for j in range(1, n + 1)}
        assert {tuple(sorted(g, reverse=True)) for g in I.gens} == want

    def test_two_four_orbits(self):
        assert sorted(hypersimplex_orbit_types(2, 4)) == sorted([(6, 0, 0, 0), (4, 2, 0, 0), (3, 2, 1, 0)])

    @pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (3, 5), (3, 4)])
    def test_maximal_cells_unbounded(self, k, n):
        tc = enumerate_cells(hypersimplex_vertices(k, n))
        assert all(not tc.cells[i].bounded for i in tc.cells_of_dim(n - 1))

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            hypersimplex_vertices(0, 3)
        with pytest.raises(ValueError):
            hypersimplex_orbit_types(1, 4)


def test_lattice_points():
    assert lattice_points(1, 3) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert len(lattice_points(4, 3)) == comb(6, 2)
