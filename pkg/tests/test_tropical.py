from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropres.tropical import (
    Arrangement,
    TropicalPoint,
    coarse_cotype,
    coarse_type,
    column_sums,
    cotype,
    distance,
    fine_type,
    is_generic_point,
    normalize,
    sector_contains,
    trop_poly_eval,
    trop_segment_point,
    type_from_rows,
    type_rows,
)

from strategies import arrangements, points


def rows(*sets, d=3):
    return type_from_rows([[k - 1 for k in s] for s in sets], d)


class TestNormalize:
    def test_subtracts_first_coordinate(self):
        assert normalize([1, 6, 1]).coords == (0, 5, 0)

    def test_already_normalized(self):
        assert normalize([0, 3, 6]).coords == (0, 3, 6)

    def test_all_ones_class(self):
        assert normalize([2, 2]).coords == (0, 0)

    def test_rationals_are_exact(self):
        p = normalize(["1/3", "2/3"])
        assert p.coords == (0, Fraction(1, 3))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            normalize([])

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            normalize([0.0, float("inf")])

    def test_point_requires_representative(self):
        with pytest.raises(ValueError):
            TropicalPoint((Fraction(1), Fraction(0)))


class TestSectors:
    def test_running_example_sector(self):
        assert sector_contains([0, 3, 6], 0, [0, 1, 0])

    def test_apex_in_every_sector(self):
        assert all(sector_contains([0, 3, 6], k, [0, 3, 6]) for k in range(3))

    def test_not_in_sector(self):
        assert not sector_contains([0, 0, 1], 2, [0, 1, 0])

    def test_bad_index(self):
        with pytest.raises(IndexError):
            sector_contains([0, 0], 2, [0, 0])

    def test_unknown_convention(self):
        with pytest.raises(ValueError):
            sector_contains([0, 0], 0, [0, 0], convention="plus")


class TestTypes:
    def test_running_example_fine_type(self, running):
        assert fine_type(running, [0, 1, 0]) == rows({1}, {1}, {2}, {3})

    def test_running_example_coarse_type(self, running):
        assert coarse_type(running, [0, 1, 0]) == (2, 1, 1)

    def test_single_apex(self):
        arr = Arrangement.from_points([[0, 2, 5]])
        assert fine_type(arr, [0, 2, 5]) == ((1, 1, 1),)
        assert coarse_type(arr, [0, 2, 5]) == (1, 1, 1)

    def test_nongeneric_origin(self, nongeneric):
        T = fine_type(nongeneric, [0, 0, 0])
        assert T == rows({1}, {1, 2}, {1, 3})
        assert column_sums(T) == (3, 1, 1)

    def test_cotype(self):
        T = rows({1}, {1, 2}, {1, 3})
        assert cotype(T) == rows({2, 3}, {3}, {2})
        assert coarse_cotype(T) == (0, 2, 2)

    def test_cotype_of_all_ones(self):
        assert cotype(((1, 1), (1, 1))) == ((0, 0), (0, 0))

    def test_type_rows_round_trip(self):
        T = rows({1}, {2, 3})
        assert type_from_rows(type_rows(T), 3) == T

    def test_dimension_mismatch(self, running):
        with pytest.raises(ValueError):
            fine_type(running, [0, 1])

    def test_generic_point(self, running):
        assert is_generic_point(running, [0, 1, 0])
        assert not is_generic_point(running, [0, 3, 6])


class TestSegments:
    def test_dominated_term(self):
        assert trop_segment_point([0, 0], [0, 3], 0, -10).coords == (0, 0)

    def test_same_point(self):
        assert trop_segment_point([0, 2], [0, 2], 0, 0).coords == (0, 2)

    def test_max_variant(self):
        assert trop_segment_point([0, 0], [0, 3], 0, 0).coords == (0, 3)

    def test_min_variant(self):
        assert trop_segment_point([0, 0], [0, 3], 0, 0, "min").coords == (0, 0)

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            trop_segment_point([0, 0], [0, 3], 0, 0, "avg")


class TestDistance:
    def test_zero(self):
        assert distance([0, 1, 2], [5, 6, 7]) == 0

    def test_two_coordinates(self):
        assert distance([0, 0], [0, 3]) == 3

    @given(st.integers(2, 4).flatmap(lambda d: st.tuples(points(d), points(d))))
    def test_symmetric_and_definite(self, pq):
        p, q = pq
        assert distance(p, q) == distance(q, p)
        assert (distance(p, q) == 0) == (normalize(p) == normalize(q))

    @given(st.integers(2, 4).flatmap(lambda d: st.tuples(points(d), points(d))))
    def test_absorption(self, pq):
        # shifting p below q makes q absorb it
        p, q = normalize(pq[0]), normalize(pq[1])
        lam = min(b - a for a, b in zip(p, q))
        assert trop_segment_point(p, q, lam, 0).coords == q.coords


class TestPolynomial:
    def test_running_example(self, running):
        value, arg = trop_poly_eval(running, [0, 1, 0])
        assert value == 1
        assert arg == {(2, 1, 1)}

    def test_single_apex_full_tie(self):
        arr = Arrangement.from_points([[0, 2, 5]])
        value, arg = trop_poly_eval(arr, [0, 2, 5])
        assert value == 0
        assert arg == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}

    @given(arrangements(max_n=4, max_d=4), st.data())
    def test_generic_argmax_is_coarse_type(self, arr, data):
        p = data.draw(points(arr.d))
        _, arg = trop_poly_eval(arr, p)
        if is_generic_point(arr, p):
            assert arg == {coarse_type(arr, p)}
        assert all(sum(c) == arr.n for c in arg)
        assert tuple(max(col) for col in zip(*arg)) == coarse_type(arr, p)


@given(arrangements(max_n=4, max_d=4), st.data())
def test_rows_nonempty_and_coarse_sum(arr, data):
    p = data.draw(points(arr.d))
    T = fine_type(arr, p)
    assert all(any(r) for r in T)
    ct = column_sums(T)
    assert sum(ct) >= arr.n
    assert (sum(ct) == arr.n) == is_generic_point(arr, p)


@given(st.integers(2, 4).flatmap(lambda d: st.tuples(points(d), points(d))), st.data())
def test_reciprocity(pq, data):
    p, q = pq
    k = data.draw(st.integers(0, len(p) - 1))
    assert sector_contains(q, k, p, "max") == sector_contains(p, k, q, "min")
