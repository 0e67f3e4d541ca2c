"""Hypothesis strategies shared by the property tests."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from tropres.pipeline import NONGENERIC_EXAMPLE, RUNNING_EXAMPLE, generate_random_generic
from tropres.tropical import Arrangement

# Small integer coordinates hit sector boundaries often, which is where bugs hide.
coord = st.integers(min_value=-3, max_value=3)


@st.composite
def arrangements(draw, max_n=3, max_d=3, min_d=2):
    d = draw(st.integers(min_d, max_d))
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.lists(coord, min_size=d, max_size=d), min_size=n, max_size=n))
    return Arrangement.from_points(rows)


@st.composite
def points(draw, d):
    return [draw(st.fractions(min_value=-4, max_value=4, max_denominator=2)) for _ in range(d)]


def rng_points(rng: random.Random, d: int, span: int = 4):
    return [Fraction(rng.randint(-2 * span, 2 * span), 2) for _ in range(d)]


def small_arrangements():
    """Mixed bag of generic, degenerate and tiny arrangements used across modules."""
    out = [
        RUNNING_EXAMPLE,
        NONGENERIC_EXAMPLE,
        [[0, 0]],
        [[0, 0], [0, 1]],
        [[0, 0, 0]],
        [[0, 2, 1], [0, 0, 0]],
        [[0, 0, 0], [0, 0, 0]],
        [[0, 1, 2, 3], [0, 3, 1, 2]],
    ]
    for n, d, seed in [(3, 3, 1), (2, 4, 2), (3, 2, 3)]:
        out.append([list(r) for r in generate_random_generic(n, d, seed).points])
    return out
