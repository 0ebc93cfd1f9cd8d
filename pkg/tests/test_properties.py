"""Randomized laws of the state sum on shadows built by random surgery."""
from hypothesis import given
from hypothesis import strategies as st

from _gen import (
    check_csum_laws,
    check_csum_shift,
    check_degree_bounds,
    check_flip_locality,
    check_union_product,
    check_value_at_one,
    check_zero_constant,
    random_arc,
    random_shadow,
)
from knotstates.diagram import dumps, graph_components, is_spherical, loads, state_sum


@st.composite
def picks(draw):
    return lambda lo, hi: draw(st.integers(lo, hi))


@st.composite
def shadows(draw, max_crossings=9):
    return random_shadow(draw(picks()), max_crossings)


@given(shadows(), shadows(5))
def test_disjoint_union_multiplies(a, b):
    check_union_product(a, b)


@given(shadows(), shadows(5), picks())
def test_connected_sum_divides_by_x(a, b, pick):
    check_csum_shift(a, random_arc(a, pick), b, random_arc(b, pick))


@given(shadows())
def test_value_at_one_counts_states(k):
    check_value_at_one(k)


@given(shadows())
def test_no_constant_term(k):
    check_zero_constant(k)


@given(shadows())
def test_circle_count_bounds(k):
    check_degree_bounds(k, graph_components(k))


@given(shadows(), picks())
def test_flipping_one_crossing_changes_one_circle(k, pick):
    if k.m:
        bits = [pick(0, 1) for _ in range(k.m)]
        check_flip_locality(k, bits, pick(0, k.m - 1))


@given(shadows(4), shadows(4), shadows(4))
def test_connected_sum_commutes_and_associates(a, b, c):
    check_csum_laws(a, b, c)


@given(shadows())
def test_surgery_stays_planar_and_serializes(k):
    assert is_spherical(k)
    assert loads(dumps(k)) == k


@given(shadows(12))
def test_compiled_kernel_matches_numpy(k):
    assert state_sum(k) == state_sum(k, compiled=False)
