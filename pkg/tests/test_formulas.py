import pytest

from knotstates.algebra import ONE, X, poly
from knotstates.diagram import self_closure, state_sum
from knotstates.families import CATALOG, FamilySpec, build, generator
from knotstates.formulas import (
    GENERATOR_COMPONENTS,
    Components,
    NegativeComponent,
    closure_of_csum,
    closure_of_generated,
    coefficient,
    components_solve,
    csum_poly,
    family_gf,
    family_poly_closed,
    family_poly_recurrence,
    generated_poly,
    generator_components,
)

x = X


@pytest.mark.parametrize("name", list(CATALOG))
def test_closed_form_matches_recurrence(name):
    for n in range(12):
        spec = FamilySpec(name, n)
        assert family_poly_closed(spec) == family_poly_recurrence(spec)


@pytest.mark.parametrize("name", list(CATALOG))
def test_closed_form_matches_brute_force_small(name):
    for n in range(4):
        spec = FamilySpec(name, n)
        assert state_sum(build(spec)) == family_poly_closed(spec)


def test_examples():
    assert family_poly_closed(FamilySpec("ringbolt", 1)) == poly(0, 2, 4, 2)
    assert family_poly_closed(FamilySpec("twist-knot", 1)) == x**3 + 4 * x**2 + 3 * x
    assert coefficient(FamilySpec("chain-link", 5), 4) == 230
    assert coefficient(FamilySpec("alt-c", 5), 8) == 6600


@pytest.mark.parametrize("name", sorted(GENERATOR_COMPONENTS))
def test_components_consistent_with_brute_force(name):
    c = generator_components(name)
    if name == "unknot":
        from knotstates.diagram import UNKNOT as g
    else:
        g = generator(name)
    k, kbar = state_sum(g), state_sum(self_closure(g))
    assert components_solve(k, kbar) == c
    assert c.open_poly() == k and c.closed_poly() == kbar


def test_components_negative():
    with pytest.raises(NegativeComponent):
        components_solve(x**2 - x, x - x**2)


def test_generated_and_csum():
    k = x**2 + x
    assert generated_poly(k, 3) == x * (x + 1) ** 3
    assert generated_poly(k, 0) == x
    assert csum_poly(k, x) == k


def test_closure_laws():
    c = GENERATOR_COMPONENTS["link"]
    for n in range(6):
        assert closure_of_generated(c, n) == family_poly_closed(FamilySpec("chain-link", n))
    # closing L # T from the link's components and the loop's closure
    t, tbar = x**2 + x, x**2 + x
    assert closure_of_csum(c, t, tbar) == x**3 + 4 * x**2 + 3 * x
    assert closure_of_generated(Components(ONE, poly()), 4) == x**2


@pytest.mark.parametrize("name", list(CATALOG))
def test_generating_functions(name):
    gf = family_gf(name, 8)
    assert [gf[n] for n in range(9)] == [family_poly_closed(FamilySpec(name, n)) for n in range(9)]
