import pytest

from knotstates.algebra import X, poly
from knotstates.diagram import (
    EMPTY,
    GUARD_ENV,
    UNKNOT,
    CutPoint,
    InvalidArc,
    InvalidCut,
    InvalidShadow,
    LengthMismatch,
    Shadow,
    TooManyCrossings,
    circle_counts,
    connected_sum,
    crossing_guard,
    disjoint_union,
    dumps,
    faces,
    graph_components,
    is_spherical,
    loads,
    loop_point,
    resolve_state,
    self_closure,
    state_circles,
    state_sum,
    straight_components,
    validate,
)
from knotstates.families import HITCH, HOPF, OVERHAND, TWIST, TWIST_LINK, FamilySpec, build


def test_unknot_and_empty():
    assert state_sum(UNKNOT) == X
    assert state_sum(EMPTY) == poly(1)
    assert state_sum(Shadow((), 3)) == X**3


def test_single_twist_states():
    # type 0 keeps the two loops apart, type 1 joins them
    assert resolve_state(TWIST, [0]) == 2
    assert resolve_state(TWIST, [1]) == 1
    assert state_circles(TWIST) == {(0,): 2, (1,): 1}
    assert state_sum(TWIST) == X**2 + X


def test_hopf_link_shadow():
    assert state_sum(HOPF) == 2 * X**2 + 2 * X
    assert straight_components(HOPF) == 2
    assert straight_components(TWIST) == 1


@pytest.mark.parametrize("k", [TWIST, HOPF, TWIST_LINK, HITCH, OVERHAND])
def test_generators_are_spherical_and_connected(k):
    assert is_spherical(k)
    assert graph_components(k) == 1
    assert sorted(d for f in faces(k) for d in f) == list(range(k.ports))
    assert validate(k).valid


def test_trefoil_generators_differ_only_in_labels():
    assert HITCH.peer != OVERHAND.peer
    assert state_sum(HITCH) == state_sum(OVERHAND) == X**3 + 4 * X**2 + 3 * X


def test_invalid_port_tables():
    with pytest.raises(InvalidShadow):
        Shadow((1, 0, 3))
    bad = Shadow((1, 2, 0, 3))
    report = validate(bad)
    assert not report.valid and report.problems
    with pytest.raises(InvalidShadow):
        state_sum(bad)
    assert not validate(EMPTY).valid


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        resolve_state(TWIST, [0, 1])


def test_guard(monkeypatch):
    monkeypatch.delenv(GUARD_ENV, raising=False)
    assert crossing_guard() == 30
    monkeypatch.setenv(GUARD_ENV, "5")
    assert crossing_guard() == 5
    assert crossing_guard(7) == 7
    with pytest.raises(TooManyCrossings):
        crossing_guard(35)
    k = build(FamilySpec("twist-loop", 6))
    with pytest.raises(TooManyCrossings):
        state_sum(k)
    assert state_sum(k, guard=6) == X * (X + 1) ** 6


def test_compiled_and_numpy_paths_agree():
    for spec in [FamilySpec("hitch", 3), FamilySpec("twist-knot", 5), FamilySpec("alt-e", 3)]:
        k = build(spec)
        assert state_sum(k, compiled=True) == state_sum(k, compiled=False)
    k = build(FamilySpec("chain-link", 4))
    counts = circle_counts(k, 0, 1 << k.m)
    assert [resolve_state(k, [(s >> i) & 1 for i in range(k.m)]) for s in range(64)] == list(
        counts[:64]
    )


def test_workers_do_not_change_the_result():
    k = build(FamilySpec("twist-loop", 20))
    base = state_sum(k)
    assert state_sum(k, workers=4) == base
    small = build(FamilySpec("twist-link", 4))
    assert state_sum(small, workers=3, compiled=False) == state_sum(small)


def test_disjoint_union_relabels():
    u = disjoint_union(TWIST, HOPF)
    assert u.m == 3
    assert u.cuts[2] == CutPoint(HOPF.cuts[0].port + 4)
    assert state_sum(u) == state_sum(TWIST) * state_sum(HOPF)
    assert graph_components(u) == 2


def test_connected_sum_with_unknot_is_identity():
    k = connected_sum(TWIST, TWIST.cuts[1], UNKNOT, UNKNOT.cuts[0])
    assert k.peer == TWIST.peer
    assert k.cuts == (TWIST.cuts[0], TWIST.cuts[1])
    k = connected_sum(UNKNOT, UNKNOT.cuts[1], HOPF, HOPF.cuts[0])
    assert k.peer == HOPF.peer and k.free_loops == 0
    assert k.cuts == (HOPF.cuts[0], HOPF.cuts[1])


def test_connected_sum_errors():
    with pytest.raises(InvalidArc):
        connected_sum(TWIST, CutPoint(9), HOPF, CutPoint(0))
    with pytest.raises(InvalidArc):
        connected_sum(TWIST, loop_point(0), HOPF, CutPoint(0))
    with pytest.raises(InvalidArc):
        connected_sum(EMPTY, CutPoint(0), HOPF, CutPoint(0))


def test_self_closure_cases():
    assert state_sum(self_closure(UNKNOT)) == X**2
    assert state_sum(self_closure(TWIST)) == X**2 + X
    # two points on one edge pinch off a loop
    same_edge = self_closure(HOPF, CutPoint(0, 0), CutPoint(0, 1))
    assert state_sum(same_edge) == X * state_sum(HOPF)
    with pytest.raises(InvalidCut):
        self_closure(HOPF, CutPoint(0), CutPoint(0))
    with pytest.raises(InvalidCut):
        self_closure(HITCH.with_cuts(()))


def test_self_closure_rejects_darts_on_different_faces():
    idx = {d: i for i, f in enumerate(faces(HITCH)) for d in f}
    a = 0
    b = next(d for d in range(HITCH.ports) if idx[d] != idx[a] and d != HITCH.peer[a])
    with pytest.raises(InvalidCut):
        self_closure(HITCH, CutPoint(a), CutPoint(b))


def test_text_round_trip():
    for k in [TWIST, HITCH, UNKNOT, build(FamilySpec("alt-b", 2))]:
        assert loads(dumps(k)) == k
    assert dumps(TWIST).splitlines()[0] == "loops: 0"
    with pytest.raises(InvalidShadow):
        loads("0.1 0.0 0.3\n")


def test_trefoil_state_multiset():
    assert sorted(state_circles(HITCH).values()) == [1, 1, 1, 2, 2, 2, 2, 3]
    assert resolve_state(UNKNOT, []) == 1


def test_crossing_counts():
    from knotstates.families import crossing_count

    assert crossing_count(FamilySpec("twist-link", 4)) == 12
    assert crossing_count(FamilySpec("unknot")) == 0
    assert crossing_count(FamilySpec("twist-knot", 3)) == 5
    assert crossing_count(FamilySpec("alt-d", 2)) == 6
