from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from artifact import automaton as au
from artifact.burau import BraidWord
from artifact.fiber import (boundary_components, fiber_report, genus, linking_data, puncture_interior,
                            singular_orbit_slopes)
from oracles import fiber_closed_forms

LOOP = au.b3_loop((-1, 2))


def test_linking_data():
    assert linking_data(BraidWord.parse("-1 2", 3)).A.tolist() == [[0, 3], [3, 0]]
    assert linking_data(BraidWord.parse("", 1)).A.tolist() == [[0, 1], [1, 0]]
    assert linking_data(BraidWord.parse("-1 2 3", 4)).A.tolist() == [[0, 4], [4, 0]]
    assert linking_data(BraidWord.parse("2 -1", 3)).A.tolist() == [[0, 3], [3, 0]]


def test_boundary_components():
    link = linking_data(BraidWord.parse("-1 2", 3))
    assert [c for c, _ in boundary_components(link, (0, 1))] == [3, 1]
    assert [c for c, _ in boundary_components(link, (1, 2))] == [1, 1]
    assert [c for c, _ in boundary_components(link, (3, 3))] == [3, 3]
    with pytest.raises(ValueError):
        boundary_components(link, (0, 0))


def test_singular_slopes():
    assert singular_orbit_slopes(LOOP) == [(0, 1), (1, 0)]
    for k in (1, 2, 3):
        slopes = singular_orbit_slopes(au.b3_loop((2,) * (2 * k)))
        assert slopes[1:3] == [(k, 1), (k, 1)]


def test_prongs():
    r = fiber_report(LOOP, (0, 1))
    assert r.prongs == [(3, 1), (1, 1)]
    r = fiber_report(LOOP, (1, 2))
    assert r.prongs == [(1, 6), (1, 2)]
    assert sorted(fiber_report(LOOP, (-1, 2)).prongs) == sorted(r.prongs)


def test_genus():
    assert fiber_report(LOOP, (0, 1)).genus == 0
    assert fiber_report(LOOP, (1, 2)).genus == 2
    assert genus((0, 1), 2, 4) == 0
    with pytest.raises(ValueError):
        genus((0, 1), 3, 4)


def test_interior_puncturing():
    assert puncture_interior(LOOP) == []
    orbits = puncture_interior(au.b4_loop())
    assert len(orbits) == 1 and orbits[0].sides == 3 and orbits[0].period == 1
    r = fiber_report(au.b4_loop(), (0, 1))
    assert r.interior == [(1, 3)] and r.genus == 0 and r.euler_ok


@given(st.integers(-6, 6), st.integers(1, 8))
@settings(max_examples=100, deadline=None)
def test_consistency_on_cone(s, y):
    if y <= abs(s):
        return
    r = fiber_report(LOOP, (s, y))
    assert 2 * r.genus - 2 + r.total_boundary == r.norm
    assert r.euler_ok
    assert all(p > 0 for _, p in r.prongs)
    assert all(gcd(p, q) == 1 for _, (p, q) in r.boundary)


@given(st.integers(-6, 6), st.integers(1, 8))
@settings(max_examples=100, deadline=None)
def test_closed_forms_on_primitive_classes(s, y):
    if y <= abs(s) or gcd(s, y) != 1:
        return
    b, g, _ = fiber_closed_forms(s, y)
    r = fiber_report(LOOP, (s, y))
    assert (r.total_boundary, r.genus) == (b, g)


def test_non_primitive_class_splits_into_copies():
    r = fiber_report(LOOP, (0, 3))
    assert r.components == 3 and r.component_genus == 0
    assert r.total_boundary == 3 * fiber_report(LOOP, (0, 1)).total_boundary


def test_slope_override():
    r = fiber_report(LOOP, (1, 2), slope_override={"axis": (1, 0)})
    assert r.prongs[1] == (1, 2)


def test_linking_under_cyclic_rotation():
    a = linking_data(BraidWord.parse("-1 2", 3)).A
    b = linking_data(BraidWord.parse("2 -1", 3)).A
    assert (a == b).all()
