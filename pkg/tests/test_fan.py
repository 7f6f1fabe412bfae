import math
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import COMPLETE_FANS, load_fan
from momentangle.errors import DimensionMismatch, MalformedFan
from momentangle.fan import (Fan, SimplicialComplex, build_complex_from_fan, f_h_vectors,
                             minimal_non_faces, validate_fan)

HOPF1 = Fan.from_data(1, [[0], [1], [-1]], [[1], [2]])
# 4-cycle {1,3},{3,2},{2,4},{4,1}; generator order e1, -e1, e2, -e2 makes every cone independent
SQUARE = Fan.from_data(2, [[1, 0], [-1, 0], [0, 1], [0, -1]], [[0, 2], [2, 1], [1, 3], [3, 0]])


def one_based(K):
    return sorted(K.to_one_based())


def test_hopf_complex():
    K = build_complex_from_fan(HOPF1)
    assert K.m == 3 and K.ghosts == {0}
    assert one_based(K) == [[2], [3]]


def test_square_complex_is_four_cycle():
    assert one_based(SQUARE.complex) == [[1, 3], [1, 4], [2, 3], [2, 4]]


def test_fan_without_cones():
    K = Fan.from_data(2, [[1, 0], [0, 1]], []).complex
    assert K.maximal == (frozenset(),) and K.ghosts == {0, 1} and K.faces == (frozenset(),)


def test_dependent_cone_rejected():
    with pytest.raises(MalformedFan):
        build_complex_from_fan(Fan.from_data(2, [[1, 0], [2, 0]], [[0, 1]]))


def test_validate_hopf():
    r = validate_fan(HOPF1)
    assert r.is_simplicial and r.is_complete and r.is_regular


def test_validate_incomplete_hopf():
    r = validate_fan(HOPF1.with_cones([[1]]))
    assert r.is_simplicial and not r.is_complete


def test_validate_singular():
    r = validate_fan(load_fan("singular_fan"))
    assert r.is_simplicial and r.is_complete and not r.is_regular
    assert any("determinant -4" in d or "determinant 4" in d for d in r.diagnostics)


def test_validate_reports_bad_cone_without_raising():
    r = validate_fan(Fan.from_data(2, [[1, 0], [2, 0]], [[0, 1]]))
    assert not r.is_simplicial and not r.is_regular
    r = Fan.from_data(1, [[1]], [[0, 5]])
    assert not validate_fan(r).is_simplicial


def test_overlapping_cones_not_complete():
    # three rays with cones covering the upper half plane twice
    fan = Fan.from_data(2, [[1, 0], [0, 1], [-1, 0], [1, 1]], [[0, 1], [1, 2], [0, 3], [2, 0]])
    assert not validate_fan(fan).is_complete


def test_minimal_non_faces_examples():
    assert minimal_non_faces(HOPF1.complex) == [frozenset({0}), frozenset({1, 2})]
    assert minimal_non_faces(SQUARE.complex) == [frozenset({0, 1}), frozenset({2, 3})]
    full = SimplicialComplex.from_simplices(3, [[0, 1, 2]])
    assert minimal_non_faces(full) == []


def test_f_h_vectors_examples():
    boundary = SimplicialComplex.from_simplices(3, [[0, 1], [1, 2], [0, 2]])
    assert f_h_vectors(boundary, 2) == ([3, 3], [1, 1, 1])
    assert f_h_vectors(SQUARE.complex, 2) == ([4, 4], [1, 2, 1])
    assert f_h_vectors(HOPF1.complex, 1) == ([2], [1, 1])
    with pytest.raises(DimensionMismatch):
        f_h_vectors(SimplicialComplex.from_simplices(3, [[0, 1, 2]]), 2)


@pytest.mark.parametrize("name", COMPLETE_FANS)
def test_bundled_fans_complete_and_dehn_sommerville(name):
    fan = load_fan(name)
    r = validate_fan(fan)
    assert r.is_simplicial and r.is_complete
    assert not any("internal error" in d for d in r.diagnostics)
    f, h = f_h_vectors(fan.complex, fan.n)
    assert h == h[::-1]
    assert sum(h) == (f[-1] if fan.n else 1)
    # each wall lies in exactly two maximal cones
    walls = {}
    for s in fan.complex.maximal:
        for j in s:
            walls[s - {j}] = walls.get(s - {j}, 0) + 1
    assert all(c == 2 for c in walls.values()) or fan.n == 0
    for face in fan.complex.faces:
        rows = fan.generator_rows(face)
        from momentangle import linalg
        assert not rows or linalg.rank(rows) == len(rows)


# --- random complete planar fans -------------------------------------------

@st.composite
def planar_fans(draw):
    """Complete simplicial fans in the plane from primitive rays with gaps below pi."""
    candidates = [(a, b) for a in range(-4, 5) for b in range(-4, 5) if math.gcd(a, b) == 1]
    rays = draw(st.lists(st.sampled_from(candidates), min_size=3, max_size=8, unique_by=lambda v: math.atan2(v[1], v[0])))
    rays.sort(key=lambda v: math.atan2(v[1], v[0]))
    angles = [math.atan2(v[1], v[0]) for v in rays]
    gaps = [(angles[(i + 1) % len(rays)] - angles[i]) % (2 * math.pi) for i in range(len(rays))]
    from hypothesis import assume
    assume(all(1e-9 < g < math.pi - 1e-9 for g in gaps))
    cones = [[i, (i + 1) % len(rays)] for i in range(len(rays))]
    return Fan.from_data(2, [list(r) for r in rays], cones)


@given(planar_fans())
def test_random_planar_fans_complete(fan):
    r = validate_fan(fan)
    assert r.is_complete
    expected_regular = all(abs(fan.generators[i][0] * fan.generators[j][1]
                               - fan.generators[i][1] * fan.generators[j][0]) == 1
                           for i, j in (sorted(c) for c in fan.cones))
    assert r.is_regular == expected_regular


@given(planar_fans(), st.data())
def test_dropping_a_cone_breaks_completeness(fan, data):
    k = data.draw(st.integers(0, len(fan.cones) - 1))
    cones = [c for i, c in enumerate(fan.cones) if i != k]
    assert not validate_fan(fan.with_cones(cones)).is_complete


@st.composite
def complexes(draw):
    m = draw(st.integers(1, 7))
    simplices = draw(st.lists(st.sets(st.integers(0, m - 1), max_size=4), max_size=6))
    return SimplicialComplex.from_simplices(m, simplices)


@given(complexes())
def test_minimal_non_faces_brute_force(K):
    mnf = minimal_non_faces(K)
    for size in range(K.m + 1):
        for s in combinations(range(K.m), size):
            s = frozenset(s)
            assert K.is_face(s) == (not any(I <= s for I in mnf))
    for I in mnf:
        assert not K.is_face(I)
        assert all(K.is_face(I - {v}) for v in I)
    for g in K.ghosts:
        assert frozenset({g}) in mnf


@given(complexes())
def test_maximal_simplices_are_an_antichain(K):
    for a in K.maximal:
        for b in K.maximal:
            assert a == b or not a <= b
        assert not a & K.ghosts
